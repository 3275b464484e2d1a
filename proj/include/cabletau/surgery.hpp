/** @file surgery.hpp
 *  @brief Heegaard Floer ranks of positive rational surgeries on L-space
 *         knots, the L-space slope threshold, cable L-space certification,
 *         and the pq-surgery decomposition of a cable.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cabletau/arith.hpp"
#include "cabletau/cabling.hpp"
#include "cabletau/knot.hpp"

namespace cabletau {

/// Slopes at and above 2g - 1 give L-spaces; this is sharp for L-space knots.
inline Rational lspace_slope_threshold(const KnotRecord& k) {
    return Rational(checked_sub(checked_mul(2, k.genus), 1));
}

inline bool is_lspace_surgery_slope(const KnotRecord& k, const Rational& slope) {
    if (!k.lspace_knot)
        throw std::domain_error("surgery slope classification needs an L-space knot record");
    if (slope.num <= 0)
        throw std::domain_error("surgery slope classification covers positive slopes only");
    return slope >= lspace_slope_threshold(k);
}

/// Total Floer rank of q/p surgery on an L-space knot, positive slopes only:
/// q at and above the threshold, q + 2(p(2g-1) - q) below it.
inline std::int64_t lspace_knot_surgery_rank(const KnotRecord& k, const Rational& slope) {
    if (!k.lspace_knot)
        throw std::domain_error("surgery rank formula needs an L-space knot record");
    if (slope.num <= 0)
        throw std::domain_error("surgery rank formula covers positive slopes only");
    const std::int64_t q = slope.num, p = slope.den;
    const std::int64_t defect =
        checked_sub(checked_mul(p, checked_sub(checked_mul(2, k.genus), 1)), q);
    return defect > 0 ? checked_add(q, checked_mul(2, defect)) : q;
}

inline std::int64_t lspace_knot_surgery_rank(const KnotRecord& k, std::int64_t q,
                                             std::int64_t p) {
    return lspace_knot_surgery_rank(k, Rational(q, p));
}

/// Floer ranks multiply under connected sums.
inline std::int64_t connected_sum_rank(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) throw std::invalid_argument("ranks are nonnegative");
    return checked_mul(a, b);
}

struct SurgeryRankReport {
    std::string knot;
    Rational slope;
    int genus = 0;
    Rational threshold;
    std::int64_t rank = 0;
    bool lspace_surgery = false;

    nlohmann::json to_json() const {
        return {{"knot", knot},
                {"slope", slope.to_string()},
                {"genus", genus},
                {"threshold", threshold.to_string()},
                {"rank", rank},
                {"lspace_surgery", lspace_surgery}};
    }
};

inline SurgeryRankReport surgery_rank_report(const KnotRecord& k, const Rational& slope) {
    SurgeryRankReport r;
    r.knot = k.name;
    r.slope = slope;
    r.genus = k.genus;
    r.threshold = lspace_slope_threshold(k);
    r.rank = lspace_knot_surgery_rank(k, slope);
    r.lspace_surgery = r.rank == slope.num;
    return r;
}

/// Outcome of trying to certify a cable as an L-space knot.  A refusal is not
/// a disproof unless the companion certificate itself was trusted: an absent
/// companion flag only means the hypothesis is unavailable.
struct CableCertificate {
    bool certified = false;
    std::string reason;
    std::optional<KnotRecord> record;  ///< present exactly when certified
};

/// A cable of an L-space knot is an L-space knot exactly when q >= p(2g-1).
/// The certified record carries the full invariant set of the cable: genus
/// from the cable genus formula, tau = genus, the cable polynomial, and
/// fiberedness inherited from the companion.
inline CableCertificate cable_lspace_certificate(const KnotRecord& k, const CableParams& cp) {
    CableCertificate cert;
    if (cp.q <= 0) {
        cert.reason = "cable certification needs a positive cabling parameter";
        return cert;
    }
    if (!k.lspace_knot) {
        cert.reason = "companion record is not certified as an L-space knot";
        return cert;
    }
    const std::int64_t threshold = checked_mul(cp.p, checked_sub(checked_mul(2, k.genus), 1));
    if (cp.q < threshold) {
        cert.reason = "cabling parameter " + std::to_string(cp.q) +
                      " is below the L-space threshold p(2g-1) = " + std::to_string(threshold);
        return cert;
    }
    KnotRecord r;
    r.name = k.name + " (" + std::to_string(cp.p) + "," + std::to_string(cp.q) + ") cable";
    r.genus = cable_genus(k, cp);
    r.tau = r.genus;
    r.alexander = cable_alexander(k, cp);
    r.lspace_knot = true;
    r.pos_member = true;
    r.fibered = k.fibered;
    r.complex_fiber = k.complex_fiber;
    cert.certified = true;
    cert.reason = "q >= p(2g-1) with an L-space companion";
    cert.record = std::move(r);
    return cert;
}

/// pq surgery on the cable splits off p lens-space summands' worth of rank:
/// it must equal p times the rank of q/p surgery on the companion.
struct CableSurgeryDecomposition {
    int p = 2;
    int q = 1;
    std::int64_t surgery_coefficient = 0;  ///< pq
    std::int64_t rank_direct = 0;          ///< rank of pq surgery on the cable
    std::int64_t rank_decomposed = 0;      ///< p * rank of q/p surgery on the companion
    bool match = false;

    nlohmann::json to_json() const {
        return {{"p", p},
                {"q", q},
                {"surgery_coefficient", surgery_coefficient},
                {"rank_direct", rank_direct},
                {"rank_decomposed", rank_decomposed},
                {"match", match}};
    }
};

inline CableSurgeryDecomposition cable_surgery_decomposition(const KnotRecord& k,
                                                             const CableParams& cp) {
    if (cp.q < 1)
        throw std::domain_error("surgery decomposition needs a positive cabling parameter");
    const CableCertificate cert = cable_lspace_certificate(k, cp);
    if (!cert.certified)
        throw std::domain_error("surgery decomposition needs a certified cable: " + cert.reason);
    CableSurgeryDecomposition d;
    d.p = cp.p;
    d.q = cp.q;
    d.surgery_coefficient = checked_mul(cp.p, cp.q);
    d.rank_direct = lspace_knot_surgery_rank(*cert.record, Rational(d.surgery_coefficient));
    d.rank_decomposed =
        connected_sum_rank(cp.p, lspace_knot_surgery_rank(k, Rational(cp.q, cp.p)));
    d.match = d.rank_direct == d.rank_decomposed;
    return d;
}

}  // namespace cabletau
