/** @file obstructions.hpp
 *  @brief Tau-based obstructions to positivity properties of cable knots,
 *         the complex-curve fiber criterion, and the cabled concordance
 *         discrepancy.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cabletau/cabling.hpp"
#include "cabletau/knot.hpp"

namespace cabletau {

enum class Verdict { Obstructed, NotObstructed, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Obstructed: return "obstructed";
        case Verdict::NotObstructed: return "not obstructed";
        default: return "unknown";
    }
}

struct ObstructionReport {
    std::string property;  ///< membership being tested for the cable
    int p = 2;
    int n = 0;
    Verdict verdict = Verdict::Unknown;
    std::string reason;  ///< substituted inequality or missing hypothesis

    nlohmann::json to_json() const {
        return {{"property", property},
                {"p", p},
                {"n", n},
                {"verdict", to_string(verdict)},
                {"reason", reason}};
    }
};

namespace detail {

/// Classes whose members have nonnegative tau are ruled out when even the
/// band's upper endpoint is negative.  The boundary case (upper endpoint
/// zero) obstructs nothing.
inline ObstructionReport band_negativity_obstruction(const KnotRecord& k, int p, int n,
                                                     std::string property) {
    if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
    ObstructionReport r;
    r.property = std::move(property);
    r.p = p;
    r.n = n;
    if (!k.tau) {
        r.verdict = Verdict::Unknown;
        r.reason = "companion tau is unknown";
        return r;
    }
    const TauInterval ti = tau_cable_interval(k, p, n);
    const std::string upper = "p tau + pn(p-1)/2 + p - 1 = " + std::to_string(ti.upper);
    if (ti.upper < 0) {
        r.verdict = Verdict::Obstructed;
        r.reason = "band upper endpoint " + upper + " < 0 rules out tau >= 0";
    } else {
        r.verdict = Verdict::NotObstructed;
        r.reason = "band upper endpoint " + upper + " >= 0 leaves membership open";
    }
    return r;
}

/// Classes whose members satisfy tau = genus need the companion extremal and
/// a nonnegative cabling parameter.
inline ObstructionReport tau_genus_obstruction(const KnotRecord& k, int p, int n,
                                               std::string property) {
    ObstructionReport r;
    r.property = std::move(property);
    r.p = p;
    r.n = n;
    if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
    if (!k.tau) {
        r.verdict = Verdict::Unknown;
        r.reason = "companion tau is unknown";
        return r;
    }
    if (n < 0) {
        r.verdict = Verdict::Obstructed;
        r.reason = "negative-parameter cable (n = " + std::to_string(n) +
                   ") cannot attain tau = cable genus";
        return r;
    }
    if (*k.tau != k.genus) {
        r.verdict = Verdict::Obstructed;
        r.reason = "companion has tau = " + std::to_string(*k.tau) + " != genus = " +
                   std::to_string(k.genus) + ", so the cable misses its genus bound";
        return r;
    }
    r.verdict = Verdict::NotObstructed;
    r.reason = "companion has tau = genus = " + std::to_string(k.genus) +
               " and n >= 0, so the cable attains tau = cable genus";
    return r;
}

}  // namespace detail

/// Quasipositive knots have nonnegative tau.
inline ObstructionReport quasipositive_cable_obstruction(const KnotRecord& k, int p, int n) {
    return detail::band_negativity_obstruction(k, p, n, "quasipositive cable");
}

/// Knots cut out by complex curves have nonnegative tau.
inline ObstructionReport complex_curve_cable_obstruction(const KnotRecord& k, int p, int n) {
    return detail::band_negativity_obstruction(k, p, n, "complex-curve cable");
}

/// Whether the cable can satisfy tau = Seifert genus at all.
inline ObstructionReport cable_tau_genus_obstruction(const KnotRecord& k, int p, int n) {
    return detail::tau_genus_obstruction(k, p, n, "cable with tau equal to its genus");
}

/// L-space knots satisfy tau = genus, so the same criterion obstructs
/// positive L-space surgeries on the cable.
inline ObstructionReport cable_lspace_surgery_obstruction(const KnotRecord& k, int p, int n) {
    return detail::tau_genus_obstruction(k, p, n, "cable admitting a positive L-space surgery");
}

/// Cables stay in the positivity class exactly when the companion is in it.
inline ObstructionReport positive_cable_obstruction(const KnotRecord& k, int p, int n) {
    ObstructionReport r;
    r.property = "cable in the positivity class";
    r.p = p;
    r.n = n;
    if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
    if (!k.pos_member) {
        r.verdict = Verdict::Unknown;
        r.reason = "positivity-class membership of the companion is unknown";
    } else if (*k.pos_member) {
        r.verdict = Verdict::NotObstructed;
        r.reason = "companion is in the positivity class";
    } else {
        r.verdict = Verdict::Obstructed;
        r.reason = "companion is outside the positivity class";
    }
    return r;
}

/// The cable's fiber surface is isotopic to a piece of a complex curve
/// exactly when the companion's is and the cabling parameter is positive.
inline bool fiber_surface_complex_criterion(const KnotRecord& k, const CableParams& cp) {
    if (!k.fibered || !k.complex_fiber)
        throw std::domain_error(
            "fiber criterion needs the fibered and complex-curve fiber flags");
    return *k.fibered && *k.complex_fiber && cp.q > 0;
}

/// tau of the (p,1) cable across a slice pair: the right- and left-handed
/// trefoils sum to a slice knot, yet their cable taus sum to p - 1, not to
/// the unknot cable's 0.  Cabling then concordance is not cabling then
/// summing.
struct ConcordanceDemo {
    int p = 2;
    int tau_unknot_cable = 0;
    int tau_right_cable = 0;
    int tau_left_cable = 0;
    std::int64_t discrepancy = 0;  ///< right + left - unknot

    nlohmann::json to_json() const {
        return {{"p", p},
                {"tau_unknot_cable", tau_unknot_cable},
                {"tau_right_cable", tau_right_cable},
                {"tau_left_cable", tau_left_cable},
                {"discrepancy", discrepancy}};
    }
};

inline ConcordanceDemo concordance_demo(int p) {
    if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
    const auto& knots = builtin_knots();
    const KnotRecord* unknot = find_knot(knots, "unknot");
    const KnotRecord* right = find_knot(knots, "right-trefoil");
    const KnotRecord* left = find_knot(knots, "left-trefoil");
    if (!unknot || !right || !left)
        throw std::logic_error("builtin atlas is missing a demo knot");
    ConcordanceDemo d;
    d.p = p;
    d.tau_unknot_cable = *tau_cable_interval(*unknot, p, 0).exact;
    d.tau_right_cable = *tau_cable_interval(*right, p, 0).exact;
    d.tau_left_cable = *tau_cable_interval(*left, p, 0).exact;
    d.discrepancy = checked_sub(checked_add(d.tau_right_cable, d.tau_left_cable),
                                d.tau_unknot_cable);
    return d;
}

}  // namespace cabletau
