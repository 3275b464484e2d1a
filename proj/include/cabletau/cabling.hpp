/** @file cabling.hpp
 *  @brief Invariants of cable knots K_{p,q}: polynomials, tau bands, stabilized
 *         homology readers, tau profiles, and the exterior grading table.
 *
 *  The (p, pn+1) parametrization drives the tau and stabilization results; the
 *  negative family K_{p,-pn+1} is the same formulas at parameter -n.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cabletau/arith.hpp"
#include "cabletau/filtration.hpp"
#include "cabletau/knot.hpp"
#include "cabletau/laurent.hpp"

namespace cabletau {

struct CableParams {
    int p;
    int q;

    CableParams(int p_, int q_) : p(p_), q(q_) {
        if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
        if (q == 0) throw std::invalid_argument("cable parameter q must be nonzero");
        const long long qa = q < 0 ? -static_cast<long long>(q) : q;
        if (std::gcd(static_cast<long long>(p), qa) != 1)
            throw std::invalid_argument("cable parameters must be coprime");
    }

    /// The (p, pn+1) family.
    static CableParams from_n(int p, int n) {
        if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
        const std::int64_t q = checked_add(checked_mul(p, n), 1);
        if (q < INT32_MIN || q > INT32_MAX) throw std::overflow_error("cable q out of range");
        return CableParams(p, static_cast<int>(q));
    }

    /// n with q = pn + 1, when the longitude parameter has that form.
    std::optional<int> n() const {
        if ((q - 1) % p != 0) return std::nullopt;
        return (q - 1) / p;
    }
};

/// Cable polynomial: companion polynomial composed with t -> t^p times the
/// torus factor.  Valid for either sign of q.
inline LaurentPoly cable_alexander(const LaurentPoly& companion, const CableParams& cp) {
    return torus_knot_alexander(cp.p, cp.q) * companion.substitute_power(cp.p);
}

inline LaurentPoly cable_alexander(const KnotRecord& k, const CableParams& cp) {
    return cable_alexander(k.alexander, cp);
}

/// Seifert genus of the cable, positive cabling parameter only.
inline int cable_genus(const KnotRecord& k, const CableParams& cp) {
    if (cp.q <= 0)
        throw std::domain_error("cable genus formula needs a positive cabling parameter q");
    const std::int64_t g = checked_add(
        checked_mul(cp.p, k.genus),
        checked_mul(cp.p - 1, cp.q - 1) / 2);
    return static_cast<int>(g);
}

enum class TauReason { TauEqualsGenus, TauEqualsMinusGenus, Undetermined };

inline const char* to_string(TauReason r) {
    switch (r) {
        case TauReason::TauEqualsGenus: return "tau-equals-genus";
        case TauReason::TauEqualsMinusGenus: return "tau-equals-minus-genus";
        default: return "undetermined";
    }
}

/// Two-candidate band for tau of the (p, pn+1) cable; exact value when an
/// extremal tau pins the endpoint.
struct TauInterval {
    int p = 2;
    int n = 0;
    int lower = 0;
    int upper = 0;  ///< lower + p - 1
    std::optional<int> exact;
    TauReason reason = TauReason::Undetermined;
};

/// tau(K_{p,pn+1}) lies in [p tau + pn(p-1)/2, p tau + pn(p-1)/2 + p - 1] for
/// every n.  tau = genus forces the lower endpoint at every n; tau = -genus
/// forces the upper.  The unknot satisfies both extremes, and its cables are
/// torus knots: n >= 0 lands on the lower endpoint, n < 0 on the upper.
inline TauInterval tau_cable_interval(const KnotRecord& k, int p, int n) {
    if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
    if (!k.tau) throw std::domain_error("tau of the companion is unknown");
    TauInterval ti;
    ti.p = p;
    ti.n = n;
    const std::int64_t shift = checked_mul(checked_mul(p, n), p - 1) / 2;
    const std::int64_t lo = checked_add(checked_mul(p, *k.tau), shift);
    if (lo < INT32_MIN || lo + p - 1 > INT32_MAX) throw std::overflow_error("tau band out of range");
    ti.lower = static_cast<int>(lo);
    ti.upper = ti.lower + p - 1;
    if (k.genus == 0) {
        // cable of the unknot is the (p, pn+1) torus knot
        ti.exact = torus_knot_record(p, static_cast<int>(checked_add(checked_mul(p, n), 1))).tau;
        ti.reason = n >= 0 ? TauReason::TauEqualsGenus : TauReason::TauEqualsMinusGenus;
    } else if (*k.tau == k.genus) {
        ti.exact = ti.lower;
        ti.reason = TauReason::TauEqualsGenus;
    } else if (*k.tau == -k.genus) {
        ti.exact = ti.upper;
        ti.reason = TauReason::TauEqualsMinusGenus;
    }
    return ti;
}

/// The (p, -pn+1) family, n > 0: the band {p tau - pn(p-1)/2, ... + p - 1}
/// with the same endpoint rules, i.e. the positive family at parameter -n.
inline TauInterval tau_cable_interval_negative(const KnotRecord& k, int p, int n) {
    if (n <= 0)
        throw std::invalid_argument("negative-family parameter n must be positive");
    return tau_cable_interval(k, p, -n);
}

/// Sublevel homology of a companion knot, one GradedRanks per filtration
/// level, clamped outside [-genus, genus]: empty below, stable above.
struct FilteredHomologyProfile {
    int genus = 0;
    std::map<int, GradedRanks> levels;  ///< stored for -genus-1 <= j <= genus

    const GradedRanks& level(int j) const {
        static const GradedRanks empty;
        if (j < -genus) return empty;
        const int jj = j > genus ? genus : j;
        auto it = levels.find(jj);
        if (it == levels.end())
            throw std::domain_error("window exceeds stored profile data at level " +
                                    std::to_string(jj));
        return it->second;
    }

    static FilteredHomologyProfile from_complex(const FilteredComplex& c, int genus) {
        if (genus < 0) throw std::invalid_argument("profile genus must be >= 0");
        FilteredHomologyProfile prof;
        prof.genus = genus;
        for (int j = -genus - 1; j <= genus; ++j)
            prof.levels[j] = homology_of_subcomplex(c, j);
        if (!prof.levels.at(-genus - 1).empty())
            throw std::domain_error("profile does not vanish below level -genus");
        const auto maxA = c.max_alexander();
        const GradedRanks full =
            maxA ? homology_of_subcomplex(c, *maxA) : GradedRanks{};
        if (prof.levels.at(genus) != full)
            throw std::domain_error("profile does not stabilize at level genus");
        prof.levels.erase(-genus - 1);
        return prof;
    }

    /// Profile of an L-space knot record through its staircase model.
    static FilteredHomologyProfile for_knot(const KnotRecord& k) {
        if (!k.lspace_knot)
            throw std::domain_error(
                "filtered homology profile needs an L-space knot record (staircase model)");
        return from_complex(staircase_complex(k.alexander), k.genus);
    }
};

/// Knot Floer table of the (p, pn+1) cable for large n, assembled from the
/// companion profile.  For 0 <= j <= window_max_j the table receives the
/// companion sublevel homology at level j - g twice: at Alexander grading
/// top - pj with Maslov shift -2(j-g), and at top - pj - 1 shifted one
/// further down.  Gradings >= min_asserted_alexander not present are asserted
/// zero; everything below the window is unasserted, never zero-filled.
struct StabilizedHfk {
    int p = 2;
    int n = 1;
    int window_max_j = 0;
    int top_alexander = 0;           ///< p g + pn(p-1)/2, the cable genus
    int min_asserted_alexander = 0;  ///< top - p window_max_j - 1
    HFKTable table;

    bool asserted(int alexander) const { return alexander >= min_asserted_alexander; }
};

inline StabilizedHfk cable_hfk_stabilized(const FilteredHomologyProfile& prof, int p, int n,
                                          int window_max_j) {
    if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
    if (n < 1) throw std::invalid_argument("stabilized table needs n >= 1");
    if (window_max_j < 0) throw std::invalid_argument("window must contain j = 0");
    StabilizedHfk out;
    out.p = p;
    out.n = n;
    out.window_max_j = window_max_j;
    const int g = prof.genus;
    out.top_alexander = static_cast<int>(
        checked_add(checked_mul(p, g), checked_mul(checked_mul(p, n), p - 1) / 2));
    out.min_asserted_alexander = out.top_alexander - p * window_max_j - 1;
    for (int j = 0; j <= window_max_j; ++j) {
        const GradedRanks& lv = prof.level(j - g);
        const int shift = 2 * (j - g);
        for (const auto& [mu, r] : lv) {
            out.table.ranks[{out.top_alexander - p * j, mu - shift}] = r;
            out.table.ranks[{out.top_alexander - p * j - 1, mu - shift - 1}] = r;
        }
    }
    return out;
}

/// Sublevel homology of the (p, pn+1) cable for large n: at cable filtration
/// level pj + pn(p-1)/2 - 1 it equals the companion sublevel homology at
/// j - 1; the intermediate levels pj + pn(p-1)/2 - i for i = 2..p-1 form a
/// plateau (each isomorphic to the level one below it).
struct StabilizedFiltration {
    int p = 2;
    int n = 1;
    int j = 0;
    int cable_level = 0;  ///< pj + pn(p-1)/2 - 1
    GradedRanks ranks;    ///< companion sublevel homology at j - 1
    std::vector<std::pair<int, int>> plateau_levels;  ///< (level, level-1) pairs asserted equal
};

inline StabilizedFiltration cable_filtered_homology_stabilized(
    const FilteredHomologyProfile& prof, int p, int n, int j,
    std::optional<int> window_min_j = std::nullopt) {
    if (p < 2) throw std::invalid_argument("cable parameter p must be >= 2");
    if (n < 1) throw std::invalid_argument("stabilized filtration needs n >= 1");
    const int wmin = window_min_j ? *window_min_j : 2 - n;
    if (j < wmin)
        throw std::domain_error("window violation: j = " + std::to_string(j) +
                                " below declared validity window " + std::to_string(wmin));
    StabilizedFiltration out;
    out.p = p;
    out.n = n;
    out.j = j;
    const std::int64_t base =
        checked_add(checked_mul(p, j), checked_mul(checked_mul(p, n), p - 1) / 2);
    out.cable_level = static_cast<int>(base - 1);
    out.ranks = prof.level(j - 1);
    for (int i = 2; i <= p - 1; ++i)
        out.plateau_levels.emplace_back(static_cast<int>(base - i), static_cast<int>(base - i - 1));
    return out;
}

// ---- tau profiles over the cabling parameter ----

/// tau^p(n) = tau(K_{p,pn+1}) over a contiguous window of n.
struct TauProfile {
    int p = 2;
    int n_min = 0;
    std::vector<int> values;

    int n_max() const { return n_min + static_cast<int>(values.size()) - 1; }
    bool contains(int n) const { return n >= n_min && n <= n_max(); }
    int value_at(int n) const {
        if (!contains(n)) throw std::out_of_range("n outside the profile window");
        return values[static_cast<std::size_t>(n - n_min)];
    }
};

/// Parameters n where the profile departs from the maximal-slope line:
/// tau^p(n) != tau^p(n+1) - p(p-1)/2.
inline std::vector<int> jump_locus(const TauProfile& tp) {
    std::vector<int> J;
    const int slope = tp.p * (tp.p - 1) / 2;
    for (int n = tp.n_min; n < tp.n_max(); ++n)
        if (tp.value_at(n) != tp.value_at(n + 1) - slope) J.push_back(n);
    return J;
}

/// Coherence of a profile against its companion record: every value inside
/// the band, steps within [0, p(p-1)/2], at most p-1 jumps.
inline std::vector<std::string> validate_tau_profile(const TauProfile& tp, const KnotRecord& k) {
    std::vector<std::string> v;
    if (tp.p < 2) {
        v.push_back("profile needs p >= 2");
        return v;
    }
    const int slope = tp.p * (tp.p - 1) / 2;
    if (k.tau) {
        for (int n = tp.n_min; n <= tp.n_max(); ++n) {
            const TauInterval ti = tau_cable_interval(k, tp.p, n);
            if (tp.value_at(n) < ti.lower || tp.value_at(n) > ti.upper)
                v.push_back("value at n = " + std::to_string(n) + " outside the band [" +
                            std::to_string(ti.lower) + ", " + std::to_string(ti.upper) + "]");
        }
    }
    for (int n = tp.n_min; n < tp.n_max(); ++n) {
        const int step = tp.value_at(n + 1) - tp.value_at(n);
        if (step < 0 || step > slope)
            v.push_back("step at n = " + std::to_string(n) + " outside [0, " +
                        std::to_string(slope) + "]");
    }
    const auto J = jump_locus(tp);
    if (static_cast<int>(J.size()) > tp.p - 1)
        v.push_back("jump locus has " + std::to_string(J.size()) + " elements, more than p - 1");
    return v;
}

/// Profile from the exact endpoint rules; requires tau = +-genus or genus 0.
inline TauProfile exact_tau_profile(const KnotRecord& k, int p, int n_min, int n_max) {
    if (n_max < n_min) throw std::invalid_argument("empty profile window");
    TauProfile tp;
    tp.p = p;
    tp.n_min = n_min;
    for (int n = n_min; n <= n_max; ++n) {
        const TauInterval ti = tau_cable_interval(k, p, n);
        if (!ti.exact)
            throw std::domain_error(
                "profile needs exact endpoints; companion tau is not extremal");
        tp.values.push_back(*ti.exact);
    }
    return tp;
}

// ---- exterior grading table ----

/// Alexander gradings of the exterior generators of a (p, pn+1) cable
/// diagram: rows x_i (i = 0..2n(p-1)) against companion columns C(k)
/// (k = g..-g), each entry carrying the companion-scale grading A and the
/// cable-scale grading A'.  Entries are stored, not recomputed, so the law
/// checker below verifies the table rather than restating its definition.
struct GradingTable {
    int p = 2;
    int n = 1;
    int g = 0;
    std::vector<std::vector<std::pair<int, int>>> cells;  ///< [i][g - k]

    int row_count() const { return 2 * n * (p - 1) + 1; }

    /// (A, A') at row x_i, column C(k).
    std::pair<int, int> entry(int i, int k) const {
        return cells.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(g - k));
    }

    int max_cable_grading() const { return entry(0, g).second; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["p"] = p;
        j["n"] = n;
        j["g"] = g;
        j["columns"] = nlohmann::json::array();
        for (int k = g; k >= -g; --k) j["columns"].push_back(k);
        j["rows"] = nlohmann::json::array();
        for (int i = 0; i < row_count(); ++i) {
            nlohmann::json row;
            row["x"] = i;
            row["entries"] = nlohmann::json::array();
            for (int k = g; k >= -g; --k) {
                const auto [a, ap] = entry(i, k);
                row["entries"].push_back({a, ap});
            }
            j["rows"].push_back(row);
        }
        return j;
    }

    std::string render() const {
        std::ostringstream out;
        std::vector<std::size_t> width(static_cast<std::size_t>(2 * g + 1), 0);
        auto cell = [&](int i, int k) {
            const auto [a, ap] = entry(i, k);
            return "(" + std::to_string(a) + ", " + std::to_string(ap) + ")";
        };
        for (int k = g; k >= -g; --k) {
            std::size_t w = ("C(" + std::to_string(k) + ")").size();
            for (int i = 0; i < row_count(); ++i)
                w = std::max(w, cell(i, k).size());
            width[static_cast<std::size_t>(g - k)] = w;
        }
        std::size_t label = std::string("x_" + std::to_string(row_count() - 1)).size();
        out << std::string(label, ' ');
        for (int k = g; k >= -g; --k) {
            const std::string h = "C(" + std::to_string(k) + ")";
            out << "  " << std::string(width[static_cast<std::size_t>(g - k)] - h.size(), ' ') << h;
        }
        out << "\n";
        for (int i = 0; i < row_count(); ++i) {
            std::string l = "x_" + std::to_string(i);
            out << l << std::string(label - l.size(), ' ');
            for (int k = g; k >= -g; --k) {
                const std::string s = cell(i, k);
                out << "  " << std::string(width[static_cast<std::size_t>(g - k)] - s.size(), ' ')
                    << s;
            }
            out << "\n";
        }
        return out.str();
    }
};

/// Row x_i sits i half-steps below the outermost intersection point: each
/// odd-indexed descent costs (1, 1), each even-indexed descent (0, p-1), and
/// column C(k) contributes (k, pk) on top of the pn(p-1)/2 framing shift.
inline GradingTable exterior_grading_table(int p, int n, int g) {
    if (p < 2) throw std::invalid_argument("grading table needs p >= 2");
    if (n < 1) throw std::invalid_argument("grading table needs n >= 1");
    if (g < 0) throw std::invalid_argument("grading table needs g >= 0");
    GradingTable t{p, n, g, {}};
    for (int i = 0; i < t.row_count(); ++i) {
        const int half_up = (i + 1) / 2, half_down = i / 2;
        std::vector<std::pair<int, int>> row;
        for (int k = g; k >= -g; --k)
            row.emplace_back(k - half_up,
                             p * k + p * n * (p - 1) / 2 - (half_up + half_down * (p - 1)));
        t.cells.push_back(std::move(row));
    }
    return t;
}

/// The three step laws: descent into an odd row drops both gradings by 1,
/// descent out of it keeps A and drops A' by p-1, and a column step from
/// C(j) to C(k) shifts (A, A') by (j-k, p(j-k)).  Every adjacent pair must
/// match exactly one law, and the outermost row must satisfy
/// A' = pA + pn(p-1)/2 with the table maximum at (x_0, C(g)).
inline std::vector<std::string> check_grading_table_laws(const GradingTable& t) {
    std::vector<std::string> v;
    auto match_count = [&](int dA, int dAp, int dk) {
        int c = 0;
        if (dA == 1 && dAp == 1) ++c;                    // into an odd row
        if (dA == 0 && dAp == t.p - 1) ++c;              // out of an odd row
        if (dk != 0 && dA == dk && dAp == t.p * dk) ++c; // column step
        return c;
    };
    for (int k = t.g; k >= -t.g; --k) {
        const auto [a0, ap0] = t.entry(0, k);
        if (ap0 != t.p * a0 + t.p * t.n * (t.p - 1) / 2)
            v.push_back("outermost row breaks A' = pA + pn(p-1)/2 at column " + std::to_string(k));
        for (int i = 1; i < t.row_count(); ++i) {
            const auto [ha, hap] = t.entry(i - 1, k);
            const auto [la, lap] = t.entry(i, k);
            const int dA = ha - la, dAp = hap - lap;
            const bool odd = i % 2 == 1;
            if (match_count(dA, dAp, 0) != 1 || (odd ? (dA != 1 || dAp != 1)
                                                     : (dA != 0 || dAp != t.p - 1)))
                v.push_back("row step x_" + std::to_string(i - 1) + " -> x_" + std::to_string(i) +
                            " at column " + std::to_string(k) + " matches no unique law");
        }
    }
    for (int i = 0; i < t.row_count(); ++i)
        for (int k = t.g; k > -t.g; --k) {
            const auto [ja, jap] = t.entry(i, k);
            const auto [ka, kap] = t.entry(i, k - 1);
            if (match_count(ja - ka, jap - kap, 1) != 1 || ja - ka != 1 || jap - kap != t.p)
                v.push_back("column step C(" + std::to_string(k) + ") -> C(" +
                            std::to_string(k - 1) + ") at row " + std::to_string(i) +
                            " matches no unique law");
        }
    bool displaced = false;
    for (int i = 0; i < t.row_count() && !displaced; ++i)
        for (int k = t.g; k >= -t.g; --k)
            if (t.entry(i, k).second > t.max_cable_grading()) {
                v.push_back("maximal cable grading is not at (x_0, C(g))");
                displaced = true;
                break;
            }
    if (t.max_cable_grading() != t.p * t.g + t.p * t.n * (t.p - 1) / 2)
        v.push_back("maximal cable grading differs from p g + pn(p-1)/2");
    return v;
}

}  // namespace cabletau
