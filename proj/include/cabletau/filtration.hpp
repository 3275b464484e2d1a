/** @file filtration.hpp
 *  @brief Finite Alexander-filtered chain complexes over GF(2).
 *
 *  A complex carries bigraded generators (Alexander grading A, Maslov grading
 *  M) and a differential that drops M by exactly 1 and never raises A, so the
 *  sublevel sets Filt(j) = span{A <= j} are subcomplexes.  Homology is
 *  computed gradewise by Gaussian elimination.  Staircase complexes are the
 *  model complexes built from alternating-unit-coefficient polynomials.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cabletau/laurent.hpp"

namespace cabletau {

/// Maslov grading -> rank; only positive ranks are stored.
using GradedRanks = std::map<int, std::size_t>;

/// (Alexander, Maslov) -> rank; only positive ranks are stored.
struct HFKTable {
    std::map<std::pair<int, int>, std::size_t> ranks;

    std::size_t rank_at(int alexander, int maslov) const {
        auto it = ranks.find({alexander, maslov});
        return it == ranks.end() ? 0 : it->second;
    }

    std::size_t total_rank() const {
        std::size_t t = 0;
        for (const auto& [_, r] : ranks) t += r;
        return t;
    }

    friend bool operator==(const HFKTable& a, const HFKTable& b) { return a.ranks == b.ranks; }
    friend bool operator!=(const HFKTable& a, const HFKTable& b) { return !(a == b); }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (auto it = ranks.rbegin(); it != ranks.rend(); ++it)
            arr.push_back({{"alexander", it->first.first},
                           {"maslov", it->first.second},
                           {"rank", it->second}});
        return arr;
    }
};

struct Generator {
    std::string id;
    int alexander = 0;
    int maslov = 0;
};

class FilteredComplex {
public:
    static constexpr std::size_t default_generator_cap = 10000;

    explicit FilteredComplex(std::size_t generator_cap = default_generator_cap)
        : _cap(generator_cap) {}

    void add_generator(const std::string& id, int alexander, int maslov) {
        if (_index.count(id))
            throw std::invalid_argument("duplicate generator id \"" + id + "\"");
        if (_gens.size() >= _cap)
            throw std::length_error("generator cap exceeded (" + std::to_string(_cap) + ")");
        _index[id] = _gens.size();
        _gens.push_back({id, alexander, maslov});
        _boundary.emplace_back();
    }

    /// Record a GF(2) boundary term from -> to.  Each pair may appear once.
    void add_boundary_term(const std::string& from, const std::string& to) {
        const std::size_t f = index_of(from), t = index_of(to);
        auto& row = _boundary[f];
        if (std::find(row.begin(), row.end(), t) != row.end())
            throw std::invalid_argument("boundary term repeated: " + from + " -> " + to);
        row.push_back(t);
    }

    std::size_t size() const { return _gens.size(); }
    const std::vector<Generator>& generators() const { return _gens; }
    const std::vector<std::size_t>& boundary_of(std::size_t i) const { return _boundary.at(i); }

    std::size_t index_of(const std::string& id) const {
        auto it = _index.find(id);
        if (it == _index.end())
            throw std::invalid_argument("unknown generator id \"" + id + "\"");
        return it->second;
    }

    std::optional<int> min_alexander() const {
        std::optional<int> m;
        for (const auto& g : _gens)
            if (!m || g.alexander < *m) m = g.alexander;
        return m;
    }

    std::optional<int> max_alexander() const {
        std::optional<int> m;
        for (const auto& g : _gens)
            if (!m || g.alexander > *m) m = g.alexander;
        return m;
    }

    /// Enforce the structural laws: every boundary term drops M by exactly 1
    /// and never raises A, and the differential squares to zero.
    void validate() const {
        for (std::size_t i = 0; i < _gens.size(); ++i) {
            for (std::size_t t : _boundary[i]) {
                if (_gens[t].maslov != _gens[i].maslov - 1)
                    throw std::invalid_argument("boundary term " + _gens[i].id + " -> " +
                                                _gens[t].id + " must drop Maslov by exactly 1");
                if (_gens[t].alexander > _gens[i].alexander)
                    throw std::invalid_argument("boundary term " + _gens[i].id + " -> " +
                                                _gens[t].id + " raises the Alexander grading");
            }
        }
        for (std::size_t i = 0; i < _gens.size(); ++i) {
            std::set<std::size_t> dd;
            for (std::size_t t : _boundary[i])
                for (std::size_t u : _boundary[t]) {
                    auto [it, inserted] = dd.insert(u);
                    if (!inserted) dd.erase(it);
                }
            if (!dd.empty())
                throw std::invalid_argument("differential does not square to zero at " + _gens[i].id);
        }
    }

    friend bool operator==(const FilteredComplex& a, const FilteredComplex& b) {
        if (a._gens.size() != b._gens.size()) return false;
        for (std::size_t i = 0; i < a._gens.size(); ++i) {
            const auto& ga = a._gens[i];
            const auto& gb = b._gens[i];
            if (ga.id != gb.id || ga.alexander != gb.alexander || ga.maslov != gb.maslov)
                return false;
            auto ra = a._boundary[i], rb = b._boundary[i];
            std::sort(ra.begin(), ra.end());
            std::sort(rb.begin(), rb.end());
            if (ra != rb) return false;
        }
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["generators"] = nlohmann::json::array();
        for (const auto& g : _gens)
            j["generators"].push_back({{"id", g.id}, {"A", g.alexander}, {"M", g.maslov}});
        j["boundary"] = nlohmann::json::object();
        for (std::size_t i = 0; i < _gens.size(); ++i) {
            if (_boundary[i].empty()) continue;
            nlohmann::json arr = nlohmann::json::array();
            for (std::size_t t : _boundary[i]) arr.push_back(_gens[t].id);
            j["boundary"][_gens[i].id] = arr;
        }
        return j;
    }

    static FilteredComplex from_json(const nlohmann::json& j,
                                     std::size_t generator_cap = default_generator_cap) {
        if (!j.is_object() || !j.contains("generators") || !j.at("generators").is_array())
            throw std::invalid_argument("complex JSON needs a \"generators\" array");
        FilteredComplex c(generator_cap);
        for (const auto& g : j.at("generators")) {
            if (!g.is_object() || !g.contains("id") || !g.contains("A") || !g.contains("M") ||
                !g.at("id").is_string() || !g.at("A").is_number_integer() ||
                !g.at("M").is_number_integer())
                throw std::invalid_argument("complex generator needs string id and integer A, M");
            c.add_generator(g.at("id").get<std::string>(), g.at("A").get<int>(),
                            g.at("M").get<int>());
        }
        if (j.contains("boundary")) {
            if (!j.at("boundary").is_object())
                throw std::invalid_argument("complex \"boundary\" must be an object");
            for (const auto& [from, row] : j.at("boundary").items()) {
                if (!row.is_array())
                    throw std::invalid_argument("boundary of \"" + from + "\" must be an array");
                for (const auto& to : row) {
                    if (!to.is_string())
                        throw std::invalid_argument("boundary targets must be generator ids");
                    c.add_boundary_term(from, to.get<std::string>());
                }
            }
        }
        c.validate();
        return c;
    }

private:
    std::size_t _cap;
    std::vector<Generator> _gens;
    std::vector<std::vector<std::size_t>> _boundary;
    std::unordered_map<std::string, std::size_t> _index;
};

namespace detail {

// ---- GF(2) row space with incremental insertion ----
struct Gf2Echelon {
    std::size_t words;
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::size_t> pivots;

    explicit Gf2Echelon(std::size_t bits) : words((bits + 63) / 64) {}

    static bool get_bit(const std::vector<std::uint64_t>& r, std::size_t b) {
        return (r[b >> 6] >> (b & 63)) & 1u;
    }
    static void flip_bit(std::vector<std::uint64_t>& r, std::size_t b) {
        r[b >> 6] ^= std::uint64_t(1) << (b & 63);
    }
    static void xor_into(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
    }
    static std::optional<std::size_t> first_bit(const std::vector<std::uint64_t>& r) {
        for (std::size_t w = 0; w < r.size(); ++w)
            if (r[w]) return (w << 6) + static_cast<std::size_t>(__builtin_ctzll(r[w]));
        return std::nullopt;
    }

    std::vector<std::uint64_t> blank() const { return std::vector<std::uint64_t>(words, 0); }

    /// Reduce r against the basis; keep it if independent.  Returns true when
    /// r enlarged the span.
    bool insert(std::vector<std::uint64_t> r) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (get_bit(r, pivots[i])) xor_into(r, rows[i]);
        auto p = first_bit(r);
        if (!p) return false;
        pivots.push_back(*p);
        rows.push_back(std::move(r));
        return true;
    }

    std::size_t rank() const { return rows.size(); }
};

/// Kernel of a GF(2) matrix given by rows (one per domain element) over
/// `cols` coordinates; returns basis vectors as bitmasks over domain indices.
inline std::vector<std::vector<std::uint64_t>> gf2_kernel(
    const std::vector<std::vector<std::uint64_t>>& rows, std::size_t cols) {
    const std::size_t n = rows.size();
    const std::size_t lw = (cols + 63) / 64, rw = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> left, right, kernel;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint64_t> l = rows[i];
        l.resize(lw, 0);
        std::vector<std::uint64_t> r(rw, 0);
        Gf2Echelon::flip_bit(r, i);
        for (std::size_t k = 0; k < left.size(); ++k)
            if (Gf2Echelon::get_bit(l, pivots[k])) {
                Gf2Echelon::xor_into(l, left[k]);
                Gf2Echelon::xor_into(r, right[k]);
            }
        if (auto p = Gf2Echelon::first_bit(l)) {
            pivots.push_back(*p);
            left.push_back(std::move(l));
            right.push_back(std::move(r));
        } else {
            kernel.push_back(std::move(r));
        }
    }
    return kernel;
}

/// Gradewise homology ranks of the span of `sel`; when
/// `restrict_to_same_alexander` is set, only boundary terms preserving A are
/// kept (the associated-graded differential).
inline GradedRanks homology_of_selection(const FilteredComplex& c, const std::vector<bool>& sel,
                                         bool restrict_to_same_alexander) {
    const auto& gens = c.generators();
    std::map<int, std::vector<std::size_t>> by_maslov;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (sel[i]) by_maslov[gens[i].maslov].push_back(i);

    std::map<int, std::size_t> boundary_rank;  // rank of d: level m -> m-1
    for (const auto& [m, dom] : by_maslov) {
        auto below = by_maslov.find(m - 1);
        if (below == by_maslov.end()) continue;
        std::unordered_map<std::size_t, std::size_t> col;
        for (std::size_t k = 0; k < below->second.size(); ++k) col[below->second[k]] = k;
        Gf2Echelon ech(below->second.size());
        std::size_t rank = 0;
        for (std::size_t i : dom) {
            auto row = ech.blank();
            for (std::size_t t : c.boundary_of(i)) {
                if (!sel[t]) continue;
                if (restrict_to_same_alexander &&
                    gens[t].alexander != gens[i].alexander)
                    continue;
                Gf2Echelon::flip_bit(row, col.at(t));
            }
            if (ech.insert(std::move(row))) ++rank;
        }
        if (rank) boundary_rank[m] = rank;
    }

    GradedRanks h;
    for (const auto& [m, dom] : by_maslov) {
        std::size_t r = dom.size();
        auto out = boundary_rank.find(m);
        if (out != boundary_rank.end()) r -= out->second;
        auto in = boundary_rank.find(m + 1);
        if (in != boundary_rank.end()) r -= in->second;
        if (r) h[m] = r;
    }
    return h;
}

}  // namespace detail

/// Homology of the subcomplex Filt(j) = span{A <= j}, graded by Maslov.
inline GradedRanks homology_of_subcomplex(const FilteredComplex& c, int j) {
    c.validate();
    std::vector<bool> sel(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        sel[i] = c.generators()[i].alexander <= j;
    return detail::homology_of_selection(c, sel, false);
}

/// Homology of the associated graded object (the A-preserving part of the
/// differential), one grading column per Alexander level.
inline HFKTable associated_graded_hfk(const FilteredComplex& c) {
    c.validate();
    std::set<int> levels;
    for (const auto& g : c.generators()) levels.insert(g.alexander);
    HFKTable table;
    for (int a : levels) {
        std::vector<bool> sel(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            sel[i] = c.generators()[i].alexander == a;
        for (const auto& [m, r] : detail::homology_of_selection(c, sel, true))
            table.ranks[{a, m}] = r;
    }
    return table;
}

/// Minimal j such that H(Filt(j)) -> H(whole complex) is onto.  Requires the
/// total homology to have rank 1, concentrated in Maslov grading 0.
inline int tau_of_complex(const FilteredComplex& c) {
    c.validate();
    const auto maxA = c.max_alexander();
    if (!maxA || homology_of_subcomplex(c, *maxA) != GradedRanks{{0, 1}})
        throw std::domain_error(
            "tau needs total homology of rank 1 in Maslov grading 0");

    const auto& gens = c.generators();
    std::vector<std::size_t> m0, m1, mneg;  // generators at Maslov 0, 1, -1
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].maslov == 0) m0.push_back(i);
        else if (gens[i].maslov == 1) m1.push_back(i);
        else if (gens[i].maslov == -1) mneg.push_back(i);
    }
    std::unordered_map<std::size_t, std::size_t> col0, colneg;
    for (std::size_t k = 0; k < m0.size(); ++k) col0[m0[k]] = k;
    for (std::size_t k = 0; k < mneg.size(); ++k) colneg[mneg[k]] = k;

    // Boundaries into Maslov 0 in the whole complex.
    detail::Gf2Echelon image(m0.size());
    for (std::size_t i : m1) {
        auto row = image.blank();
        for (std::size_t t : c.boundary_of(i)) detail::Gf2Echelon::flip_bit(row, col0.at(t));
        image.insert(std::move(row));
    }

    for (int j = *c.min_alexander(); j <= *maxA; ++j) {
        // Cycle basis of Filt(j) at Maslov 0 (a subcomplex, so cycles agree
        // with cycles of the whole complex that lie in Filt(j)).
        std::vector<std::size_t> dom;
        for (std::size_t i : m0)
            if (gens[i].alexander <= j) dom.push_back(i);
        if (dom.empty()) continue;
        std::vector<std::vector<std::uint64_t>> rows;
        const std::size_t negw = (mneg.size() + 63) / 64;
        for (std::size_t i : dom) {
            std::vector<std::uint64_t> row(negw, 0);
            for (std::size_t t : c.boundary_of(i)) detail::Gf2Echelon::flip_bit(row, colneg.at(t));
            rows.push_back(std::move(row));
        }
        const auto kernel = detail::gf2_kernel(rows, mneg.size());
        detail::Gf2Echelon span = image;  // copy: test containment of cycles
        for (const auto& combo : kernel) {
            auto vec = span.blank();
            for (std::size_t d = 0; d < dom.size(); ++d)
                if (detail::Gf2Echelon::get_bit(combo, d)) detail::Gf2Echelon::flip_bit(vec, col0.at(dom[d]));
            if (span.insert(std::move(vec))) return j;  // a cycle escaping the boundaries
        }
    }
    throw std::logic_error("no filtration level surjects onto the total homology");
}

/// Staircase model complex of an alternating-unit-coefficient polynomial.
/// Generators x_0..x_{2m} sit at the exponents n_0 > ... > n_{2m}; Maslov
/// gradings follow the descent rule (drop 2*(gap)-1 into an odd index, drop 1
/// out of it); the differential sends each odd-index generator to its
/// successor.  The resulting total homology has rank 1 in Maslov grading 0.
inline FilteredComplex staircase_complex(const LaurentPoly& delta) {
    if (!delta.alternating_unit_coeffs())
        throw std::domain_error("staircase requires alternating unit coefficients");
    std::vector<int> exps;
    for (auto it = delta.terms().rbegin(); it != delta.terms().rend(); ++it)
        exps.push_back(it->first);
    FilteredComplex c;
    int maslov = 0;
    for (std::size_t j = 0; j < exps.size(); ++j) {
        if (j > 0) {
            if (j % 2 == 1) maslov -= 2 * (exps[j - 1] - exps[j]) - 1;
            else maslov -= 1;
        }
        c.add_generator("x" + std::to_string(j), exps[j], maslov);
    }
    for (std::size_t j = 1; j + 1 < exps.size(); j += 2)
        c.add_boundary_term("x" + std::to_string(j), "x" + std::to_string(j + 1));
    c.validate();
    return c;
}

}  // namespace cabletau
