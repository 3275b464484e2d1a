/** @file laurent.hpp
 *  @brief Laurent polynomials in one variable t over the integers, exact arithmetic.
 *
 *  Coefficients are overflow-checked 64-bit integers.  The zero polynomial is
 *  representable; stored terms always have nonzero coefficients.
 */
#pragma once

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

namespace cabletau {

class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly constant(std::int64_t c) { return monomial(0, c); }

    static LaurentPoly one() { return constant(1); }

    static LaurentPoly monomial(int exp, std::int64_t c) {
        LaurentPoly p;
        if (c != 0) p._terms[exp] = c;
        return p;
    }

    /// Build from (exponent, coefficient) pairs; repeated exponents accumulate.
    static LaurentPoly from_terms(const std::vector<std::pair<int, std::int64_t>>& ts) {
        LaurentPoly p;
        for (const auto& [e, c] : ts) p.add_term(e, c);
        return p;
    }

    /// Coefficient of t^exp (0 if absent).
    std::int64_t coeff(int exp) const {
        auto it = _terms.find(exp);
        return it == _terms.end() ? 0 : it->second;
    }

    bool is_zero() const { return _terms.empty(); }

    std::size_t term_count() const { return _terms.size(); }

    /// Terms keyed by exponent, ascending; coefficients all nonzero.
    const std::map<int, std::int64_t>& terms() const { return _terms; }

    std::optional<int> top_degree() const {
        if (_terms.empty()) return std::nullopt;
        return _terms.rbegin()->first;
    }

    std::optional<int> bottom_degree() const {
        if (_terms.empty()) return std::nullopt;
        return _terms.begin()->first;
    }

    std::int64_t eval_at_one() const {
        std::int64_t s = 0;
        for (const auto& [e, c] : _terms) s = checked_add(s, c);
        return s;
    }

    /// True iff invariant under t -> t^-1.
    bool is_symmetric() const {
        for (const auto& [e, c] : _terms)
            if (coeff(-e) != c) return false;
        return true;
    }

    /// True iff in decreasing exponent order the coefficients read +1, -1, ..., +1.
    /// Requires a symmetric polynomial with value 1 at t = 1.
    bool alternating_unit_coeffs() const {
        if (!is_symmetric())
            throw std::domain_error("alternating_unit_coeffs: polynomial is not symmetric");
        if (eval_at_one() != 1)
            throw std::domain_error("alternating_unit_coeffs: value at t=1 is not 1");
        std::int64_t expect = 1;
        for (auto it = _terms.rbegin(); it != _terms.rend(); ++it) {
            if (it->second != expect) return false;
            expect = -expect;
        }
        return expect == -1;  // odd term count: first and last coefficient are +1
    }

    /// t -> t^p on exponents (p >= 1).
    LaurentPoly substitute_power(int p) const {
        if (p < 1) throw std::invalid_argument("substitute_power: power must be >= 1");
        LaurentPoly r;
        for (const auto& [e, c] : _terms) {
            std::int64_t pe = checked_mul(static_cast<std::int64_t>(e), p);
            r._terms[exp_from_i64(pe)] = c;
        }
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b._terms) r.add_term(e, c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b._terms) r.add_term(e, checked_sub(0, c));
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a._terms)
            for (const auto& [eb, cb] : b._terms) {
                std::int64_t e = checked_add(ea, eb);
                r.add_term(exp_from_i64(e), checked_mul(ca, cb));
            }
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a._terms == b._terms;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Text form with descending exponents and explicit signs, e.g.
    /// "t^3 - t^2 + 1 - t^-2 + t^-3"; the zero polynomial prints "0".
    std::string to_string() const {
        if (_terms.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = _terms.rbegin(); it != _terms.rend(); ++it) {
            const int e = it->first;
            const std::int64_t c = it->second;
            const std::int64_t mag = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (mag != 1 || e == 0) out << mag;
            if (e == 1) out << "t";
            else if (e != 0) out << "t^" << e;
        }
        return out.str();
    }

    /// JSON form: [[exponent, coefficient], ...] with exponents descending.
    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (auto it = _terms.rbegin(); it != _terms.rend(); ++it)
            arr.push_back({it->first, it->second});
        return arr;
    }

    static LaurentPoly from_json(const nlohmann::json& j) {
        if (!j.is_array())
            throw std::invalid_argument("laurent JSON must be an array of [exponent, coefficient] pairs");
        LaurentPoly p;
        for (const auto& item : j) {
            if (!item.is_array() || item.size() != 2 ||
                !item[0].is_number_integer() || !item[1].is_number_integer())
                throw std::invalid_argument("laurent JSON term must be an [exponent, coefficient] integer pair");
            const std::int64_t e = item[0].get<std::int64_t>();
            const std::int64_t c = item[1].get<std::int64_t>();
            if (p._terms.count(exp_from_i64(e)))
                throw std::invalid_argument("laurent JSON repeats exponent " + std::to_string(e));
            p.add_term(exp_from_i64(e), c);
        }
        return p;
    }

private:
    void add_term(int exp, std::int64_t c) {
        if (c == 0) return;
        auto [it, inserted] = _terms.emplace(exp, c);
        if (!inserted) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) _terms.erase(it);
        }
    }

    static int exp_from_i64(std::int64_t e) {
        if (e < INT32_MIN || e > INT32_MAX)
            throw std::overflow_error("exponent out of 32-bit range");
        return static_cast<int>(e);
    }

    std::map<int, std::int64_t> _terms;
};

/// Alexander polynomial of the (p, q) torus knot, normalized symmetric with
/// value 1 at t = 1:
///
///     t^{-(p-1)(|q|-1)/2} (t^{p|q|} - 1)(t - 1) / ((t^p - 1)(t^|q| - 1))
///
/// computed by exact polynomial division (zero remainder asserted).  Mirrors
/// share the polynomial, so q < 0 gives the same result as |q|; p = 1 or
/// |q| = 1 gives the constant 1.
inline LaurentPoly torus_knot_alexander(int p, int q) {
    if (p < 1) throw std::invalid_argument("torus_knot_alexander: p must be >= 1");
    if (q == 0) throw std::invalid_argument("torus_knot_alexander: q must be nonzero");
    const long long qa = q < 0 ? -static_cast<long long>(q) : q;
    if (std::gcd(static_cast<long long>(p), qa) != 1)
        throw std::invalid_argument("torus_knot_alexander: p and q must be coprime");
    if (p == 1 || qa == 1) return LaurentPoly::one();

    // Dense numerator (t^{pq} - 1)(t - 1) and denominator (t^p - 1)(t^q - 1),
    // exponents 0..pq+1.  Degrees are tiny at desk scale.
    const long long pq = checked_mul(p, qa);
    if (pq > 1 << 20) throw std::invalid_argument("torus_knot_alexander: parameters too large");
    std::vector<std::int64_t> num(static_cast<std::size_t>(pq) + 2, 0);
    num[static_cast<std::size_t>(pq) + 1] = 1;
    num[static_cast<std::size_t>(pq)] = -1;
    num[1] = -1;
    num[0] = 1;
    std::vector<std::int64_t> den(static_cast<std::size_t>(p + qa) + 1, 0);
    den[static_cast<std::size_t>(p + qa)] = 1;
    den[static_cast<std::size_t>(p)] = -1;
    den[static_cast<std::size_t>(qa)] = -1;
    den[0] = 1;

    // Long division by the monic denominator.
    const std::size_t dq = num.size() - den.size();  // quotient degree (p-1)(q-1)
    std::vector<std::int64_t> quot(dq + 1, 0);
    for (std::size_t k = dq + 1; k-- > 0;) {
        const std::int64_t c = num[k + den.size() - 1];
        quot[k] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i < den.size(); ++i)
            num[k + i] = checked_sub(num[k + i], checked_mul(c, den[i]));
    }
    for (std::int64_t c : num)
        if (c != 0) throw std::logic_error("torus_knot_alexander: division left a remainder");

    const int half = static_cast<int>(dq / 2);  // (p-1)(q-1) is even for coprime p, q
    LaurentPoly r;
    for (std::size_t k = 0; k < quot.size(); ++k)
        if (quot[k] != 0) r = r + LaurentPoly::monomial(static_cast<int>(k) - half, quot[k]);
    return r;
}

}  // namespace cabletau
