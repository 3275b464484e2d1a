/** @file knot.hpp
 *  @brief Knot records: certified invariant bundles, validation, and JSON tables.
 *
 *  A record stores asserted values; validation enforces the coherence laws
 *  between them.  tau and the positivity flag are tri-state (unknown allowed).
 */
#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cabletau/laurent.hpp"

namespace cabletau {

struct KnotRecord {
    std::string name;
    int genus = 0;                      ///< Seifert genus, >= 0
    std::optional<int> tau;             ///< concordance invariant, may be unknown
    LaurentPoly alexander;              ///< symmetric, value 1 at t=1
    bool lspace_knot = false;           ///< admits a positive L-space surgery
    std::optional<bool> pos_member;     ///< positivity class: closures of positive
                                        ///< braids, closed under positive cabling
                                        ///< and connected sum; tau = genus on it
    std::optional<bool> fibered;        ///< fibered knot flag, may be unknown
    std::optional<bool> complex_fiber;  ///< has a Seifert surface isotopic to a
                                        ///< piece of a smooth complex curve

    friend bool operator==(const KnotRecord& a, const KnotRecord& b) {
        return a.name == b.name && a.genus == b.genus && a.tau == b.tau &&
               a.alexander == b.alexander && a.lspace_knot == b.lspace_knot &&
               a.pos_member == b.pos_member && a.fibered == b.fibered &&
               a.complex_fiber == b.complex_fiber;
    }
    friend bool operator!=(const KnotRecord& a, const KnotRecord& b) { return !(a == b); }
};

/// Coherence violations, empty when the record is acceptable.
inline std::vector<std::string> validate_record(const KnotRecord& k) {
    std::vector<std::string> v;
    if (k.genus < 0) v.push_back("genus must be >= 0");
    bool alex_ok = true;
    if (k.alexander.is_zero()) {
        v.push_back("alexander polynomial must be nonzero");
        alex_ok = false;
    }
    if (!k.alexander.is_symmetric()) {
        v.push_back("alexander polynomial must be symmetric under t -> t^-1");
        alex_ok = false;
    }
    if (alex_ok && k.alexander.eval_at_one() != 1) {
        v.push_back("alexander polynomial must take value 1 at t = 1");
        alex_ok = false;
    }
    if (alex_ok && *k.alexander.top_degree() > k.genus)
        v.push_back("alexander top degree exceeds genus");
    if (k.tau && (*k.tau > k.genus || *k.tau < -k.genus))
        v.push_back("tau outside [-genus, genus]");
    if (k.lspace_knot) {
        if (!k.tau || *k.tau != k.genus)
            v.push_back("L-space flag requires tau = genus");
        if (!alex_ok || !k.alexander.alternating_unit_coeffs())
            v.push_back("L-space flag requires alternating unit coefficients");
        if (!k.pos_member || !*k.pos_member)
            v.push_back("L-space flag requires positivity-class membership");
    }
    if (k.pos_member && *k.pos_member && (!k.tau || *k.tau != k.genus))
        v.push_back("positivity-class membership requires tau = genus");
    if (k.pos_member && !*k.pos_member && k.tau && *k.tau == k.genus)
        v.push_back("positivity-class exclusion requires tau != genus");
    if (k.complex_fiber && *k.complex_fiber && (!k.fibered || !*k.fibered))
        v.push_back("complex-curve fiber flag requires fibered");
    return v;
}

/// Built-in atlas: the reference knots every computation is exercised against.
inline std::vector<KnotRecord> builtin_knots() {
    std::vector<KnotRecord> ks;
    ks.push_back({"unknot", 0, 0, LaurentPoly::one(), true, true, true, true});
    ks.push_back({"right-trefoil", 1, 1, torus_knot_alexander(2, 3), true, true, true, true});
    ks.push_back({"left-trefoil", 1, -1, torus_knot_alexander(2, 3), false, false, true, false});
    ks.push_back({"figure-eight", 1, 0,
                  LaurentPoly::from_terms({{1, -1}, {0, 3}, {-1, -1}}), false, false, true, false});
    return ks;
}

/// Record for the (p, q) torus knot, p >= 1, q nonzero and coprime to p.
/// Negating q mirrors the knot: tau negates, genus and the polynomial persist.
inline KnotRecord torus_knot_record(int p, int q) {
    LaurentPoly alex = torus_knot_alexander(p, q);  // validates p, q
    const int qa = q < 0 ? -q : q;
    const int g = (p - 1) * (qa - 1) / 2;
    KnotRecord k;
    k.name = "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
    k.genus = g;
    k.tau = q > 0 ? g : -g;
    k.alexander = std::move(alex);
    k.lspace_knot = q > 0;
    k.pos_member = q > 0 || g == 0;
    k.fibered = true;
    k.complex_fiber = q > 0 || g == 0;
    return k;
}

inline const KnotRecord* find_knot(const std::vector<KnotRecord>& ks, const std::string& name) {
    for (const auto& k : ks)
        if (k.name == name) return &k;
    return nullptr;
}

inline nlohmann::json record_to_json(const KnotRecord& k) {
    nlohmann::json j;
    j["name"] = k.name;
    j["genus"] = k.genus;
    j["tau"] = k.tau ? nlohmann::json(*k.tau) : nlohmann::json(nullptr);
    j["alexander"] = k.alexander.to_json();
    j["lspace_knot"] = k.lspace_knot;
    j["pos_member"] = k.pos_member ? nlohmann::json(*k.pos_member) : nlohmann::json(nullptr);
    if (k.fibered) j["fibered"] = *k.fibered;
    if (k.complex_fiber) j["complex_fiber"] = *k.complex_fiber;
    return j;
}

inline nlohmann::json serialize_knot_table(const std::vector<KnotRecord>& ks) {
    nlohmann::json j;
    j["knots"] = nlohmann::json::array();
    for (const auto& k : ks) j["knots"].push_back(record_to_json(k));
    return j;
}

namespace detail {

inline std::string table_ctx(std::size_t i, const std::string& field) {
    return "knots[" + std::to_string(i) + "]." + field;
}

inline KnotRecord record_from_json(const nlohmann::json& j, std::size_t i) {
    if (!j.is_object()) throw std::runtime_error(table_ctx(i, "") + ": record must be an object");
    auto need = [&](const char* f) -> const nlohmann::json& {
        if (!j.contains(f)) throw std::runtime_error(table_ctx(i, f) + ": missing field");
        return j.at(f);
    };
    KnotRecord k;
    if (!need("name").is_string()) throw std::runtime_error(table_ctx(i, "name") + ": must be a string");
    k.name = j.at("name").get<std::string>();
    if (!need("genus").is_number_integer())
        throw std::runtime_error(table_ctx(i, "genus") + ": must be an integer");
    k.genus = j.at("genus").get<int>();
    const auto& tau = need("tau");
    if (tau.is_null()) k.tau = std::nullopt;
    else if (tau.is_number_integer()) k.tau = tau.get<int>();
    else throw std::runtime_error(table_ctx(i, "tau") + ": must be an integer or null");
    try {
        k.alexander = LaurentPoly::from_json(need("alexander"));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(table_ctx(i, "alexander") + ": " + e.what());
    }
    if (!need("lspace_knot").is_boolean())
        throw std::runtime_error(table_ctx(i, "lspace_knot") + ": must be a boolean");
    k.lspace_knot = j.at("lspace_knot").get<bool>();
    const auto& pos = need("pos_member");
    if (pos.is_null()) k.pos_member = std::nullopt;
    else if (pos.is_boolean()) k.pos_member = pos.get<bool>();
    else throw std::runtime_error(table_ctx(i, "pos_member") + ": must be a boolean or null");
    for (const char* f : {"fibered", "complex_fiber"}) {
        if (!j.contains(f) || j.at(f).is_null()) continue;
        if (!j.at(f).is_boolean())
            throw std::runtime_error(table_ctx(i, f) + ": must be a boolean or null");
        (f == std::string("fibered") ? k.fibered : k.complex_fiber) = j.at(f).get<bool>();
    }
    return k;
}

}  // namespace detail

/// Parse and validate a knot table.  Throws std::runtime_error with field
/// context on malformed input, std::invalid_argument naming the record and
/// violation when a record fails validation.
inline std::vector<KnotRecord> parse_knot_table(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("knot table parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("knots") || !j.at("knots").is_array())
        throw std::runtime_error("knot table must be an object with a \"knots\" array");
    std::vector<KnotRecord> ks;
    for (std::size_t i = 0; i < j.at("knots").size(); ++i) {
        KnotRecord k = detail::record_from_json(j.at("knots")[i], i);
        if (find_knot(ks, k.name))
            throw std::invalid_argument("knot table repeats name \"" + k.name + "\"");
        const auto violations = validate_record(k);
        if (!violations.empty()) {
            std::string msg = "record \"" + k.name + "\" is invalid:";
            for (const auto& s : violations) msg += " " + s + ";";
            throw std::invalid_argument(msg);
        }
        ks.push_back(std::move(k));
    }
    return ks;
}

inline std::vector<KnotRecord> load_knot_table(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_knot_table(buf.str());
}

inline std::vector<KnotRecord> load_knot_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open knot table: " + path);
    return load_knot_table(in);
}

}  // namespace cabletau
