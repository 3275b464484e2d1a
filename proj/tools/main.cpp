// Command-line front end: knot atlas queries, cable invariants, surgery
// ranks, obstruction reports, grading tables, and the acceptance suite.
//
// Exit codes: 0 success, 2 usage or input error, 3 computation refused,
// 4 verification failure.
#include <algorithm>
#include <climits>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cabletau/verify.hpp"

namespace {

using namespace cabletau;

// Deliberately corrupted staircase for the verification smoke test: odd
// descents add the parity term instead of subtracting it.  The complex still
// validates (boundary steps keep dropping Maslov by one), so only the
// grading oracles can notice.
FilteredComplex corrupted_staircase(const LaurentPoly& delta) {
    if (!delta.alternating_unit_coeffs())
        throw std::domain_error("staircase requires alternating unit coefficients");
    std::vector<int> exps;
    for (auto it = delta.terms().rbegin(); it != delta.terms().rend(); ++it)
        exps.push_back(it->first);
    FilteredComplex c;
    int maslov = 0;
    for (std::size_t j = 0; j < exps.size(); ++j) {
        if (j > 0) {
            if (j % 2 == 1) maslov -= 2 * (exps[j - 1] - exps[j]) + 1;
            else maslov -= 1;
        }
        c.add_generator("x" + std::to_string(j), exps[j], maslov);
    }
    for (std::size_t j = 1; j + 1 < exps.size(); j += 2)
        c.add_boundary_term("x" + std::to_string(j), "x" + std::to_string(j + 1));
    c.validate();
    return c;
}

std::vector<KnotRecord> load_atlas(const std::string& table_path) {
    std::vector<KnotRecord> ks;
    if (!table_path.empty()) ks = load_knot_table_file(table_path);
    for (auto& k : builtin_knots())
        if (!find_knot(ks, k.name)) ks.push_back(std::move(k));
    return ks;
}

KnotRecord resolve_knot(const std::vector<KnotRecord>& atlas, const std::string& name) {
    std::string wanted = name == "trefoil" ? "right-trefoil" : name;
    if (const KnotRecord* k = find_knot(atlas, wanted)) return *k;
    int p = 0, q = 0, used = 0;
    if (std::sscanf(wanted.c_str(), "T(%d,%d)%n", &p, &q, &used) == 2 &&
        used == static_cast<int>(wanted.size()))
        return torus_knot_record(p, q);
    throw std::runtime_error("unknown knot \"" + name + "\" (try knots list or T(p,q))");
}

long long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(what);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument(what);
    }
}

CableParams parse_cable(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("cable must look like p,q");
    const long long p = parse_int(s.substr(0, comma), "cable must look like p,q");
    const long long q = parse_int(s.substr(comma + 1), "cable must look like p,q");
    if (p < INT_MIN || p > INT_MAX || q < INT_MIN || q > INT_MAX)
        throw std::invalid_argument("cable parameters out of range");
    return CableParams(static_cast<int>(p), static_cast<int>(q));
}

std::vector<CableParams> parse_iterate(const std::string& s) {
    std::vector<CableParams> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto semi = s.find(';', start);
        const std::string piece =
            semi == std::string::npos ? s.substr(start) : s.substr(start, semi - start);
        out.push_back(parse_cable(piece));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (out.empty()) throw std::invalid_argument("iterate needs p1,q1;p2,q2;...");
    return out;
}

Rational parse_slope(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rational(parse_int(s, "slope must look like q or q/p"));
    return Rational(parse_int(s.substr(0, slash), "slope must look like q or q/p"),
                    parse_int(s.substr(slash + 1), "slope must look like q or q/p"));
}

/// Certify and apply every cable stage, threading the record through.
KnotRecord apply_certified_cables(KnotRecord k, const std::vector<CableParams>& stages) {
    for (const CableParams& cp : stages) {
        const CableCertificate cert = cable_lspace_certificate(k, cp);
        if (!cert.certified)
            throw std::domain_error("cable stage (" + std::to_string(cp.p) + "," +
                                    std::to_string(cp.q) + ") of " + k.name +
                                    " is not certified: " + cert.reason);
        k = *cert.record;
    }
    return k;
}

int cable_n_or_refuse(const CableParams& cp) {
    const auto n = cp.n();
    if (!n)
        throw std::invalid_argument("this computation needs q = pn + 1; got (" +
                                    std::to_string(cp.p) + "," + std::to_string(cp.q) + ")");
    return *n;
}

void print_aligned(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], row[i].size());
        }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        std::cout << line << "\n";
    }
}

std::string opt_str(const std::optional<int>& v) {
    return v ? std::to_string(*v) : "?";
}

std::string opt_str(const std::optional<bool>& v) {
    return v ? (*v ? "yes" : "no") : "?";
}

int cmd_knots_list(const std::vector<KnotRecord>& atlas, const std::string& format) {
    if (format == "json") {
        std::cout << serialize_knot_table(atlas).dump(2) << "\n";
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"name", "genus", "tau", "lspace", "pos", "fibered", "complex-fiber"});
    for (const auto& k : atlas)
        rows.push_back({k.name, std::to_string(k.genus), opt_str(k.tau),
                        k.lspace_knot ? "yes" : "no", opt_str(k.pos_member),
                        opt_str(k.fibered), opt_str(k.complex_fiber)});
    print_aligned(rows);
    return 0;
}

int cmd_knots_validate(const std::vector<KnotRecord>& atlas, const std::string& format) {
    bool ok = true;
    nlohmann::json out = nlohmann::json::array();
    for (const auto& k : atlas) {
        const auto violations = validate_record(k);
        ok = ok && violations.empty();
        if (format == "json") {
            out.push_back({{"name", k.name}, {"violations", violations}});
        } else if (violations.empty()) {
            std::cout << k.name << ": ok\n";
        } else {
            for (const auto& v : violations) std::cout << k.name << ": " << v << "\n";
        }
    }
    if (format == "json") std::cout << out.dump(2) << "\n";
    return ok ? 0 : 4;
}

int cmd_alexander(const KnotRecord& k, const std::vector<CableParams>& stages,
                  const std::string& format) {
    LaurentPoly d = k.alexander;
    for (const CableParams& cp : stages) d = cable_alexander(d, cp);
    if (format == "json") {
        nlohmann::json j;
        j["knot"] = k.name;
        j["stages"] = nlohmann::json::array();
        for (const auto& cp : stages) j["stages"].push_back({cp.p, cp.q});
        j["alexander"] = d.to_json();
        j["rendered"] = d.to_string();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << d.to_string() << "\n";
    }
    return 0;
}

int cmd_tau(const KnotRecord& k, const std::vector<CableParams>& stages,
            const std::string& format) {
    if (stages.empty()) throw std::invalid_argument("tau needs --cable or --iterate");
    const KnotRecord companion =
        apply_certified_cables(k, {stages.begin(), stages.end() - 1});
    const CableParams last = stages.back();
    const int n = cable_n_or_refuse(last);
    const TauInterval ti = tau_cable_interval(companion, last.p, n);
    if (format == "json") {
        nlohmann::json j{{"companion", companion.name},
                         {"p", ti.p},
                         {"n", ti.n},
                         {"lower", ti.lower},
                         {"upper", ti.upper},
                         {"reason", to_string(ti.reason)}};
        j["exact"] = ti.exact ? nlohmann::json(*ti.exact) : nlohmann::json();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "tau of the (" << last.p << "," << last.q << ") cable of " << companion.name
                  << ": candidates [" << ti.lower << ", " << ti.upper << "]";
        if (ti.exact)
            std::cout << ", exact " << *ti.exact << " (" << to_string(ti.reason) << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_hfk(const KnotRecord& k, const std::vector<CableParams>& stages,
            std::optional<int> window, const std::string& format) {
    if (stages.empty()) throw std::invalid_argument("hfk needs --cable or --iterate");
    const KnotRecord companion =
        apply_certified_cables(k, {stages.begin(), stages.end() - 1});
    const CableParams last = stages.back();
    const int n = cable_n_or_refuse(last);
    if (!window) {
        if (!cable_lspace_certificate(companion, last).certified)
            throw std::domain_error(
                "stabilized table needs a certified cable; pass --window to assert a "
                "validity window yourself");
        window = n - std::max(companion.genus, 1);
    }
    const auto prof = FilteredHomologyProfile::for_knot(companion);
    const StabilizedHfk stab = cable_hfk_stabilized(prof, last.p, n, *window);
    if (format == "json") {
        nlohmann::json j{{"companion", companion.name},
                         {"p", stab.p},
                         {"n", stab.n},
                         {"window_max_j", stab.window_max_j},
                         {"top_alexander", stab.top_alexander},
                         {"min_asserted_alexander", stab.min_asserted_alexander},
                         {"table", stab.table.to_json()}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "stabilized knot Floer table of the (" << last.p << "," << last.q
              << ") cable of " << companion.name << "\n";
    std::cout << "top Alexander grading " << stab.top_alexander << ", asserted down to "
              << stab.min_asserted_alexander << " (window j <= " << stab.window_max_j << ")\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"alexander", "maslov", "rank"});
    for (auto it = stab.table.ranks.rbegin(); it != stab.table.ranks.rend(); ++it)
        rows.push_back({std::to_string(it->first.first), std::to_string(it->first.second),
                        std::to_string(it->second)});
    print_aligned(rows);
    return 0;
}

int cmd_surgery(const KnotRecord& k, const std::vector<CableParams>& stages,
                const std::string& slope_text, const std::string& format) {
    if (!slope_text.empty() && !stages.empty())
        throw std::invalid_argument("surgery takes either --slope or --cable, not both");
    if (!slope_text.empty()) {
        const SurgeryRankReport r = surgery_rank_report(k, parse_slope(slope_text));
        if (format == "json") {
            std::cout << r.to_json().dump(2) << "\n";
        } else {
            std::cout << r.slope.to_string() << " surgery on " << r.knot << ": rank " << r.rank
                      << (r.lspace_surgery ? " (L-space)" : " (not an L-space)")
                      << ", threshold " << r.threshold.to_string() << "\n";
        }
        return 0;
    }
    if (stages.empty()) throw std::invalid_argument("surgery needs --slope or --cable");
    const KnotRecord companion =
        apply_certified_cables(k, {stages.begin(), stages.end() - 1});
    const CableSurgeryDecomposition d = cable_surgery_decomposition(companion, stages.back());
    if (format == "json") {
        std::cout << d.to_json().dump(2) << "\n";
    } else {
        std::cout << d.surgery_coefficient << " surgery on the (" << d.p << "," << d.q
                  << ") cable of " << companion.name << ": rank " << d.rank_direct << " vs "
                  << d.p << " x rank(" << d.q << "/" << d.p << " surgery) = "
                  << d.rank_decomposed << (d.match ? " (match)" : " (MISMATCH)") << "\n";
    }
    return d.match ? 0 : 4;
}

int cmd_obstruct(const KnotRecord& k, const std::vector<CableParams>& stages,
                 const std::string& format) {
    if (stages.empty()) throw std::invalid_argument("obstruct needs --cable or --iterate");
    const KnotRecord companion =
        apply_certified_cables(k, {stages.begin(), stages.end() - 1});
    const CableParams last = stages.back();
    const int n = cable_n_or_refuse(last);
    std::vector<ObstructionReport> reports = {
        quasipositive_cable_obstruction(companion, last.p, n),
        complex_curve_cable_obstruction(companion, last.p, n),
        cable_tau_genus_obstruction(companion, last.p, n),
        cable_lspace_surgery_obstruction(companion, last.p, n),
        positive_cable_obstruction(companion, last.p, n)};
    std::string fiber;
    try {
        fiber = fiber_surface_complex_criterion(companion, last)
                    ? "fiber surface isotopic to a complex curve piece"
                    : "fiber criterion not met";
    } catch (const std::domain_error&) {
        fiber = "fiber flags unknown";
    }
    if (format == "json") {
        nlohmann::json j;
        j["companion"] = companion.name;
        j["reports"] = nlohmann::json::array();
        for (const auto& r : reports) j["reports"].push_back(r.to_json());
        j["fiber_criterion"] = fiber;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"property", "verdict", "reason"});
    for (const auto& r : reports) rows.push_back({r.property, to_string(r.verdict), r.reason});
    print_aligned(rows);
    std::cout << "fiber criterion: " << fiber << "\n";
    return 0;
}

int cmd_gradings(int p, int n, int g, const std::string& format) {
    const GradingTable t = exterior_grading_table(p, n, g);
    const auto violations = check_grading_table_laws(t);
    if (format == "json") {
        nlohmann::json j = t.to_json();
        j["laws_satisfied"] = violations.empty();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << t.render();
        std::cout << "step laws: " << (violations.empty() ? "satisfied" : violations.front())
                  << "\n";
    }
    return violations.empty() ? 0 : 4;
}

int cmd_verify(const std::string& suite, const std::string& mutate, const std::string& format) {
    VerifyOptions opts;
    if (mutate == "staircase") opts.staircase = corrupted_staircase;
    std::vector<CriterionResult> results;
    if (suite == "all") {
        results = run_acceptance_suite(opts);
    } else {
        const long long id = parse_int(suite, "suite must be all or a criterion id 1..10");
        if (id < 1 || id > 10) throw std::invalid_argument("criterion id must be 1..10");
        results.push_back(run_criterion(static_cast<int>(id), opts));
    }
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : results)
            j.push_back({{"id", r.id},
                         {"name", r.name},
                         {"passed", r.passed},
                         {"detail", r.detail}});
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : results)
            std::printf("criterion %2d: %s  %s (%s)\n", r.id, r.passed ? "PASS" : "FAIL",
                        r.name.c_str(), r.detail.c_str());
        std::printf("verification: %s\n", all ? "PASS" : "FAIL");
    }
    return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heegaard Floer invariants of cable knots"};
    app.require_subcommand(1);

    std::string table_path, format = "table";
    app.add_option("--table", table_path, "JSON knot table merged over the builtin atlas")
        ->check(CLI::ExistingFile);
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json"}));

    std::string knot_name, cable_text, iterate_text, slope_text;
    std::optional<int> window;
    int gp = 2, gn = 1, gg = 0;
    std::string suite = "all", mutate;

    CLI::App* knots = app.add_subcommand("knots", "atlas queries");
    knots->fallthrough();
    CLI::App* knots_list = knots->add_subcommand("list", "list known records");
    knots_list->fallthrough();
    CLI::App* knots_validate = knots->add_subcommand("validate", "re-check record invariants");
    knots_validate->fallthrough();
    knots->require_subcommand(1);

    auto add_knot_opts = [&](CLI::App* sub, bool need_knot) {
        sub->fallthrough();
        auto* k = sub->add_option("--knot", knot_name, "record name, trefoil, or T(p,q)");
        if (need_knot) k->required();
        sub->add_option("--cable", cable_text, "single cable stage p,q");
        sub->add_option("--iterate", iterate_text, "cable stages p1,q1;p2,q2 applied in order");
    };

    CLI::App* alexander = app.add_subcommand("alexander", "cable polynomial");
    add_knot_opts(alexander, true);
    CLI::App* tau = app.add_subcommand("tau", "tau band of a cable");
    add_knot_opts(tau, true);
    CLI::App* hfk = app.add_subcommand("hfk", "stabilized knot Floer table of a cable");
    add_knot_opts(hfk, true);
    hfk->add_option("--window", window, "asserted validity window (max j)");
    CLI::App* surgery = app.add_subcommand("surgery", "surgery rank or pq-surgery split");
    add_knot_opts(surgery, true);
    surgery->add_option("--slope", slope_text, "surgery slope q or q/p");
    CLI::App* obstruct = app.add_subcommand("obstruct", "positivity obstructions for a cable");
    add_knot_opts(obstruct, true);

    CLI::App* gradings = app.add_subcommand("gradings", "exterior grading table");
    gradings->fallthrough();
    gradings->add_option("--p", gp, "strand count p >= 2")->required();
    gradings->add_option("--n", gn, "cable parameter n >= 1")->required();
    gradings->add_option("--genus", gg, "companion genus g >= 0")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->fallthrough();
    verify->add_option("--suite", suite, "all or a criterion id 1..10");
    verify->add_option("--mutate", mutate, "corrupt a component before verifying")
        ->check(CLI::IsMember({"staircase"}))
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::vector<CableParams> stages;
        if (!cable_text.empty() && !iterate_text.empty())
            throw std::invalid_argument("--cable and --iterate are mutually exclusive");
        if (!cable_text.empty()) stages.push_back(parse_cable(cable_text));
        if (!iterate_text.empty()) stages = parse_iterate(iterate_text);

        if (app.got_subcommand(knots)) {
            const auto atlas = load_atlas(table_path);
            if (knots->got_subcommand(knots_list)) return cmd_knots_list(atlas, format);
            return cmd_knots_validate(atlas, format);
        }
        if (app.got_subcommand(gradings)) return cmd_gradings(gp, gn, gg, format);
        if (app.got_subcommand(verify)) return cmd_verify(suite, mutate, format);

        const auto atlas = load_atlas(table_path);
        const KnotRecord k = resolve_knot(atlas, knot_name);
        if (app.got_subcommand(alexander)) return cmd_alexander(k, stages, format);
        if (app.got_subcommand(tau)) return cmd_tau(k, stages, format);
        if (app.got_subcommand(hfk)) return cmd_hfk(k, stages, window, format);
        if (app.got_subcommand(surgery)) return cmd_surgery(k, stages, slope_text, format);
        if (app.got_subcommand(obstruct)) return cmd_obstruct(k, stages, format);
        throw std::logic_error("unhandled subcommand");
    } catch (const std::domain_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::overflow_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::length_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
