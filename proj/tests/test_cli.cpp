// End-to-end tests for the command-line tool: exit-code contract, JSON
// output shapes, knot-table loading, and the verification smoke test.
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  ///< stdout and stderr interleaved

    bool contains(const std::string& needle) const {
        return output.find(needle) != std::string::npos;
    }
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CABLETAU_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), out};
}

nlohmann::json run_json(const std::string& args) {
    const CliResult r = run_cli(args + " --format json");
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    return nlohmann::json::parse(r.output);
}

std::string write_temp_table(const nlohmann::json& table, const std::string& name) {
    const std::string path = "/tmp/cabletau_cli_" + name + ".json";
    std::ofstream out(path);
    out << table.dump(2);
    REQUIRE(out.good());
    return path;
}

}  // namespace

TEST_CASE("knots subcommand lists and validates the atlas", "[cli]") {
    const CliResult list = run_cli("knots list");
    CHECK(list.exit_code == 0);
    CHECK(list.contains("right-trefoil"));
    CHECK(list.contains("figure-eight"));

    const nlohmann::json j = run_json("knots list");
    REQUIRE(j.contains("knots"));
    REQUIRE(j["knots"].size() == 4);
    CHECK(j["knots"][0]["name"] == "unknot");
    CHECK(j["knots"][0]["genus"] == 0);

    const CliResult val = run_cli("knots validate");
    CHECK(val.exit_code == 0);
    CHECK(val.contains("right-trefoil: ok"));
}

TEST_CASE("alexander subcommand prints cable polynomials", "[cli]") {
    const CliResult r = run_cli("alexander --knot trefoil --cable 2,3");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "t^3 - t^2 + 1 - t^-2 + t^-3\n");

    // The torus-knot resolver gives the same polynomial without cabling.
    const CliResult torus = run_cli("alexander --knot \"T(3,4)\"");
    CHECK(torus.exit_code == 0);
    CHECK(torus.output == r.output);

    // Iterated cabling needs no certificates on the polynomial level; the
    // top degree equals the iterated cable genus 2*3 + (13-1)/2 = 12.
    const nlohmann::json j = run_json("alexander --knot trefoil --iterate \"2,3;2,13\"");
    CHECK(j["alexander"][0][0] == 12);
    CHECK(j["alexander"][0][1] == 1);
    CHECK(j["stages"].size() == 2);
}

TEST_CASE("tau subcommand reports the candidate band and exact values", "[cli]") {
    const nlohmann::json exact = run_json("tau --knot trefoil --cable 2,7");
    CHECK(exact["lower"] == 5);
    CHECK(exact["upper"] == 6);
    CHECK(exact["exact"] == 5);
    CHECK(exact["reason"] == "tau-equals-genus");

    const nlohmann::json open = run_json("tau --knot figure-eight --cable 2,5");
    CHECK(open["lower"] == 2);
    CHECK(open["upper"] == 3);
    CHECK(open["exact"].is_null());
    CHECK(open["reason"] == "undetermined");

    const nlohmann::json left = run_json("tau --knot left-trefoil --cable 2,1");
    CHECK(left["exact"] == -1);
    CHECK(left["reason"] == "tau-equals-minus-genus");

    // Iterated stages thread through L-space cable certificates.
    const nlohmann::json iter = run_json("tau --knot trefoil --iterate \"2,7;2,19\"");
    CHECK(iter["exact"] == 19);

    const CliResult prefix = run_cli("tau --knot trefoil --iterate \"2,1;2,3\"");
    CHECK(prefix.exit_code == 3);
    CHECK(prefix.contains("not certified"));
}

TEST_CASE("tau subcommand rejects malformed cable parameters", "[cli]") {
    CHECK(run_cli("tau --knot trefoil --cable 2,4").exit_code == 2);
    CHECK(run_cli("tau --knot trefoil --cable 3,5").exit_code == 2);
    CHECK(run_cli("tau --knot trefoil --cable a,b").exit_code == 2);
    CHECK(run_cli("tau --knot trefoil").exit_code == 2);
    CHECK(run_cli("tau --knot trefoil --cable 2,3 --iterate \"2,3\"").exit_code == 2);
    CHECK(run_cli("tau --knot nosuch --cable 2,3").exit_code == 2);
}

TEST_CASE("hfk subcommand prints the stabilized table and guards the window", "[cli]") {
    const nlohmann::json j = run_json("hfk --knot trefoil --cable 2,9");
    CHECK(j["top_alexander"] == 6);
    CHECK(j["window_max_j"] == 3);
    CHECK(j["min_asserted_alexander"] == -1);
    bool saw_top = false;
    for (const auto& cell : j["table"])
        if (cell["alexander"] == 6 && cell["maslov"] == 0 && cell["rank"] == 1) saw_top = true;
    CHECK(saw_top);

    // Uncertified final stage: refused without an explicit window.
    const CliResult refused = run_cli("hfk --knot trefoil --iterate \"2,7;2,17\"");
    CHECK(refused.exit_code == 3);
    CHECK(refused.contains("--window"));
    CHECK(run_cli("hfk --knot trefoil --iterate \"2,7;2,17\" --window 1").exit_code == 0);

    // Non-L-space companions have no staircase profile at all.
    CHECK(run_cli("hfk --knot figure-eight --cable 2,9").exit_code == 3);
    CHECK(run_cli("hfk --knot figure-eight --cable 2,9 --window 2").exit_code == 3);
}

TEST_CASE("surgery subcommand reports ranks and the pq decomposition", "[cli]") {
    const nlohmann::json lens = run_json("surgery --knot trefoil --slope 5");
    CHECK(lens["rank"] == 5);
    CHECK(lens["lspace_surgery"] == true);

    const nlohmann::json small = run_json("surgery --knot trefoil --slope 1/2");
    CHECK(small["rank"] == 3);
    CHECK(small["lspace_surgery"] == false);
    CHECK(small["threshold"] == "1");

    const nlohmann::json dec = run_json("surgery --knot trefoil --cable 2,7");
    CHECK(dec["surgery_coefficient"] == 14);
    CHECK(dec["rank_direct"] == 14);
    CHECK(dec["rank_decomposed"] == 14);
    CHECK(dec["match"] == true);

    CHECK(run_cli("surgery --knot trefoil --slope -1").exit_code == 3);
    CHECK(run_cli("surgery --knot trefoil --slope 1/0").exit_code == 2);
    CHECK(run_cli("surgery --knot trefoil").exit_code == 2);
    CHECK(run_cli("surgery --knot trefoil --slope 5 --cable 2,7").exit_code == 2);
    CHECK(run_cli("surgery --knot left-trefoil --slope 5").exit_code == 3);
}

TEST_CASE("obstruct subcommand aggregates the positivity reports", "[cli]") {
    const nlohmann::json left = run_json("obstruct --knot left-trefoil --cable 2,1");
    REQUIRE(left["reports"].size() == 5);
    for (const auto& r : left["reports"]) CHECK(r["verdict"] == "obstructed");
    CHECK(left["fiber_criterion"] == "fiber criterion not met");

    const nlohmann::json right = run_json("obstruct --knot trefoil --cable 2,7");
    for (const auto& r : right["reports"]) CHECK(r["verdict"] == "not obstructed");
    CHECK(right["fiber_criterion"] == "fiber surface isotopic to a complex curve piece");

    const CliResult text = run_cli("obstruct --knot left-trefoil --cable 2,1");
    CHECK(text.exit_code == 0);
    CHECK(text.contains("quasipositive cable"));
    CHECK(text.contains("obstructed"));
}

TEST_CASE("gradings subcommand renders the exterior table", "[cli]") {
    const CliResult text = run_cli("gradings --p 2 --n 1 --genus 1");
    CHECK(text.exit_code == 0);
    CHECK(text.contains("x_0"));
    CHECK(text.contains("step laws: satisfied"));

    const nlohmann::json j = run_json("gradings --p 2 --n 1 --genus 1");
    CHECK(j["laws_satisfied"] == true);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["entries"][0] == nlohmann::json::array({1, 3}));

    CHECK(run_cli("gradings --p 1 --n 1 --genus 1").exit_code == 2);
    CHECK(run_cli("gradings --p 2 --n 0 --genus 1").exit_code == 2);
}

TEST_CASE("table option merges user records over the atlas", "[cli]") {
    const nlohmann::json table = {
        {"knots",
         {{{"name", "custom-T25"},
           {"genus", 2},
           {"tau", 2},
           {"alexander", {{2, 1}, {1, -1}, {0, 1}, {-1, -1}, {-2, 1}}},
           {"lspace_knot", true},
           {"pos_member", true},
           {"fibered", true},
           {"complex_fiber", true}},
          {{"name", "right-trefoil"},
           {"genus", 2},
           {"tau", 2},
           {"alexander", {{2, 1}, {1, -1}, {0, 1}, {-1, -1}, {-2, 1}}},
           {"lspace_knot", true},
           {"pos_member", true},
           {"fibered", true},
           {"complex_fiber", true}}}}};
    const std::string path = write_temp_table(table, "merge");

    const nlohmann::json listed = run_json("knots list --table " + path);
    REQUIRE(listed["knots"].size() == 5);

    const nlohmann::json cabled = run_json("tau --table " + path + " --knot custom-T25 --cable 2,13");
    CHECK(cabled["exact"] == 10);

    // A user record with a builtin name overrides the builtin one.
    bool overridden = false;
    for (const auto& k : listed["knots"])
        if (k["name"] == "right-trefoil" && k["genus"] == 2) overridden = true;
    CHECK(overridden);

    const std::string bad = write_temp_table({{"knots", "not-an-array"}}, "bad");
    CHECK(run_cli("knots list --table " + bad).exit_code == 2);
    CHECK(run_cli("knots list --table /nonexistent.json").exit_code == 2);
}

TEST_CASE("verify subcommand passes clean and fails under mutation", "[cli]") {
    const CliResult one = run_cli("verify --suite 1");
    CHECK(one.exit_code == 0);
    CHECK(one.contains("criterion  1: PASS"));
    CHECK(one.contains("verification: PASS"));

    const nlohmann::json j = run_json("verify --suite 3");
    REQUIRE(j.size() == 1);
    CHECK(j[0]["id"] == 3);
    CHECK(j[0]["passed"] == true);

    // Seeded corruption of the staircase recursion must be caught.
    const CliResult mutated = run_cli("verify --suite 3 --mutate staircase");
    CHECK(mutated.exit_code == 4);
    CHECK(mutated.contains("FAIL"));
    CHECK(mutated.contains("bottom Maslov"));

    CHECK(run_cli("verify --suite 11").exit_code == 2);
    CHECK(run_cli("verify --suite abc").exit_code == 2);
    CHECK(run_cli("verify --mutate nosuch").exit_code == 2);

    // The mutation hook is an internal debugging switch, not advertised help.
    const CliResult help = run_cli("verify --help");
    CHECK(help.exit_code == 0);
    CHECK_FALSE(help.contains("mutate"));
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("nosuchcommand").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("knots").exit_code == 2);
    CHECK(run_cli("alexander").exit_code == 2);
    CHECK(run_cli("tau --knot trefoil --format yaml").exit_code == 2);
}

TEST_CASE("full verification run exits cleanly end to end", "[cli][acceptance]") {
    const CliResult all = run_cli("verify");
    INFO(all.output);
    CHECK(all.exit_code == 0);
    CHECK(all.contains("criterion 10: PASS"));
    CHECK(all.contains("verification: PASS"));

    const CliResult corrupted = run_cli("verify --mutate staircase");
    INFO(corrupted.output);
    CHECK(corrupted.exit_code == 4);
    CHECK(corrupted.contains("criterion  3: FAIL"));
    CHECK(corrupted.contains("verification: FAIL"));
}
