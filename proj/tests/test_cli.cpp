// End-to-end tests for the command-line tool: documented command examples,
// exit codes, output formats, and the text/JSON agreement of decompositions.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "meroq/decompose.hpp"
#include "meroq/germ.hpp"
#include "meroq/json_io.hpp"
#include "meroq/parse.hpp"

#ifndef MEROQ_CLI_PATH
#error "MEROQ_CLI_PATH must point at the built command-line binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with `args` appended to the binary path; stderr is dropped so
// diagnostics can never leak into the captured primary stream.
RunResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    std::string cmd = std::string(MEROQ_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!stdin_text.empty()) {
        std::string quoted = "'";
        for (char c : stdin_text)
            quoted += (c == '\'') ? std::string("'\\''") : std::string(1, c);
        quoted += "'";
        cmd = "printf %s " + quoted + " | " + cmd;
    }
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

}  // namespace

using namespace meroq;

TEST_CASE("decompose command matches the documented examples") {
    RunResult r = run_cli("decompose -k 2 \"z1/(z1+z2)\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "holomorphic: 1/2\npolar: [1/2*z1 - 1/2*z2]/[(z1 + z2)^1]\n");

    r = run_cli("decompose -k 1 \"1/z1\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "holomorphic: 0\npolar: [1]/[(z1)^1]\n");

    r = run_cli("decompose -k 2 --poles F \"1/(z1-z2)\"");
    CHECK(r.exit_code == 4);
    CHECK(r.out.empty());

    // Purely holomorphic input: no polar lines at all.
    r = run_cli("decompose -k 2 \"z1^2+1/2\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "holomorphic: z1^2 + 1/2\n");
}

TEST_CASE("eval command matches the documented examples") {
    CHECK(trimmed(run_cli("eval --scheme ms -k 2 \"z1/(z1+z2)\"").out) == "1/2");
    CHECK(trimmed(run_cli("eval --scheme speer -k 2 \"(z1-z2)^2/(z1+z2)^2\"").out) == "1");
    CHECK(trimmed(run_cli("eval --scheme speer-sigma --sigma 2,1 -k 2 \"z1/(z1+z2)\"").out) ==
          "0");
    CHECK(trimmed(run_cli("eval --scheme speer-sigma --sigma 1,2 -k 2 \"z1/(z1+z2)\"").out) ==
          "1");
    // The permutation average of the two branches above.
    CHECK(trimmed(run_cli("eval --scheme speer -k 2 \"z1/(z1+z2)\"").out) == "1/2");
}

TEST_CASE("dep and orth commands match the documented examples") {
    CHECK(trimmed(run_cli("dep -k 2 \"z1-z2\"").out) == "[[1,-1]]");
    CHECK(trimmed(run_cli("dep -k 2 \"z1/(z1+z2)\"").out) == "[[1,0],[0,1]]");
    CHECK(trimmed(run_cli("orth -k 2 \"z1-z2\" \"1/(z1+z2)\"").out) == "true");
    CHECK(trimmed(run_cli("orth -k 2 \"z1\" \"1/z1\"").out) == "false");
}

TEST_CASE("validate-poles reports membership without failing the process") {
    RunResult r = run_cli("validate-poles -k 2 --poles C \"1/(z1*(z1+z2))\"");
    CHECK(r.exit_code == 0);
    CHECK(trimmed(r.out) == "true");

    r = run_cli("validate-poles -k 2 --poles F \"1/(z1-z2)\"");
    CHECK(r.exit_code == 0);
    CHECK(trimmed(r.out) == "false");

    CHECK(trimmed(run_cli("validate-poles -k 2 --poles free \"1/(z1-z2)\"").out) == "true");
}

TEST_CASE("exit codes are stable across the error taxonomy") {
    CHECK(run_cli("decompose -k 2 \"z1/(\"").exit_code == 2);
    CHECK(run_cli("eval --scheme ms -k 2 \"1/(z1*z2+1)\"").exit_code == 3);
    CHECK(run_cli("eval --scheme ms -k 2 \"1/(z1-z1)\"").exit_code == 2);
    CHECK(run_cli("decompose -k 2 --poles F \"1/(z1-z2)\"").exit_code == 4);
    CHECK(run_cli("eval --scheme speer -k 7 \"z1/(z1+z7)\"").exit_code == 5);
    CHECK(run_cli("eval --scheme speer --budget 2 -k 3 \"1/z1\"").exit_code == 5);
    // Raising the budget clears the same invocation.
    CHECK(run_cli("eval --scheme speer --budget 7 -k 7 \"z1/(z1+z7)\"").exit_code == 0);
    // Usage problems (unknown command, missing -k, bad sigma) are nonzero but
    // never collide with the domain codes 2..5.
    for (const char* bad : {"nosuchcmd -k 2 \"z1\"", "decompose \"z1\"",
                            "eval --scheme speer-sigma -k 2 \"z1\"",
                            "eval --scheme speer-sigma --sigma 1,1 -k 2 \"z1\"",
                            "eval --scheme speer-sigma --sigma 3,4 -k 2 \"z1\"",
                            "eval --scheme ms --sigma 1,2 -k 2 \"z1\"",
                            "decompose -k 2 --q /nonexistent.json \"z1\""}) {
        const int code = run_cli(bad).exit_code;
        CHECK(code != 0);
        CHECK((code < 2 || code > 5));
    }
}

TEST_CASE("expression argument '-' reads standard input") {
    RunResult r = run_cli("eval --scheme ms -k 2 -", "z1/(z1+z2)");
    CHECK(r.exit_code == 0);
    CHECK(trimmed(r.out) == "1/2");

    r = run_cli("decompose -k 1 -", "1/z1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "holomorphic: 0\npolar: [1]/[(z1)^1]\n");
}

TEST_CASE("JSON decompositions follow the schema and agree with text mode") {
    const std::vector<std::pair<int, std::string>> corpus = {
        {2, "z1/(z1+z2)"},
        {1, "5+7*z1+2/z1^2-3/z1"},
        {2, "(z1-z2)^2/(z1+z2)^2"},
        {3, "1/(z1*z2*(z1+z2)) + z3"},
        {2, "z1^2+1/2"},
    };
    for (const auto& [k, expr] : corpus) {
        CAPTURE(expr);
        RunResult rj = run_cli("decompose -k " + std::to_string(k) + " --format json \"" + expr +
                               "\"");
        REQUIRE(rj.exit_code == 0);
        nlohmann::json j = nlohmann::json::parse(rj.out);
        REQUIRE(j.is_object());
        REQUIRE(j.contains("holomorphic"));
        REQUIRE(j.contains("polar"));
        REQUIRE(j.at("holomorphic").is_string());
        REQUIRE(j.at("polar").is_array());

        // Rebuild the germ from the JSON fields and compare with the parsed
        // input expression.
        Germ rebuilt = parse(j.at("holomorphic").get<std::string>(), k);
        for (const auto& entry : j.at("polar")) {
            REQUIRE(entry.at("num").is_string());
            REQUIRE(entry.at("den").is_array());
            Poly num = parse(entry.at("num").get<std::string>(), k).to_polynomial().value();
            std::vector<DenFactor> den;
            for (const auto& df : entry.at("den")) {
                VecQ coeffs;
                for (const auto& c : df.at("form")) coeffs.push_back(Rat(c.get<long>()));
                REQUIRE(static_cast<int>(coeffs.size()) == k);
                auto [form, scale] = LinearForm::normalized(coeffs);
                REQUIRE(scale == 1);  // emitted forms are canonical already
                den.push_back(DenFactor{form, df.at("power").get<int>()});
            }
            rebuilt = rebuilt + Germ::from_terms(k, {GermTerm(num, den)});
        }
        CHECK(rebuilt.equals(parse(expr, k)));

        // Text mode encodes the same decomposition: holomorphic line matches
        // the JSON field, one polar line per JSON entry.
        RunResult rt = run_cli("decompose -k " + std::to_string(k) + " \"" + expr + "\"");
        REQUIRE(rt.exit_code == 0);
        std::string expect_first = "holomorphic: " + j.at("holomorphic").get<std::string>();
        CHECK(rt.out.substr(0, expect_first.size()) == expect_first);
        size_t polar_lines = 0;
        for (size_t pos = 0; (pos = rt.out.find("polar: ", pos)) != std::string::npos; ++pos)
            ++polar_lines;
        CHECK(polar_lines == j.at("polar").size());
    }
}

TEST_CASE("decompose honors an inner-product configuration file") {
    const std::string path = "test_cli_q_block.json";
    {
        std::ofstream qf(path);
        qf << "{\"block\": [[\"2\", \"1\"], [\"1\", \"2\"]], \"beyond\": \"identity\"}";
    }
    // Under the coupled block, e1* and e2* are no longer dual-orthogonal.
    CHECK(trimmed(run_cli("orth -k 2 \"z1\" \"z2\"").out) == "true");
    CHECK(trimmed(run_cli("orth -k 2 --q " + path + " \"z1\" \"z2\"").out) == "false");

    // The projection changes with Q: against z1 the complement direction of
    // span(z1+z2) differs between the identity and the coupled block, yet the
    // reported decomposition always reconstructs the input.
    RunResult r = run_cli("decompose -k 2 --q " + path + " --format json \"z1^2/(z1+z2)\"");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("polar").size() > 0);
    std::remove(path.c_str());
}

TEST_CASE("rendered output reparses to an equal germ") {
    const std::vector<std::pair<int, std::string>> corpus = {
        {2, "z1/(z1+z2)"},
        {3, "1/(z1*z2*(z1+z2)) + z3^2/(z1+2*z2+3*z3)"},
        {1, "5+7*z1+2/z1^2-3/z1"},
        {2, "(2*z1+4*z2)/(2*z1)"},
    };
    for (const auto& [k, expr] : corpus) {
        CAPTURE(expr);
        Germ f = parse(expr, k);
        CHECK(parse(f.str(), k).equals(f));

        // The CLI's text decomposition lines are reparseable as well: the
        // holomorphic part plus the bracketed polar terms sum back to f.
        RunResult rt = run_cli("decompose -k " + std::to_string(k) + " \"" + expr + "\"");
        REQUIRE(rt.exit_code == 0);
        std::istringstream lines(rt.out);
        std::string line;
        Germ sum(k);
        while (std::getline(lines, line)) {
            if (line.rfind("holomorphic: ", 0) == 0) {
                sum = sum + parse(line.substr(13), k);
            } else {
                REQUIRE(line.rfind("polar: ", 0) == 0);
                std::string body = line.substr(7);
                // [num]/[den] -> (num)/(den)
                size_t mid = body.find("]/[");
                REQUIRE(mid != std::string::npos);
                std::string num = body.substr(1, mid - 1);
                std::string den = body.substr(mid + 3, body.size() - mid - 4);
                sum = sum + parse("(" + num + ")/(" + den + ")", k);
            }
        }
        CHECK(sum.equals(f));
    }
}
