// meroq: exact decomposition and renormalization evaluators for meromorphic
// germs with linear poles, over the rationals.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meroq/decompose.hpp"
#include "meroq/errors.hpp"
#include "meroq/evaluators.hpp"
#include "meroq/germ.hpp"
#include "meroq/json_io.hpp"
#include "meroq/parse.hpp"

namespace {

using namespace meroq;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitSyntax = 2;
constexpr int kExitNonLinearPole = 3;
constexpr int kExitPoleSet = 4;
constexpr int kExitBudget = 5;

struct CliConfig {
    int k = 0;
    std::string q_path;
    std::string format = "text";
    std::string poles = "free";
    int budget = 6;
    bool parallel = false;
};

void add_common_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("-k", cfg.k, "Ambient dimension (variables z1..zk)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--q", cfg.q_path,
                    "Inner-product configuration file (JSON); identity family if absent");
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--poles", cfg.poles, "Generating set the pole forms must belong to")
        ->check(CLI::IsMember({"free", "F", "C"}))
        ->capture_default_str();
    cmd->add_option("--budget", cfg.budget,
                    "Largest ambient dimension admitted by the permutation-averaged evaluator")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--parallel", cfg.parallel,
                  "Evaluate permutation branches of the averaged evaluator concurrently");
}

std::string read_expression(const std::string& arg) {
    if (arg != "-") return arg;
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
}

GeneratingSetTag tag_of(const std::string& poles) {
    if (poles == "F") return GeneratingSetTag::FeynmanF;
    if (poles == "C") return GeneratingSetTag::ChenC;
    return GeneratingSetTag::Free;
}

InnerProductFamily family_of(const CliConfig& cfg) {
    if (cfg.q_path.empty()) return InnerProductFamily::identity();
    return family_from_file(cfg.q_path);
}

// Parses, then enforces the tagged pole set. Throws the parse errors; returns
// nullopt on a pole-set violation after printing the diagnostic.
std::optional<Germ> parse_validated(const std::string& expr, const CliConfig& cfg) {
    Germ f = parse(expr, cfg.k);
    if (!f.validate_poles(tag_of(cfg.poles))) {
        std::cerr << "error: a denominator form is outside the '" << cfg.poles
                  << "' generating set\n";
        return std::nullopt;
    }
    return f;
}

std::vector<int> parse_sigma(const std::string& text, int k) {
    std::vector<int> sigma;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw PermutationSizeMismatch("--sigma entries must be integers: " + item);
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size())
            throw PermutationSizeMismatch("--sigma entries must be integers: " + item);
        sigma.push_back(v - 1);  // user-facing indices are 1-based
    }
    if (static_cast<int>(sigma.size()) != k)
        throw PermutationSizeMismatch("--sigma must list each of 1.." + std::to_string(k) +
                                      " exactly once");
    return sigma;
}

int cmd_decompose(const std::string& expr_arg, const CliConfig& cfg) {
    auto f = parse_validated(read_expression(expr_arg), cfg);
    if (!f) return kExitPoleSet;
    Decomposition d = decompose(*f, family_of(cfg));
    if (cfg.format == "json") {
        std::cout << decomposition_to_json(d, cfg.k).dump() << "\n";
    } else {
        std::cout << "holomorphic: " << d.holomorphic.str() << "\n";
        for (const PolarTerm& t : d.polar) std::cout << "polar: " << polar_term_text(t) << "\n";
    }
    return kExitOk;
}

int cmd_eval(const std::string& expr_arg, const std::string& scheme, const std::string& sigma_text,
             const CliConfig& cfg) {
    auto f = parse_validated(read_expression(expr_arg), cfg);
    if (!f) return kExitPoleSet;
    Rat value;
    if (scheme == "ms") {
        value = eval_ms(*f, family_of(cfg));
    } else if (scheme == "speer") {
        SpeerOptions opts;
        opts.budget = cfg.budget;
        opts.parallel = cfg.parallel;
        value = speer_f(*f, opts);
    } else {  // speer-sigma
        value = speer_sigma(*f, parse_sigma(sigma_text, cfg.k));
    }
    std::cout << rat_to_string(value) << "\n";
    return kExitOk;
}

int cmd_dep(const std::string& expr_arg, const CliConfig& cfg) {
    Germ f = parse(read_expression(expr_arg), cfg.k);
    std::cout << covector_rows_json(f.dep_subspace()).dump() << "\n";
    return kExitOk;
}

int cmd_orth(const std::string& expr1, const std::string& expr2, const CliConfig& cfg) {
    Germ f1 = parse(read_expression(expr1), cfg.k);
    Germ f2 = parse(expr2, cfg.k);
    bool result = orth_q(f1, f2, family_of(cfg));
    std::cout << (result ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& expr_arg, const CliConfig& cfg) {
    Germ f = parse(read_expression(expr_arg), cfg.k);
    bool ok = f.validate_poles(tag_of(cfg.poles));
    std::cout << (ok ? "true" : "false") << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculus for meromorphic germs with linear poles"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string expr, expr2, scheme = "ms", sigma_text;

    CLI::App* dec = app.add_subcommand("decompose",
                                       "Split a germ into holomorphic and polar parts");
    add_common_flags(dec, cfg);
    dec->add_option("expr", expr, "Expression, or - for standard input")->required();

    CLI::App* ev = app.add_subcommand("eval", "Evaluate a germ under a renormalization scheme");
    add_common_flags(ev, cfg);
    ev->add_option("--scheme", scheme, "Evaluation scheme")
        ->check(CLI::IsMember({"ms", "speer", "speer-sigma"}))
        ->capture_default_str();
    ev->add_option("--sigma", sigma_text,
                   "Permutation of 1..k as a comma-separated list (speer-sigma only)");
    ev->add_option("expr", expr, "Expression, or - for standard input")->required();

    CLI::App* dep = app.add_subcommand("dep", "Dependence subspace basis of a germ");
    add_common_flags(dep, cfg);
    dep->add_option("expr", expr, "Expression, or - for standard input")->required();

    CLI::App* orth = app.add_subcommand("orth",
                                        "Dual-orthogonality of two germs' dependence subspaces");
    add_common_flags(orth, cfg);
    orth->add_option("expr1", expr, "First expression, or - for standard input")->required();
    orth->add_option("expr2", expr2, "Second expression")->required();

    CLI::App* val = app.add_subcommand("validate-poles",
                                       "Check every pole form against the chosen generating set");
    add_common_flags(val, cfg);
    val->add_option("expr", expr, "Expression, or - for standard input")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) return cmd_decompose(expr, cfg);
        if (ev->parsed()) {
            if ((scheme == "speer-sigma") != !sigma_text.empty()) {
                std::cerr << "error: --sigma is required for --scheme speer-sigma and invalid "
                             "otherwise\n";
                return kExitOther;
            }
            return cmd_eval(expr, scheme, sigma_text, cfg);
        }
        if (dep->parsed()) return cmd_dep(expr, cfg);
        if (orth->parsed()) return cmd_orth(expr, expr2, cfg);
        if (val->parsed()) return cmd_validate(expr, cfg);
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kExitSyntax;
    } catch (const ZeroDivision& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kExitSyntax;
    } catch (const NonLinearPole& e) {
        std::cerr << "non-linear pole: " << e.what() << "\n";
        return kExitNonLinearPole;
    } catch (const DegreeBudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitOther;  // unreachable: a subcommand is required
}
