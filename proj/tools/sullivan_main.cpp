// Command-line driver: construct the built-in Sullivan models, compute
// Betti tables, run elimination cascades, and execute the full
// verification pipeline.
//
// Exit codes: 0 success, 1 verification/validation failure, 2 usage error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sullivan/sullivan.hpp"

namespace {

using namespace sullivan;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

FreeCdga builtin_model(const std::string& name, int n) {
    if (name == "cpn") {
        if (n < 1)
            throw UsageError("model 'cpn' requires n >= 1");
        return model_cpn(n);
    }
    if (n < 2)
        throw UsageError("model '" + name + "' requires n >= 2");
    if (name == "ptangent")
        return projectivized_tangent_model(n);
    if (name == "flag-min")
        return minimal_flag_model(n);
    if (name == "flag-big")
        return homogeneous_space_model(BlockPartition{{1, 1, n - 1}});
    throw UsageError("unknown model '" + name +
                     "' (expected cpn, ptangent, flag-min, or flag-big)");
}

std::map<std::string, std::string> builtin_metadata(const std::string& name, int n) {
    return {{"construction", name}, {"n", std::to_string(n)}};
}

void print_model_text(const FreeCdga& c, std::ostream& out) {
    out << "generators:\n";
    for (const auto& g : c.generators())
        out << "  " << g.name << " : degree " << g.degree << "\n";
    out << "differentials:\n";
    for (const auto& g : c.generators())
        out << "  d(" << g.name << ") = " << print_element(c.differential(g.name)) << "\n";
}

struct ModelSource {
    std::string name;
    std::optional<int> n;
    std::string file;

    FreeCdga load() const {
        if (!file.empty())
            return load_model_file(file);
        if (name.empty())
            throw UsageError("specify a built-in model name or --file");
        if (!n)
            throw UsageError("built-in models require --n");
        return builtin_model(name, *n);
    }
};

std::pair<int, int> parse_n_range(const std::string& text) {
    auto parse_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            int value = std::stoi(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return value;
        } catch (const std::exception&) {
            throw UsageError("invalid rank '" + s + "' in --n");
        }
    };
    auto sep = text.find("..");
    if (sep == std::string::npos) {
        int n = parse_int(text);
        return {n, n};
    }
    int lo = parse_int(text.substr(0, sep));
    int hi = parse_int(text.substr(sep + 2));
    if (lo > hi)
        throw UsageError("empty rank range '" + text + "'");
    return {lo, hi};
}

int cmd_model(const std::string& name, int n, const std::string& format) {
    FreeCdga c = builtin_model(name, n);
    if (format == "structured")
        std::cout << document_to_json(save_model(c, builtin_metadata(name, n))).dump(2)
                  << "\n";
    else
        print_model_text(c, std::cout);
    return kExitOk;
}

int cmd_betti(const ModelSource& source, int max_degree, const std::string& format) {
    if (max_degree < 0)
        throw UsageError("--max-degree must be >= 0");
    FreeCdga c = source.load();
    BettiTable table = betti(c, max_degree);
    if (format == "structured") {
        nlohmann::json j = nlohmann::json::object();
        for (int d = 0; d <= table.up_to; ++d)
            j[std::to_string(d)] = table.at(d);
        std::cout << j.dump(2) << "\n";
    } else {
        for (int d = 0; d <= table.up_to; ++d)
            std::cout << (d > 0 ? "," : "") << table.at(d);
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& range_text, int max_degree, const std::string& format) {
    auto [lo, hi] = parse_n_range(range_text);
    if (lo < 2)
        throw UsageError("verification requires n >= 2 (got " + std::to_string(lo) + ")");
    for (int n = lo; n <= hi; ++n) {
        int bound = max_degree < 0 ? 4 * n : max_degree;
        if (bound < 4 * n - 2)
            throw UsageError("--max-degree " + std::to_string(bound) +
                             " is too low for the top-degree checks at n = " +
                             std::to_string(n) + " (need at least " +
                             std::to_string(4 * n - 2) + ")");
    }

    bool all_pass = true;
    nlohmann::json reports = nlohmann::json::array();
    for (int n = lo; n <= hi; ++n) {
        VerificationReport report = run_verification(n, max_degree < 0 ? 4 * n : max_degree);
        all_pass = all_pass && report.pass();
        if (format == "structured") {
            reports.push_back(report_to_json(report));
        } else {
            std::cout << "n=" << report.n << " (max degree " << report.max_degree << ")\n";
            for (const auto& check : report.checks) {
                std::printf("  %-26s %s  (%.1f ms)\n", check.name.c_str(),
                            check.pass ? "pass" : "FAIL", check.milliseconds);
                if (!check.pass)
                    std::cout << "    " << check.detail << "\n";
            }
        }
        if (!report.pass() && format != "structured") {
            for (const auto& check : report.checks)
                if (!check.pass) {
                    std::cout << "first failing check: " << check.name << "\n";
                    break;
                }
        }
    }
    if (format == "structured") {
        nlohmann::json j;
        j["pass"] = all_pass;
        j["reports"] = std::move(reports);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "overall: " << (all_pass ? "PASS" : "FAIL") << "\n";
    }
    return all_pass ? kExitOk : kExitFailure;
}

int cmd_reduce(const ModelSource& source, std::optional<int> max_steps,
               const std::string& format) {
    FreeCdga c = source.load();
    MinimizeResult result = minimize(c, max_steps);
    if (format == "structured") {
        nlohmann::json j;
        j["steps"] = nlohmann::json::array();
        for (const auto& step : result.steps)
            j["steps"].push_back({{"odd", step.killed_odd.name},
                                  {"even", step.killed_even.name},
                                  {"substitution", print_element(step.substitution)}});
        j["final"] = document_to_json(save_model(result.model));
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < result.steps.size(); ++i) {
            const auto& step = result.steps[i];
            std::cout << "step " << i + 1 << ": eliminate (" << step.killed_odd.name << ", "
                      << step.killed_even.name << "), substitute " << step.killed_even.name
                      << " = " << print_element(step.substitution) << "\n";
        }
        if (result.steps.empty())
            std::cout << "no contractible pairs; model is already minimal\n";
        std::cout << "final model:\n";
        print_model_text(result.model, std::cout);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sullivan-model engine for the projectivized tangent bundle of CP^n "
                 "and the flag manifold U(n+1)/U(1)xU(1)xU(n-1)"};
    app.require_subcommand(1);

    std::string format = "text";

    auto* model_cmd = app.add_subcommand("model", "print a built-in model");
    std::string model_name;
    int model_n = 0;
    std::string model_format = "text";
    model_cmd->add_option("name", model_name, "cpn | ptangent | flag-min | flag-big")
        ->required();
    model_cmd->add_option("--n", model_n, "rank parameter")->required();
    model_cmd->add_option("--format", model_format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* betti_cmd = app.add_subcommand("betti", "print a Betti table");
    ModelSource betti_source;
    std::string betti_name;
    int betti_n = 0;
    int betti_max_degree = -1;
    std::string betti_format = "text";
    betti_cmd->add_option("name", betti_name, "built-in model name");
    auto* betti_n_opt = betti_cmd->add_option("--n", betti_n, "rank parameter");
    betti_cmd->add_option("--file", betti_source.file, "model document path");
    betti_cmd->add_option("--max-degree", betti_max_degree, "top degree to compute")
        ->required();
    betti_cmd->add_option("--format", betti_format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* verify_cmd = app.add_subcommand("verify", "run the verification pipeline");
    std::string verify_range;
    int verify_max_degree = -1;
    std::string verify_format = "text";
    verify_cmd->add_option("--n", verify_range, "rank or inclusive range, e.g. 2..5")
        ->required();
    verify_cmd->add_option("--max-degree", verify_max_degree,
                           "override the default bound of 4n");
    verify_cmd->add_option("--format", verify_format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* reduce_cmd = app.add_subcommand("reduce", "run the elimination cascade");
    ModelSource reduce_source;
    std::string reduce_name;
    int reduce_n = 0;
    int reduce_max_steps = -1;
    std::string reduce_format = "text";
    reduce_cmd->add_option("name", reduce_name, "built-in model name");
    auto* reduce_n_opt = reduce_cmd->add_option("--n", reduce_n, "rank parameter");
    reduce_cmd->add_option("--file", reduce_source.file, "model document path");
    reduce_cmd->add_option("--max-steps", reduce_max_steps, "elimination budget");
    reduce_cmd->add_option("--format", reduce_format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*model_cmd)
            return cmd_model(model_name, model_n, model_format);
        if (*betti_cmd) {
            betti_source.name = betti_name;
            if (betti_n_opt->count() > 0)
                betti_source.n = betti_n;
            return cmd_betti(betti_source, betti_max_degree, betti_format);
        }
        if (*verify_cmd)
            return cmd_verify(verify_range, verify_max_degree, verify_format);
        if (*reduce_cmd) {
            reduce_source.name = reduce_name;
            if (reduce_n_opt->count() > 0)
                reduce_source.n = reduce_n;
            std::optional<int> max_steps;
            if (reduce_max_steps >= 0)
                max_steps = reduce_max_steps;
            return cmd_reduce(reduce_source, max_steps, reduce_format);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
