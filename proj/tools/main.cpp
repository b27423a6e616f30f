// stablefast command-line runner. Talks to the core exclusively through the
// C API in stablefast.h.

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablefast.h"

namespace {

// Exit codes: 0 ok, 2 configuration, 3 non-finite/stiffness, 4 validation
// failure, 1 anything else.
int exit_code_for(sfa_status status) {
    switch (status) {
        case SFA_OK: return 0;
        case SFA_ERR_CONFIG:
        case SFA_ERR_DOMAIN:
        case SFA_ERR_INVALID_ARG: return 2;
        case SFA_ERR_NONFINITE:
        case SFA_ERR_STIFFNESS: return 3;
        default: return 1;
    }
}

struct ExperimentHandle {
    sfa_experiment* ptr = nullptr;
    ~ExperimentHandle() { sfa_experiment_destroy(ptr); }
};

void print_validate_table(const std::string& summary_json) {
    const auto summary = nlohmann::json::parse(summary_json);
    const auto& results = summary.at("results");
    std::printf("%-28s %s\n", "check", "result");
    for (const auto& check : results.at("checks")) {
        std::printf("%-28s %s  (%s)\n",
                    check.at("name").get<std::string>().c_str(),
                    check.at("pass").get<bool>() ? "PASS" : "FAIL",
                    check.at("detail").get<std::string>().c_str());
    }
    std::printf("%d/%d checks passed\n",
                results.at("n_checks").get<int>() -
                    results.at("n_failed").get<int>(),
                results.at("n_checks").get<int>());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stablefast: Monte Carlo experiments for slow-fast SDEs "
                 "driven by alpha-stable noise"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sfa_version()));

    const std::vector<std::string> kinds = {
        "sample",    "simulate", "frozen",  "bbar",    "strong-rate",
        "weak-rate", "poisson",  "oracle",  "validate"};

    // Flags shared by all subcommands; every flag maps onto a config key and
    // overrides the config file.
    struct Options {
        std::string config;
        std::vector<std::pair<std::string, std::string>> sets;
    };
    std::map<std::string, std::shared_ptr<Options>> options;

    for (const auto& kind : kinds) {
        auto* sub = app.add_subcommand(kind, kind + " experiment");
        auto opt = std::make_shared<Options>();
        options[kind] = opt;
        sub->add_option("--config", opt->config,
                        "key=value config file (flags override it)");
        auto add_key = [sub, opt](const std::string& flag,
                                  const std::string& key,
                                  const std::string& help) {
            sub->add_option_function<std::string>(
                flag,
                [opt, key](const std::string& v) {
                    opt->sets.emplace_back(key, v);
                },
                help);
        };
        add_key("--seed", "seed", "base RNG seed");
        add_key("--workers", "workers", "worker threads (0 = all cores)");
        add_key("--out-dir", "out_dir",
                "output directory (default $STABLEFAST_OUT_DIR or .)");
        add_key("--alpha", "alpha", "stability index in (1,2)");
        if (kind != "oracle" && kind != "sample" && kind != "validate")
            add_key("--problem", "problem",
                    "test problem: linear | example | bounded");
        if (kind == "sample") {
            add_key("--dim", "dim", "dimension");
            add_key("--dt", "dt", "increment time step");
            add_key("--n-samples", "n_samples", "number of draws");
        }
        if (kind == "simulate") {
            add_key("--eps", "eps", "time-scale parameter");
            add_key("--T", "T", "horizon");
            add_key("--h-rule", "h_rule", "step divisor: h = eps/h_rule");
        }
        if (kind == "frozen") add_key("--T", "T", "horizon");
        if (kind == "bbar") {
            add_key("--x-lo", "x_lo", "table lower end");
            add_key("--x-hi", "x_hi", "table upper end");
            add_key("--n-points", "n_points", "table size");
            add_key("--T", "T", "averaging horizon");
            add_key("--burn-in", "burn_in", "burn-in time");
            add_key("--n-reps", "n_reps", "independent replicas");
        }
        if (kind == "strong-rate" || kind == "weak-rate") {
            add_key("--eps-list", "eps_list",
                    "comma list or range like 2^-3..2^-8");
            add_key("--n-paths", "n_paths", "Monte Carlo paths per eps");
            add_key("--h-rule", "h_rule", "step divisor: h = eps/h_rule");
            add_key("--n-bootstrap", "n_bootstrap", "bootstrap resamples");
        }
        if (kind == "strong-rate") {
            add_key("--p", "p", "moment exponent in [1,alpha)");
            add_key("--T", "T", "horizon");
            add_key("--bbar-table", "bbar_table", "CSV table for bbar");
        }
        if (kind == "weak-rate") {
            add_key("--t-eval", "t_eval", "evaluation time");
            add_key("--phi", "phi", "test function (cos)");
        }
        if (kind == "poisson") {
            add_key("--x", "x", "frozen slow state (comma list)");
            add_key("--y", "y", "fast state (comma list)");
            add_key("--tol", "tol", "truncation tolerance");
            add_key("--n-paths", "n_paths", "trajectories per estimate");
            add_key("--t-dynkin", "t_dynkin", "Dynkin residual time");
            add_key("--y-scan", "y_scan", "scan magnitudes (comma list)");
        }
        if (kind == "oracle") {
            add_key("--p", "p", "moment exponent");
            add_key("--t", "t", "horizon");
            add_key("--eps-list", "eps_list", "eps grid");
            add_key("--n-paths", "n_paths", "paths per eps");
        }
        if (kind == "validate")
            add_key("--quick", "quick", "quick mode (true/false)");
    }

    CLI11_PARSE(app, argc, argv);

    const auto* sub = app.get_subcommands().front();
    const std::string kind = sub->get_name();
    const auto& opt = *options.at(kind);

    ExperimentHandle exp;
    exp.ptr = sfa_experiment_create(kind.c_str());
    if (!exp.ptr) {
        std::fprintf(stderr, "error: %s\n", sfa_last_error());
        return 2;
    }
    if (!opt.config.empty()) {
        const sfa_status st =
            sfa_experiment_load_config(exp.ptr, opt.config.c_str());
        if (st != SFA_OK) {
            std::fprintf(stderr, "error (%s): %s\n", sfa_status_name(st),
                         sfa_last_error());
            return exit_code_for(st);
        }
    }
    for (const auto& [key, value] : opt.sets)
        sfa_experiment_set(exp.ptr, key.c_str(), value.c_str());

    const sfa_status st = sfa_experiment_run(exp.ptr);
    if (st != SFA_OK) {
        std::fprintf(stderr, "error (%s): %s\n", sfa_status_name(st),
                     sfa_last_error());
        return exit_code_for(st);
    }

    const char* summary = sfa_experiment_summary_json(exp.ptr);
    if (kind == "validate") {
        print_validate_table(summary);
        if (sfa_experiment_validation_failed(exp.ptr)) return 4;
    } else {
        std::printf("%s\n", summary);
    }
    return 0;
}
