#pragma once

#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace stablefast {

enum class ExperimentKind {
    Sample,
    Simulate,
    Frozen,
    Bbar,
    StrongRate,
    WeakRate,
    Poisson,
    Oracle,
    Validate,
};

ExperimentKind experiment_kind_from_string(const std::string& s);
std::string to_string(ExperimentKind k);

// Fully validated configuration: every entry checked against the module
// preconditions before any computation starts. Later entries override
// earlier ones (file first, then flags).
struct ExperimentConfig {
    ExperimentKind kind;
    std::map<std::string, std::string> values;

    static ExperimentConfig build(
        const std::string& kind_name,
        const std::vector<std::pair<std::string, std::string>>& entries);

    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_long(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;
};

struct RunResult {
    bool validation_failed = false;
    std::string summary_json;
    std::vector<std::string> files_written;
};

// Runs the experiment, writes artifacts under the resolved output directory
// and returns the summary JSON. Deterministic outputs for a fixed seed;
// wall-clock time lives only in the JSON summary, never in CSV bodies.
RunResult run_experiment(const ExperimentConfig& config);

const char* build_id();

}  // namespace stablefast
