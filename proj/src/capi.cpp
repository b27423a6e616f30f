#include "stablefast.h"

#include <string>
#include <vector>

#include "experiments.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "stable.hpp"

namespace {

thread_local std::string t_last_error;

sfa_status to_status(const std::exception& e) {
    using namespace stablefast;
    t_last_error = e.what();
    if (dynamic_cast<const ConfigError*>(&e)) return SFA_ERR_CONFIG;
    if (dynamic_cast<const DomainError*>(&e)) return SFA_ERR_DOMAIN;
    if (dynamic_cast<const NonFiniteError*>(&e)) return SFA_ERR_NONFINITE;
    if (dynamic_cast<const StiffnessError*>(&e)) return SFA_ERR_STIFFNESS;
    if (dynamic_cast<const TruncationError*>(&e)) return SFA_ERR_TRUNCATION;
    if (dynamic_cast<const DegenerateFitError*>(&e))
        return SFA_ERR_DEGENERATE_FIT;
    if (dynamic_cast<const InterpolationRangeError*>(&e)) return SFA_ERR_RANGE;
    if (dynamic_cast<const GridMismatchError*>(&e)) return SFA_ERR_DOMAIN;
    if (dynamic_cast<const StepTooSmallError*>(&e)) return SFA_ERR_DOMAIN;
    if (dynamic_cast<const Error*>(&e)) return SFA_ERR_IO;
    return SFA_ERR_INTERNAL;
}

template <class Fn>
sfa_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return SFA_OK;
    } catch (const std::exception& e) {
        return to_status(e);
    } catch (...) {
        t_last_error = "unknown error";
        return SFA_ERR_INTERNAL;
    }
}

}  // namespace

struct sfa_experiment {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> entries;
    std::string summary;
    bool validation_failed = false;
};

extern "C" {

const char* sfa_version(void) { return stablefast::build_id(); }

const char* sfa_status_name(sfa_status status) {
    switch (status) {
        case SFA_OK: return "ok";
        case SFA_ERR_INVALID_ARG: return "invalid-argument";
        case SFA_ERR_DOMAIN: return "domain-error";
        case SFA_ERR_CONFIG: return "config-error";
        case SFA_ERR_NONFINITE: return "non-finite";
        case SFA_ERR_STIFFNESS: return "stiffness";
        case SFA_ERR_TRUNCATION: return "truncation";
        case SFA_ERR_DEGENERATE_FIT: return "degenerate-fit";
        case SFA_ERR_RANGE: return "interpolation-range";
        case SFA_ERR_IO: return "io-error";
        case SFA_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* sfa_last_error(void) { return t_last_error.c_str(); }

sfa_experiment* sfa_experiment_create(const char* kind) {
    if (!kind) {
        t_last_error = "kind must not be NULL";
        return nullptr;
    }
    try {
        (void)stablefast::experiment_kind_from_string(kind);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return nullptr;
    }
    auto* exp = new sfa_experiment;
    exp->kind = kind;
    return exp;
}

void sfa_experiment_destroy(sfa_experiment* exp) { delete exp; }

sfa_status sfa_experiment_set(sfa_experiment* exp, const char* key,
                              const char* value) {
    if (!exp || !key || !value) {
        t_last_error = "NULL argument";
        return SFA_ERR_INVALID_ARG;
    }
    exp->entries.emplace_back(key, value);
    t_last_error.clear();
    return SFA_OK;
}

sfa_status sfa_experiment_load_config(sfa_experiment* exp, const char* path) {
    if (!exp || !path) {
        t_last_error = "NULL argument";
        return SFA_ERR_INVALID_ARG;
    }
    return guarded([&] {
        for (auto& kv : stablefast::parse_key_value_file(path))
            exp->entries.push_back(std::move(kv));
    });
}

sfa_status sfa_experiment_run(sfa_experiment* exp) {
    if (!exp) {
        t_last_error = "NULL handle";
        return SFA_ERR_INVALID_ARG;
    }
    return guarded([&] {
        const auto cfg =
            stablefast::ExperimentConfig::build(exp->kind, exp->entries);
        const auto result = stablefast::run_experiment(cfg);
        exp->summary = result.summary_json;
        exp->validation_failed = result.validation_failed;
    });
}

const char* sfa_experiment_summary_json(const sfa_experiment* exp) {
    if (!exp || exp->summary.empty()) return nullptr;
    return exp->summary.c_str();
}

int sfa_experiment_validation_failed(const sfa_experiment* exp) {
    return exp && exp->validation_failed ? 1 : 0;
}

sfa_status sfa_sample_sym_stable(double alpha, uint64_t seed, uint64_t stream,
                                 size_t n, double* out) {
    if (!out) {
        t_last_error = "NULL output buffer";
        return SFA_ERR_INVALID_ARG;
    }
    return guarded([&] {
        stablefast::Philox rng(stablefast::RngStream{seed, stream});
        for (size_t i = 0; i < n; ++i)
            out[i] = stablefast::sample_sym_stable_1d(alpha, rng);
    });
}

sfa_status sfa_sample_isotropic(double alpha, int dim, double dt,
                                uint64_t seed, uint64_t stream, size_t n,
                                double* out) {
    if (!out) {
        t_last_error = "NULL output buffer";
        return SFA_ERR_INVALID_ARG;
    }
    return guarded([&] {
        const stablefast::StableSpec spec(alpha, dim);
        stablefast::Philox rng(stablefast::RngStream{seed, stream});
        for (size_t i = 0; i < n; ++i)
            stablefast::sample_isotropic_increment(
                spec, dt, rng, {out + i * size_t(dim), size_t(dim)});
    });
}

sfa_status sfa_sigma_scale(double alpha, double eps, double t, double* out) {
    if (!out) {
        t_last_error = "NULL output buffer";
        return SFA_ERR_INVALID_ARG;
    }
    return guarded([&] {
        *out = stablefast::sigma_scale(
            stablefast::OracleParams(alpha, eps, t, 1.0));
    });
}

}  // extern "C"
