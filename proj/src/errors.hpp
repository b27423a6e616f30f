#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stablefast {

// Base type for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside its mathematical domain (alpha outside (1,2), dt <= 0, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Two paths on incompatible grids were combined.
struct GridMismatchError : Error {
    explicit GridMismatchError(const std::string& msg) : Error(msg) {}
};

// A state became NaN/Inf. Heavy tails produce legitimately huge values; only
// non-finite arithmetic is an error and it is reported, never clamped.
struct NonFiniteError : Error {
    explicit NonFiniteError(const std::string& msg, std::int64_t path = -1)
        : Error(msg), path_index(path) {}
    std::int64_t path_index;
};

// Explicit fast Euler step outside its stability region (h > eps/20).
struct StiffnessError : Error {
    explicit StiffnessError(const std::string& msg) : Error(msg) {}
};

// Corrector time-truncation failed its tail test.
struct TruncationError : Error {
    explicit TruncationError(const std::string& msg) : Error(msg) {}
};

// Log-log fit impossible: non-positive errors or fewer than 4 points left.
struct DegenerateFitError : Error {
    explicit DegenerateFitError(const std::string& msg) : Error(msg) {}
};

// Finite-difference step below the Monte Carlo noise floor.
struct StepTooSmallError : Error {
    explicit StepTooSmallError(const std::string& msg) : Error(msg) {}
};

// A tabulated drift was evaluated outside its x-range.
struct InterpolationRangeError : Error {
    explicit InterpolationRangeError(const std::string& msg) : Error(msg) {}
};

// Bad configuration (unknown key, missing key, value outside domain).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg, std::string key_ = "")
        : Error(msg), key(std::move(key_)) {}
    std::string key;
};

}  // namespace stablefast
