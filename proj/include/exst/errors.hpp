#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace exst {

/// Input that cannot be parsed (model files, expressions, process words).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource cap was exceeded; the model is beyond desk scale.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition or internal invariant was violated.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Caps applied by the heavier computations. All configurable per call site.
struct ResourceLimits {
    std::size_t max_matrix_cols = 50000;
    std::size_t max_matrix_entries = 50'000'000;
    std::size_t max_closure = 1u << 16;
    std::size_t max_minimal_sets = 1'000'000;
    std::size_t max_identity_generators = 1'000'000;
};

inline ResourceLimits& default_limits() {
    static ResourceLimits limits;
    return limits;
}

}  // namespace exst
