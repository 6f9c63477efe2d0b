#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vekua {

// Raised by cholesky() when a diagonal pivot is non-positive. Carries the
// pivot index so the caller can escalate the ridge jitter.
class NotPositiveDefinite : public std::runtime_error {
public:
    explicit NotPositiveDefinite(std::size_t pivot)
        : std::runtime_error("matrix not positive definite at pivot " +
                             std::to_string(pivot)),
          pivot_index(pivot) {}
    std::size_t pivot_index;
};

// Raised by ridge_solve() after all jitter escalations fail.
class SolveFailed : public std::runtime_error {
public:
    explicit SolveFailed(const std::string& what)
        : std::runtime_error("ridge solve failed: " + what) {}
};

class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what)
        : std::invalid_argument("dimension mismatch: " + what) {}
};

class UnsupportedDimension : public std::invalid_argument {
public:
    explicit UnsupportedDimension(std::size_t d)
        : std::invalid_argument("unsupported input dimension " +
                                std::to_string(d) + " (expected 1 or 2)") {}
};

class UnknownBenchmark : public std::invalid_argument {
public:
    explicit UnknownBenchmark(const std::string& name)
        : std::invalid_argument("unknown benchmark: " + name) {}
};

} // namespace vekua
