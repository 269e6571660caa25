#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace camlab {

/// Parameter outside the domain of an operation. The CLI maps it to exit code 2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical procedure failed to reach its tolerance (exit code 3).
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, std::size_t evaluations = 0)
        : std::runtime_error(what), evaluations_(evaluations) {}

    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    std::size_t evaluations_;
};

/// A hypothesis of a cited result is not met by the supplied data (exit code 4).
class HypothesisFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int domain = 2;
inline constexpr int numeric = 3;
inline constexpr int hypothesis = 4;
}  // namespace exit_code

}  // namespace camlab
