#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oamwg {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operating frequency sits on a modal cutoff, where the wave impedance is undefined.
class CutoffSingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A ring sample is too small for its phase to be meaningful.
class UndefinedPhaseError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Accumulated phase is not close to an integer number of turns.
class NonIntegerWindingError : public DomainError {
public:
    NonIntegerWindingError(const std::string& what, double raw)
        : DomainError(what), raw_(raw) {}
    double raw() const noexcept { return raw_; }

private:
    double raw_;
};

/// Total power over the purity scope is zero.
class UndefinedPurityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Text input that does not follow its grammar. `position` is a 1-based column.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position = 0)
        : std::runtime_error(position ? what + " (at column " + std::to_string(position) + ")" : what),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Configuration document that fails validation. Each issue names its field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid configuration:";
        for (const auto& s : issues) out += "\n  " + s;
        return out;
    }
    std::vector<std::string> issues_;
};

}  // namespace oamwg
