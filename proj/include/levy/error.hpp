#pragma once

#include <stdexcept>
#include <string>

namespace levy {

/// Broad classification used by the CLI to map failures onto exit codes.
enum class ErrorKind {
    Domain,    // precondition violated by the caller
    Numeric,   // a computation missed its tolerance
    Config,    // malformed configuration input
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Quadrature or iteration that did not reach its target; carries what was achieved.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved)
        : Error(ErrorKind::Numeric, what + " (achieved " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// A discretization would need more nodes than its budget allows.
class ResourceError : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateMeasureError : public DomainError {
public:
    using DomainError::DomainError;
};

class MomentDivergenceError : public DomainError {
public:
    MomentDivergenceError(const std::string& side, const std::string& what)
        : DomainError(what), side_(side) {}

    /// "small" or "large"
    const std::string& side() const noexcept { return side_; }

private:
    std::string side_;
};

class GridTooSmallError : public NumericError {
public:
    GridTooSmallError(const std::string& what, double achieved, double suggested_L, int suggested_n)
        : NumericError(what, achieved), suggested_L_(suggested_L), suggested_n_(suggested_n) {}

    double suggested_half_width() const noexcept { return suggested_L_; }
    int suggested_points() const noexcept { return suggested_n_; }

private:
    double suggested_L_;
    int suggested_n_;
};

}  // namespace levy
