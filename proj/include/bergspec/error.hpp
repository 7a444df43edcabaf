#pragma once

#include <stdexcept>
#include <string>

namespace bergspec {

enum class ErrorKind {
    config,
    evaluation,
    inversion_failure,
    outside_domain,
    petal_exit,
    model_inconsistency,
    no_boundary_limit,
    coverage,
    precondition,
    divergent_integral,
    tolerance_failure,
};

char const* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string const& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Malformed scenario text. Line and column are 1-based; 0 means unknown.
class ConfigError : public Error {
public:
    ConfigError(std::string const& what, int line = 0, int column = 0);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class InversionFailure : public Error {
public:
    InversionFailure(std::string const& what, double best_residual)
        : Error(ErrorKind::inversion_failure, what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// A result that cannot be asserted because a theorem's hypotheses do not hold.
class CoverageError : public Error {
public:
    CoverageError(std::string item, std::string const& what)
        : Error(ErrorKind::coverage, what), item_(std::move(item)) {}
    std::string const& item() const noexcept { return item_; }

private:
    std::string item_;
};

class ToleranceFailure : public Error {
public:
    ToleranceFailure(std::string const& what, double achieved)
        : Error(ErrorKind::tolerance_failure, what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace bergspec
