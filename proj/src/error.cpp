#include "bergspec/error.hpp"

namespace bergspec {

char const* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::config: return "config error";
    case ErrorKind::evaluation: return "evaluation error";
    case ErrorKind::inversion_failure: return "inversion failure";
    case ErrorKind::outside_domain: return "outside image domain";
    case ErrorKind::petal_exit: return "petal exit";
    case ErrorKind::model_inconsistency: return "model inconsistency";
    case ErrorKind::no_boundary_limit: return "no boundary limit";
    case ErrorKind::coverage: return "outside theorem coverage";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::divergent_integral: return "divergent orbit integral";
    case ErrorKind::tolerance_failure: return "tolerance failure";
    }
    return "unknown error";
}

namespace {
std::string located(std::string const& what, int line, int column) {
    if (line <= 0) return what;
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": " + what;
}
}  // namespace

ConfigError::ConfigError(std::string const& what, int line, int column)
    : Error(ErrorKind::config, located(what, line, column)), line_(line), column_(column) {}

}  // namespace bergspec
