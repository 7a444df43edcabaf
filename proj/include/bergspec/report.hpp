#pragma once

// JSON reports for classification, numerical verification and the truncation oracle.
// Objects keep insertion order and floats are rounded to 12 significant digits so the
// same inputs always serialize to the same bytes.

#include <string>
#include <vector>

#include "json.hpp"

#include "bergspec/classifier.hpp"
#include "bergspec/numerics.hpp"
#include "bergspec/scenario.hpp"
#include "bergspec/truncation.hpp"

namespace bergspec {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits; -0 becomes 0.
double round12(double x);
Json number(double x);           // "-inf" for -inf
Json number(ExtReal x);
Json complex_json(cplx z);       // [re, im]

Json to_json(Component const& c);
Json to_json(SpectralRegion const& r);
Json to_json(GammaProfile const& g);
Json scenario_json(Scenario const& s);

struct Tolerances {
    double identity = 1e-9;        // eigen identity residual
    double eigen_residual = 1e-8;  // generator residual of an eigenfunction
    double resolvent = 1e-5;       // generator residual of a resolvent solution
    double witness = 1e-6;         // smallest witness magnitude counted as nonzero
    double growth = 0.05;          // relative slope tolerance for coboundary growth
    double orbit = 1e-12;          // tail bound for orbit integrals
    double growth_bound = 1.05;    // pointwise A^p growth bound factor
    double radius_bound = 1.05;    // truncation radius vs operator radius
    double alpha = 1e-4;           // declared vs recovered alpha
};

/// Outcome flags collected while building a report.
struct RunStatus {
    bool verification_failed = false;
    bool coverage_error = false;
};

/// Exit code: 1 on verification failure, 3 on a coverage error, 0 otherwise.
int exit_code(RunStatus const& status);

Json classify_report(Scenario const& s, std::vector<double> const& ts, RunStatus& status);

Json verify_report(Scenario const& s, std::vector<cplx> const& lambdas, std::vector<double> const& ts,
                   Tolerances const& tol, RunStatus& status);

Json truncate_report(Scenario const& s, double t, int N, int n_max, Tolerances const& tol, RunStatus& status);

Json provenance_json(Tolerances const& tol, QuadratureGrid const& grid);

/// Pretty-printed with a trailing newline.
std::string dump(Json const& j);

/// Parses "0.5", "-1.5+2i", "3i" and similar constant expressions.
cplx parse_complex(std::string const& text);

}  // namespace bergspec
