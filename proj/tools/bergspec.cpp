// bergspec: spectra of hyperbolic weighted composition semigroups on Bergman spaces.
//
// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 coverage error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bergspec/error.hpp"
#include "bergspec/report.hpp"
#include "bergspec/suite.hpp"
#include "bergspec/svg.hpp"

using namespace bergspec;

namespace {

void emit(std::string const& text, std::string const& path) {
    if (path.empty()) std::cout << text;
    else write_text_file(path, text);
}

void add_tolerance_flags(CLI::App* cmd, Tolerances& tol) {
    cmd->add_option("--tol-identity", tol.identity, "eigen identity residual")->capture_default_str();
    cmd->add_option("--tol-eigen-residual", tol.eigen_residual, "generator residual of eigenfunctions")
        ->capture_default_str();
    cmd->add_option("--tol-resolvent", tol.resolvent, "generator residual of resolvent solutions")
        ->capture_default_str();
    cmd->add_option("--tol-witness", tol.witness, "smallest witness magnitude counted as nonzero")
        ->capture_default_str();
    cmd->add_option("--tol-growth", tol.growth, "relative tolerance on coboundary growth slopes")
        ->capture_default_str();
    cmd->add_option("--tol-orbit", tol.orbit, "tail bound for orbit integrals")->capture_default_str();
    cmd->add_option("--tol-growth-bound", tol.growth_bound, "factor in the pointwise growth bound")
        ->capture_default_str();
    cmd->add_option("--tol-radius-bound", tol.radius_bound, "truncation radius over operator radius")
        ->capture_default_str();
    cmd->add_option("--tol-alpha", tol.alpha, "declared vs recovered alpha")->capture_default_str();
}

Scenario load(std::string const& path) { return parse_scenario(read_text_file(path)); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of hyperbolic weighted composition semigroups on Bergman spaces"};
    app.require_subcommand(1);

    std::string config, json_out, svg_out, operator_svg_out, side = "generator";
    std::vector<double> ts;
    std::vector<std::string> lambdas;
    double trunc_t = 1.0;
    int N = 60, n_max = 24;
    Tolerances tol;

    auto* classify = app.add_subcommand("classify", "spectral regions from the gamma profile");
    classify->add_option("-c,--config", config, "scenario file")->required();
    classify->add_option("--t", ts, "operator times");
    classify->add_option("--json", json_out, "write JSON here instead of stdout");
    classify->add_option("--svg", svg_out, "generator spectrum plot");
    classify->add_option("--operator-svg", operator_svg_out, "operator spectrum plot at the first t");

    auto* verify = app.add_subcommand("verify", "numerical checks at the given lambdas");
    verify->add_option("-c,--config", config, "scenario file")->required();
    verify->add_option("--lambda", lambdas, "spectral parameters, e.g. 0.5 or -1.5+0.2i")->required();
    verify->add_option("--t", ts, "times for the eigen identity");
    verify->add_option("--json", json_out, "write JSON here instead of stdout");
    add_tolerance_flags(verify, tol);

    auto* truncate = app.add_subcommand("truncate", "Galerkin truncation oracle on A^2");
    truncate->add_option("-c,--config", config, "scenario file")->required();
    truncate->add_option("--t", trunc_t, "operator time")->capture_default_str();
    truncate->add_option("--N", N, "truncation size")->capture_default_str();
    truncate->add_option("--nmax", n_max, "largest power in the Gelfand estimate")->capture_default_str();
    truncate->add_option("--json", json_out, "write JSON here instead of stdout");
    add_tolerance_flags(truncate, tol);

    auto* plot = app.add_subcommand("plot", "SVG of a spectral region");
    plot->add_option("-c,--config", config, "scenario file")->required();
    plot->add_option("--side", side, "generator or operator")
        ->check(CLI::IsMember({"generator", "operator"}))
        ->capture_default_str();
    plot->add_option("--t", ts, "operator time (operator side)");
    plot->add_option("--svg", svg_out, "output file (stdout when omitted)");

    std::string suite, out_dir = "report";
    SuiteOptions suite_options;
    auto* report = app.add_subcommand("report", "run a scenario suite");
    report->add_option("--suite", suite, "suite JSON file")->required();
    report->add_option("--out", out_dir, "output directory")->capture_default_str();
    report->add_option("--jobs", suite_options.jobs, "worker threads (0 = automatic)");
    report->add_flag("--wall-time", suite_options.wall_time, "record timings (output no longer reproducible)");
    add_tolerance_flags(report, suite_options.tolerances);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunStatus status;
        if (*classify) {
            Scenario s = load(config);
            emit(dump(classify_report(s, ts, status)), json_out);
            GammaProfile g = gammas_from(s.fixed_points(), s.p());
            if (!svg_out.empty()) {
                try {
                    SpectralRegion r = generator_spectrum(g);
                    write_text_file(svg_out, render_svg(r, generator_viewport(r), "generator spectrum"));
                } catch (CoverageError const&) {
                }
            }
            if (!operator_svg_out.empty() && !ts.empty()) {
                try {
                    SpectralRegion r = operator_spectrum(g, ts.front());
                    write_text_file(operator_svg_out, render_svg(r, operator_viewport(r), "operator spectrum"));
                } catch (CoverageError const&) {
                }
            }
        } else if (*verify) {
            Scenario s = load(config);
            std::vector<cplx> ls;
            for (auto const& text : lambdas) ls.push_back(parse_complex(text));
            if (ts.empty()) ts = {1.0};
            Json j = verify_report(s, ls, ts, tol, status);
            j["provenance"] = provenance_json(tol, QuadratureGrid{});
            emit(dump(j), json_out);
        } else if (*truncate) {
            Scenario s = load(config);
            if (s.p() != 2.0 || !s.evaluable())
                throw ConfigError("truncate needs an evaluable scenario with p = 2");
            emit(dump(truncate_report(s, trunc_t, N, n_max, tol, status)), json_out);
        } else if (*plot) {
            Scenario s = load(config);
            GammaProfile g = gammas_from(s.fixed_points(), s.p());
            SpectralRegion r;
            std::string svg;
            if (side == "generator") {
                r = generator_spectrum(g);
                svg = render_svg(r, generator_viewport(r), "generator spectrum");
            } else {
                r = operator_spectrum(g, ts.empty() ? 1.0 : ts.front());
                svg = render_svg(r, operator_viewport(r), "operator spectrum");
            }
            emit(svg, svg_out);
        } else if (*report) {
            SuiteResult r = run_suite(suite, out_dir, suite_options);
            return r.verification_failed ? 1 : 0;
        }
        return exit_code(status);
    } catch (ConfigError const& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (CoverageError const& e) {
        std::cerr << "outside theorem coverage (" << e.item() << "): " << e.what() << "\n";
        return 3;
    } catch (Error const& e) {
        std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
        return 1;
    }
}
