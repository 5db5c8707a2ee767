// glancing: command-line front end for the transition-probability library.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/interpolators/makima.hpp>

#include <CLI11.hpp>

#include "glancing/ddp.hpp"
#include "glancing/errors.hpp"
#include "glancing/harness.hpp"
#include "glancing/models.hpp"
#include "glancing/propagator.hpp"
#include "glancing/specialfn.hpp"
#include "glancing/znt.hpp"

namespace {

using namespace glancing;

std::string fmt(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

struct ModelFlags {
    std::string model = "superparabolic";
    int N = 2;
    double alpha = 1.0;
    double A = 1.0;
    double B = 0.0;
    double V0 = 0.5;

    void attach(CLI::App* cmd, bool with_parabolic) {
        if (with_parabolic) {
            cmd->add_option("--model", model, "superparabolic or parabolic")
                ->check(CLI::IsMember({"superparabolic", "parabolic"}))
                ->capture_default_str();
            cmd->add_option("--A", A, "parabolic curvature A > 0")->capture_default_str();
            cmd->add_option("--B", B, "parabolic offset B")->capture_default_str();
            cmd->add_option("--V0", V0, "parabolic coupling V0 > 0")->capture_default_str();
        }
        cmd->add_option("--N", N, "even power N >= 2")->capture_default_str();
        cmd->add_option("--alpha", alpha, "coupling alpha > 0")->capture_default_str();
    }

    [[nodiscard]] DiabaticModel build() const {
        if (model == "parabolic") {
            return DiabaticModel(Parabolic{A, B, V0});
        }
        return DiabaticModel(Superparabolic{N, alpha});
    }
};

void add_propagator_flags(CLI::App* cmd, PropagatorSettings& s) {
    cmd->add_option("--rel-tol", s.rel_tol, "integrator relative tolerance")->capture_default_str();
    cmd->add_option("--abs-tol", s.abs_tol, "integrator absolute tolerance")->capture_default_str();
    cmd->add_option("--ratio", s.asymptotic_ratio, "required |eps(T)|/V at the span ends")
        ->capture_default_str();
    cmd->add_option("--convergence-tol", s.convergence_tol, "agreement between successive spans")
        ->capture_default_str();
    cmd->add_option("--max-doublings", s.max_span_doublings, "span refinement budget")
        ->capture_default_str();
}

// Tabulated adiabatic curves (t, E1, E2) interpolated with modified Akima splines.
znt::AdiabaticCurves read_curves(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::string line;
    std::getline(in, line);
    std::vector<double> t, e1, e2;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream cells(line);
        double a = 0, b = 0, c = 0;
        if (!(cells >> a >> b >> c)) {
            throw IoError(path + ":" + std::to_string(line_number) + ": expected t,E1,E2");
        }
        if (!t.empty() && a <= t.back()) {
            throw IoError(path + ":" + std::to_string(line_number) + ": t must increase");
        }
        t.push_back(a);
        e1.push_back(b);
        e2.push_back(c);
    }
    if (t.size() < 5) {
        throw IoError(path + ": need at least 5 samples");
    }
    const double lo = t.front();
    const double hi = t.back();
    using Spline = boost::math::interpolators::makima<std::vector<double>>;
    auto t_copy = t;
    auto lower = std::make_shared<Spline>(std::move(t_copy), std::move(e1));
    auto upper = std::make_shared<Spline>(std::move(t), std::move(e2));
    return {[lower](double x) { return (*lower)(x); }, [upper](double x) { return (*upper)(x); },
            lo, hi};
}

int run_sweep(harness::SweepConfig config, const std::string& methods, const std::string& spacing,
              const std::string& out) {
    config.methods = harness::parse_methods(methods);
    config.spacing = harness::parse_spacing(spacing);
    if (!out.empty() && out != "-") {
        config.output = out;
    }
    const auto rows = harness::run_sweep(config);
    if (!config.output) {
        harness::write_csv(std::cout, rows);
    } else {
        std::size_t flagged = 0;
        for (const auto& row : rows) {
            flagged += row.status != "ok";
        }
        std::cerr << "wrote " << rows.size() << " rows to " << out;
        if (flagged) {
            std::cerr << " (" << flagged << " with failure status)";
        }
        std::cerr << '\n';
    }
    return 0;
}

int run_propagate(const ModelFlags& flags, const PropagatorSettings& settings,
                  const std::string& basis, const std::string& trace, std::size_t samples) {
    const DiabaticModel model = flags.build();
    const auto result =
        propagate(model, settings,
                  basis == "diabatic" ? Basis::Diabatic : Basis::AdiabaticInteraction);
    std::cout << "model        " << model.describe() << '\n'
              << "probability  " << fmt(result.probability) << '\n'
              << "half_span    " << fmt(result.span_used) << '\n'
              << "refinements  " << result.doublings_used << '\n'
              << "norm_drift   " << fmt(result.final_norm_drift) << '\n';
    if (!trace.empty()) {
        std::ofstream out(trace);
        if (!out) {
            throw IoError("cannot open '" + trace + "' for writing");
        }
        out << "t,p1,p2,norm\n";
        for (const auto& s : propagate_trace(model, settings, samples)) {
            out << fmt(s.t) << ',' << fmt(s.p1) << ',' << fmt(s.p2) << ',' << fmt(s.norm) << '\n';
        }
    }
    return 0;
}

int run_znt(const ModelFlags& flags, const std::string& branch) {
    const auto in = znt::superparabolic_inputs(flags.N, flags.alpha);
    std::cout << "a_sq   " << fmt(in.a_sq) << '\n'
              << "sigma  " << fmt(in.sigma) << '\n'
              << "delta  " << fmt(in.delta) << '\n';
    if (branch == "double") {
        const double p = znt::single_passage_probability(in.a_sq, 0.0);
        const double d_psi = znt::delta_psi(in.a_sq, in.sigma, in.delta);
        std::cout << "p          " << fmt(p) << '\n'
                  << "delta_psi  " << fmt(d_psi) << '\n'
                  << "psi        " << fmt(in.sigma + znt::stokes_phase(d_psi)) << '\n'
                  << "probability " << fmt(znt::double_crossing_probability(in.a_sq, 0.0, in.sigma,
                                                                           in.delta))
                  << '\n';
        return 0;
    }
    const auto terms = znt::tunneling_terms(in.a_sq, in.sigma, in.delta);
    std::cout << "g1   " << fmt(terms.g1) << '\n'
              << "g2   " << fmt(terms.g2) << '\n'
              << "B    " << fmt(terms.B) << '\n'
              << "p    " << fmt(terms.p) << '\n'
              << "U1   " << fmt(terms.stokes_constant.real()) << ' '
              << fmt(terms.stokes_constant.imag()) << "i\n"
              << "probability " << fmt(terms.probability) << '\n';
    return 0;
}

int run_fit(const std::string& path) {
    const auto curves = read_curves(path);
    const auto fit = znt::fit_parameters(curves);
    const auto& g = fit.geometry;
    std::cout << "t_b   " << fmt(g.t_b) << '\n'
              << "t_t   " << fmt(g.t_t) << '\n'
              << "t_0   " << fmt(g.t_0) << '\n'
              << "V0    " << fmt(g.v0_fit) << '\n'
              << "d_sq  " << fmt(g.d_sq) << '\n'
              << "a_sq  " << fmt(fit.a_sq) << '\n'
              << "b_sq  " << fmt(fit.b_sq) << '\n';
    const auto phase = znt::znt_phase_estimate(fit, curves);
    std::cout << "sigma " << fmt(phase.real()) << '\n' << "delta " << fmt(phase.imag()) << '\n';
    return 0;
}

int run_compare(const std::string& path, double threshold, const std::string& report_path) {
    const auto reports = harness::compare_by_N(harness::read_csv_file(path), threshold);
    for (const auto& report : reports) {
        std::cout << "N=" << report.N << "  numeric peaks " << report.numeric_peaks.size()
                  << ", nodes " << report.numeric_nodes.size() << '\n';
        for (const auto& m : report.methods) {
            std::cout << "  " << harness::method_name(m.method) << ": max |dP| "
                      << fmt(m.max_abs_deviation) << " at alpha " << fmt(m.max_deviation_alpha)
                      << ", peaks " << m.peaks.size() << ", max node shift "
                      << fmt(m.max_node_shift) << ", failures " << m.failures << '\n';
        }
    }
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            throw IoError("cannot open '" + report_path + "' for writing");
        }
        out << harness::report_to_json(reports) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonadiabatic transition probabilities for level-glancing models"};
    app.set_config("--config", "", "key=value configuration file; flags override it");
    app.require_subcommand(1);

    harness::SweepConfig sweep_config;
    std::string sweep_model = "superparabolic";
    std::string sweep_methods = "numeric,ddp,znt-double,znt-tunnel";
    std::string sweep_spacing = "log";
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "evaluate methods over an alpha grid, emit CSV");
    sweep->add_option("--model", sweep_model, "model family")
        ->check(CLI::IsMember({"superparabolic"}))
        ->capture_default_str();
    sweep->add_option("--N", sweep_config.N_values, "one or more even powers")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--alpha-min", sweep_config.alpha_min)->capture_default_str();
    sweep->add_option("--alpha-max", sweep_config.alpha_max)->capture_default_str();
    sweep->add_option("--points", sweep_config.points)->capture_default_str();
    sweep->add_option("--spacing", sweep_spacing, "linear or log")->capture_default_str();
    sweep->add_option("--methods", sweep_methods, "comma-separated method list")
        ->capture_default_str();
    sweep->add_option("--threads", sweep_config.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    sweep->add_option("--out", sweep_out, "CSV output path (stdout when omitted)");
    add_propagator_flags(sweep, sweep_config.propagator);

    ModelFlags prop_flags;
    PropagatorSettings prop_settings;
    std::string prop_basis = "adiabatic";
    std::string prop_trace;
    std::size_t prop_samples = 401;
    auto* prop = app.add_subcommand("propagate", "integrate the Schroedinger equation");
    prop_flags.attach(prop, true);
    add_propagator_flags(prop, prop_settings);
    prop->add_option("--basis", prop_basis, "adiabatic or diabatic")
        ->check(CLI::IsMember({"adiabatic", "diabatic"}))
        ->capture_default_str();
    prop->add_option("--trace", prop_trace, "write populations t,p1,p2,norm to this CSV");
    prop->add_option("--samples", prop_samples, "trace sample count")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))
        ->capture_default_str();

    ModelFlags zero_flags;
    auto* zeros = app.add_subcommand("zeros", "complex zero points of eps^2 + alpha^2");
    zero_flags.attach(zeros, false);

    ModelFlags phase_flags;
    int phase_k = 1;
    auto* phase = app.add_subcommand("phase", "phase integral D at the k-th zero point");
    phase_flags.attach(phase, false);
    phase->add_option("--k", phase_k, "zero-point index 1..N")->capture_default_str();

    ModelFlags ddp_flags;
    auto* ddp_cmd = app.add_subcommand("ddp", "generalized DDP probability");
    ddp_flags.attach(ddp_cmd, false);

    ModelFlags znt_flags;
    std::string znt_branch = "double";
    auto* znt_cmd = app.add_subcommand("znt", "Zhu-Nakamura probability for the glancing family");
    znt_flags.attach(znt_cmd, false);
    znt_cmd->add_option("--branch", znt_branch, "double or tunnel")
        ->check(CLI::IsMember({"double", "tunnel"}))
        ->capture_default_str();

    std::string fit_curves;
    auto* fit = app.add_subcommand("fit", "fit ZN parameters to tabulated adiabatic curves");
    fit->add_option("--curves", fit_curves, "CSV with columns t,E1,E2")->required();

    std::string compare_file;
    double compare_threshold = 0.05;
    std::string compare_report;
    auto* compare = app.add_subcommand("compare", "compare sweep columns against numerics");
    compare->add_option("file", compare_file, "sweep CSV")->required();
    compare->add_option("--threshold", compare_threshold, "peak threshold")->capture_default_str();
    compare->add_option("--report", compare_report, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            return run_sweep(sweep_config, sweep_methods, sweep_spacing, sweep_out);
        }
        if (*prop) {
            return run_propagate(prop_flags, prop_settings, prop_basis, prop_trace, prop_samples);
        }
        if (*zeros) {
            for (const auto& z : ddp::zero_points(zero_flags.N, zero_flags.alpha)) {
                std::cout << z.k << ' ' << fmt(z.value.real()) << ' ' << fmt(z.value.imag())
                          << '\n';
            }
            return 0;
        }
        if (*phase) {
            const auto d = ddp::phase_integral(phase_flags.N, phase_flags.alpha, phase_k);
            std::cout << "sigma " << fmt(d.real()) << '\n'
                      << "delta " << fmt(d.imag()) << '\n'
                      << "eta   " << fmt(std::abs(d)) << '\n';
            return 0;
        }
        if (*ddp_cmd) {
            const double eta = ddp::phase_modulus(ddp_flags.N, ddp_flags.alpha);
            std::cout << "eta          " << fmt(eta) << '\n'
                      << "probability  " << fmt(ddp::ddp_probability(ddp_flags.N, ddp_flags.alpha))
                      << '\n'
                      << "single_zero  " << fmt(ddp::ddp_single_zero(eta, ddp_flags.N)) << '\n';
            return 0;
        }
        if (*znt_cmd) {
            return run_znt(znt_flags, znt_branch);
        }
        if (*fit) {
            return run_fit(fit_curves);
        }
        if (*compare) {
            return run_compare(compare_file, compare_threshold, compare_report);
        }
    } catch (const DegenerateGeometry& e) {
        std::cerr << "degenerate geometry: " << e.what() << '\n';
        return 3;
    } catch (const BranchFailure& e) {
        std::cerr << "branch failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
