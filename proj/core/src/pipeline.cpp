#include "dbar/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "dbar/cauchy.hpp"
#include "dbar/dbar_solver.hpp"
#include "dbar/reconstruction.hpp"

namespace dbar {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("pipeline: cannot write " + (dir / name).string());
    return out;
}

SolverConfig solver_config(const RunConfig& cfg) {
    return SolverConfig{cfg.grid_nr, cfg.grid_ntheta, cfg.tol, cfg.max_iter};
}

PipelineResult run_cauchy(const RunConfig& cfg, const fs::path& dir) {
    const SpectralData data = cfg.spectral_data();
    const QuadratureGrid grid = build_disk_grid({0.0, 0.0}, 1.0, cfg.grid_nr, cfg.grid_ntheta);
    const ScalarField f =
        ScalarField::sample(grid, [&data](Complex z) { return data.r_plus(z); });

    std::vector<Complex> targets;
    const int n = 21;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            targets.emplace_back(-1.5 + 3.0 * (i + 0.5) / n, -1.5 + 3.0 * (j + 0.5) / n);

    const CauchyEvaluation ev = cauchy_transform(f, targets);
    std::ofstream out = open_output(dir, "cauchy.csv");
    out << "k_re,k_im,value_re,value_im,scheme,h\n";
    for (std::size_t i = 0; i < ev.targets.size(); ++i)
        out << fmt(ev.targets[i].real()) << ',' << fmt(ev.targets[i].imag()) << ','
            << fmt(ev.values[i].real()) << ',' << fmt(ev.values[i].imag()) << ',' << ev.scheme
            << ',' << fmt(ev.h) << '\n';

    PipelineResult res;
    res.outputs.push_back("cauchy.csv");
    res.message = "cauchy: " + std::to_string(ev.targets.size()) + " targets evaluated";
    return res;
}

PipelineResult run_solve(const RunConfig& cfg, const fs::path& dir) {
    const SpectralData data = cfg.spectral_data();
    const ComponentGrids grids = ComponentGrids::build(cfg.grid_nr, cfg.grid_ntheta);

    std::ofstream out = open_output(dir, "solve.csv");
    out << "x,iterations,residual,contraction_ratio,psi_sup_norm,status\n";
    PipelineResult res;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double x : cfg.x_values()) {
        try {
            const SolveResult sol = solve_psi(data, x, grids, cfg.tol, cfg.max_iter);
            out << fmt(x) << ',' << sol.iterations << ',' << fmt(sol.residual) << ','
                << fmt(sol.contraction_ratio) << ',' << fmt(sol.psi.sup_norm()) << ",ok\n";
        } catch (const DivergenceError&) {
            out << fmt(x) << ",0," << fmt(nan) << ',' << fmt(nan) << ',' << fmt(nan)
                << ",diverged\n";
            res.exit_code = kExitDiverged;
        } catch (const NonConvergenceError&) {
            out << fmt(x) << ',' << cfg.max_iter << ',' << fmt(nan) << ',' << fmt(nan) << ','
                << fmt(nan) << ",no_convergence\n";
            if (res.exit_code == kExitOk) res.exit_code = kExitNonConvergence;
        }
    }
    res.outputs.push_back("solve.csv");
    res.message = res.exit_code == kExitOk ? "solve: all x converged"
                                           : "solve: some x failed (see solve.csv)";
    return res;
}

PipelineResult run_reconstruct(const RunConfig& cfg, const fs::path& dir) {
    const SpectralData data = cfg.spectral_data();
    const PotentialSample s =
        reconstruct_potentials(data, cfg.x_values(), solver_config(cfg));

    std::ofstream out = open_output(dir, "reconstruct.csv");
    out << "x,u_re,u_im,v_re,v_im,solver_iterations,residual\n";
    for (std::size_t i = 0; i < s.x_grid.size(); ++i)
        out << fmt(s.x_grid[i]) << ',' << fmt(s.u[i].real()) << ',' << fmt(s.u[i].imag()) << ','
            << fmt(s.v[i].real()) << ',' << fmt(s.v[i].imag()) << ',' << s.iterations[i] << ','
            << fmt(s.residuals[i]) << '\n';

    PipelineResult res;
    res.outputs.push_back("reconstruct.csv");
    if (s.any_diverged())
        res.exit_code = kExitDiverged;
    else if (s.any_failed())
        res.exit_code = kExitNonConvergence;
    res.message = res.exit_code == kExitOk
                      ? "reconstruct: " + std::to_string(s.x_grid.size()) + " x samples"
                      : "reconstruct: some x failed; partial rows kept";
    return res;
}

PipelineResult run_verify(const RunConfig& cfg, const fs::path& dir) {
    const SpectralData data = cfg.spectral_data();
    const ComponentGrids grids = ComponentGrids::build(cfg.grid_nr, cfg.grid_ntheta);
    const NormParams params = cfg.norm_params();

    VerificationReport rep;
    rep.seed = cfg.seed;
    rep.config_hash = cfg.hash();
    rep.grid_nr = cfg.grid_nr;
    rep.grid_ntheta = cfg.grid_ntheta;

    // Transform sanity: T(chi_disk) has the closed form conj(k) inside,
    // 1/k outside.
    {
        const QuadratureGrid disk =
            build_disk_grid({0.0, 0.0}, 1.0, cfg.grid_nr, cfg.grid_ntheta);
        const ScalarField one = ScalarField::sample(disk, [](Complex) { return Complex(1); });
        const std::vector<Complex> ks{{0.31, 0.21}, {-0.45, 0.37}, {1.4, -0.9}, {0.1, -1.7}};
        const CauchyEvaluation ev = cauchy_transform(one, ks);
        double err = 0.0;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const Complex exact =
                std::abs(ks[i]) < 1.0 ? std::conj(ks[i]) : 1.0 / ks[i];
            err = std::max(err, std::abs(ev.values[i] - exact));
        }
        const double tol = 8.0 / std::min(cfg.grid_nr, cfg.grid_ntheta);
        rep.add("cauchy_indicator_closed_form", err, tol, 0.0, err <= tol);
    }

    // Operator smallness for this data.
    bool diverged = false;
    const std::vector<double> xs = cfg.x_values();
    const std::vector<double> x_probe{xs.front(), xs.back()};
    const OperatorEstimate est =
        estimate_operator_norm(data, params, x_probe, 10, cfg.seed, grids);
    rep.add("operator_norm_lower_bound", est.norm_lower_bound, 1.0, 0.0, est.small_norm());
    rep.add("operator_holder_bound", est.holder_bound, 0.0, 0.0, true);
    if (!est.small_norm()) diverged = true;

    // One solve at the largest |x| plus its equation residuals.
    try {
        double x0 = std::abs(xs.front()) > std::abs(xs.back()) ? xs.front() : xs.back();
        const SolveResult sol = solve_psi(data, x0, grids, cfg.tol, cfg.max_iter);
        rep.add("fixed_point_residual", sol.residual, 10.0 * cfg.tol, 0.0,
                sol.residual <= 10.0 * cfg.tol);
        const double dres = dbar_residual(sol.psi, data, x0);
        rep.add("dbar_residual_finite", dres, 0.0, 0.0, std::isfinite(dres));
        const Moments m = compute_moments(sol.psi, data, x0);
        const double off = std::max(std::abs(m.total(0, 1)), std::abs(m.total(1, 0)));
        rep.add("moment_diagonal_small", m.diagonal_magnitude,
                std::max(1e-10, 0.05 * off), 0.0,
                m.diagonal_magnitude <= std::max(1e-10, 0.05 * off));
        if (data.is_zero()) {
            const double dev = sol.psi.sup_distance(PsiField4::identity(grids));
            rep.add("zero_data_identity", dev, 0.0, 0.0, dev == 0.0);
        }
    } catch (const DivergenceError&) {
        rep.add("solve_converged", 0.0, 1.0, 0.0, false);
        diverged = true;
    } catch (const NonConvergenceError&) {
        rep.add("solve_converged", 0.0, 1.0, 0.0, false);
    }

    std::ofstream out = open_output(dir, "verify.json");
    out << rep.to_json() << '\n';

    PipelineResult res;
    res.outputs.push_back("verify.json");
    if (diverged) res.exit_code = kExitDiverged;
    res.message = rep.all_pass() ? "verify: all checks passed" : "verify: some checks failed";
    return res;
}

}  // namespace

PipelineResult run_pipeline(const std::string& command, const RunConfig& cfg,
                            const std::string& out_dir) {
    const fs::path dir(out_dir);
    if (command == "cauchy") return run_cauchy(cfg, dir);
    if (command == "solve") return run_solve(cfg, dir);
    if (command == "reconstruct") return run_reconstruct(cfg, dir);
    if (command == "verify") return run_verify(cfg, dir);
    throw ConfigError("command: unknown command '" + command + "'");
}

}  // namespace dbar
