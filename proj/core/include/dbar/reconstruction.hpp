#ifndef DBAR_RECONSTRUCTION_HPP
#define DBAR_RECONSTRUCTION_HPP

#include <vector>

#include "dbar/dbar_solver.hpp"
#include "dbar/report.hpp"

namespace dbar {

/// <psi R> for one x: the two active half-plane pieces (interior + inverted
/// exterior quadrature) and their sum. Only the off-diagonal part of
/// `total` feeds Q; `diagonal_magnitude` records how large the projected-out
/// diagonal was.
struct Moments {
    double x = 0.0;
    Mat2 piece_minus;  // <psi w_-> over its active half-plane
    Mat2 piece_plus;   // <psi w_+> over its active half-plane
    Mat2 total;
    double diagonal_magnitude = 0.0;
};

Moments compute_moments(const PsiField4& psi, const SpectralData& data, double x);

struct SolverConfig {
    int nr = 24;
    int ntheta = 24;
    double tol = 1e-10;
    int max_iter = 60;
};

struct PotentialSample {
    std::vector<double> x_grid;
    std::vector<Complex> u;
    std::vector<Complex> v;
    std::vector<int> iterations;
    std::vector<double> residuals;
    std::vector<bool> failed;    // per-x NonConvergence/Divergence flags
    std::vector<bool> diverged;  // subset of `failed`: small-norm violations

    bool any_failed() const {
        for (bool f : failed)
            if (f) return true;
        return false;
    }
    bool any_diverged() const {
        for (bool f : diverged)
            if (f) return true;
        return false;
    }
    double sup_u() const;
    double sup_v() const;
    /// Trapezoid-rule L2 norm over the x grid.
    double l2_u() const;
    double l2_v() const;
};

/// Q = -i[sigma3, <psi R>]: u = -2i <psi R>_12, v = +2i <psi R>_21, per x.
/// Solver failures at individual x values are flagged; completed rows are
/// retained.
PotentialSample reconstruct_potentials(const SpectralData& data, const std::vector<double>& x_grid,
                                       const SolverConfig& cfg);

/// Potential matrix from the moments of a solved field.
Mat2 potential_matrix(const Moments& m);

/// sup over k_samples of || centered-difference d_x psi - (-ik[sigma3,psi]
/// + Q psi) || at x0, with psi re-solved at x0 +- hx.
double akns_residual(const SpectralData& data, double x0, double hx,
                     const std::vector<Complex>& k_samples, const SolverConfig& cfg);

/// Theorem-shaped bound checks on a reconstructed sample: sup and L2 norms
/// of u, v against fitted-constant bounds of the form
/// M ||r_+|| / (1 - M' (||r_+|| + ||r_-||)).
VerificationReport potential_bounds_check(const PotentialSample& sample, const SpectralData& data,
                                          const NormParams& params, const ComponentGrids& grids,
                                          double fitted_m = 2.0, double fitted_mprime = 1.0);

struct LipschitzResult {
    double ratio = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
};

/// sup_x max(|u - u~|, |v - v~|) /
/// (||r_+ - r~_+||_{L^{q,2}} + ||r_- - r~_-||_{L^{q,2}}).
/// Rejects data whose L^{q,2} norms are not below B.
LipschitzResult lipschitz_probe(const SpectralData& a, const SpectralData& b,
                                const std::vector<double>& x_grid, const NormParams& params,
                                double B, const SolverConfig& cfg);

/// Stability across a shrinking-perturbation sequence: all pairwise ratios
/// within a factor 2.
bool lipschitz_ratios_stable(const std::vector<double>& ratios);

/// ||r_+||_{L^{q,2}(C)} + style norm of one spectral-data component.
double data_lq2_norm(const SpectralData& data, int sign, const NormParams& params,
                     const ComponentGrids& grids);

}  // namespace dbar

#endif
