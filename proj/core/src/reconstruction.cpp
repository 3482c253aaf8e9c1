#include "dbar/reconstruction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dbar/norms.hpp"

namespace dbar {

namespace {

// <psi w_s> over C^sigma = interior E1 quadrature plus the inverted
// exterior quadrature (jacobian |z|^-4). The bracket carries the
// (1/2 pi i) dk ^ dconj(k) = -(1/pi) dsigma normalization.
Mat2 half_plane_moment(const PsiField4& psi, const SpectralData& data, double x, int s,
                       int sigma) {
    const ComponentGrids& g = *psi.grids;
    const QuadratureGrid& igrid = sigma > 0 ? g.e1_plus : g.e1_minus;
    const auto& ipsi = psi.values[sigma > 0 ? kE1Plus : kE1Minus];
    const int col = s < 0 ? 0 : 1;

    Complex upper(0), lower(0);
    for (std::size_t i = 0; i < igrid.nodes.size(); ++i) {
        const Complex c = nilpotent_entry(s, data, x, igrid.nodes[i]) * igrid.weights[i];
        if (c == Complex(0)) continue;
        const Mat2& pv = ipsi[i];
        upper += (s < 0 ? pv(0, 1) : pv(0, 0)) * c;
        lower += (s < 0 ? pv(1, 1) : pv(1, 0)) * c;
    }

    const InversionImage& egrid = sigma > 0 ? g.e2_plus : g.e2_minus;
    const auto& epsi = psi.values[sigma > 0 ? kE2Plus : kE2Minus];
    for (std::size_t i = 0; i < egrid.source->nodes.size(); ++i) {
        const Complex c =
            nilpotent_entry(s, data, x, egrid.point(i)) * egrid.jacobian_weights[i];
        if (c == Complex(0)) continue;
        const Mat2& pv = epsi[i];
        upper += (s < 0 ? pv(0, 1) : pv(0, 0)) * c;
        lower += (s < 0 ? pv(1, 1) : pv(1, 0)) * c;
    }

    Mat2 out;
    out(0, col) = -upper / kPi;
    out(1, col) = -lower / kPi;
    return out;
}

double trapezoid_l2(const std::vector<double>& x, const std::vector<Complex>& f) {
    if (x.size() < 2) return x.empty() ? 0.0 : std::abs(f[0]);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        acc += 0.5 * (x[i + 1] - x[i]) * (std::norm(f[i]) + std::norm(f[i + 1]));
    return std::sqrt(acc);
}

}  // namespace

Moments compute_moments(const PsiField4& psi, const SpectralData& data, double x) {
    if (x == 0.0) throw std::invalid_argument("compute_moments: x = 0 undefined");
    Moments m;
    m.x = x;
    // Same half-plane pairing the operator keeps: (w_-, C^+) and (w_+, C^-)
    // for x > 0, swapped for x < 0.
    const int sigma_minus = x > 0.0 ? +1 : -1;
    m.piece_minus = half_plane_moment(psi, data, x, -1, sigma_minus);
    m.piece_plus = half_plane_moment(psi, data, x, +1, -sigma_minus);
    m.total = m.piece_minus + m.piece_plus;
    m.diagonal_magnitude =
        std::sqrt(std::norm(m.total(0, 0)) + std::norm(m.total(1, 1)));
    return m;
}

Mat2 potential_matrix(const Moments& m) {
    return Complex(0.0, -1.0) * sigma3_commutator(m.total);
}

double PotentialSample::sup_u() const {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!failed[i]) s = std::max(s, std::abs(u[i]));
    return s;
}

double PotentialSample::sup_v() const {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!failed[i]) s = std::max(s, std::abs(v[i]));
    return s;
}

double PotentialSample::l2_u() const { return trapezoid_l2(x_grid, u); }
double PotentialSample::l2_v() const { return trapezoid_l2(x_grid, v); }

PotentialSample reconstruct_potentials(const SpectralData& data, const std::vector<double>& x_grid,
                                       const SolverConfig& cfg) {
    for (double x : x_grid)
        if (x == 0.0)
            throw std::invalid_argument("reconstruct_potentials: x grid must exclude 0");

    const ComponentGrids grids = ComponentGrids::build(cfg.nr, cfg.ntheta);
    PotentialSample out;
    out.x_grid = x_grid;
    out.u.assign(x_grid.size(), Complex(0));
    out.v.assign(x_grid.size(), Complex(0));
    out.iterations.assign(x_grid.size(), 0);
    out.residuals.assign(x_grid.size(), 0.0);
    out.failed.assign(x_grid.size(), false);
    out.diverged.assign(x_grid.size(), false);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        try {
            SolveResult sol = solve_psi(data, x_grid[i], grids, cfg.tol, cfg.max_iter);
            const Mat2 q = potential_matrix(compute_moments(sol.psi, data, x_grid[i]));
            out.u[i] = q(0, 1);
            out.v[i] = q(1, 0);
            out.iterations[i] = sol.iterations;
            out.residuals[i] = sol.residual;
        } catch (const NonConvergenceError&) {
            out.failed[i] = true;
            out.u[i] = out.v[i] = Complex(nan, nan);
            out.residuals[i] = nan;
        } catch (const DivergenceError&) {
            out.failed[i] = true;
            out.diverged[i] = true;
            out.u[i] = out.v[i] = Complex(nan, nan);
            out.residuals[i] = nan;
        }
    }
    return out;
}

double akns_residual(const SpectralData& data, double x0, double hx,
                     const std::vector<Complex>& k_samples, const SolverConfig& cfg) {
    if (hx <= 0.0) throw std::invalid_argument("akns_residual: hx > 0 required");
    if (std::abs(x0) <= hx)
        throw std::invalid_argument("akns_residual: the stencil must not cross x = 0");

    const ComponentGrids grids = ComponentGrids::build(cfg.nr, cfg.ntheta);
    const SolveResult sol_m = solve_psi(data, x0 - hx, grids, cfg.tol, cfg.max_iter);
    const SolveResult sol_0 = solve_psi(data, x0, grids, cfg.tol, cfg.max_iter);
    const SolveResult sol_p = solve_psi(data, x0 + hx, grids, cfg.tol, cfg.max_iter);

    const Mat2 q = potential_matrix(compute_moments(sol_0.psi, data, x0));
    const RtcApplier op_m(sol_m.psi, data, x0 - hx);
    const RtcApplier op_0(sol_0.psi, data, x0);
    const RtcApplier op_p(sol_p.psi, data, x0 + hx);

    double worst = 0.0;
    for (Complex k : k_samples) {
        const Mat2 psi_m = Mat2::identity() + op_m(k);
        const Mat2 psi_0 = Mat2::identity() + op_0(k);
        const Mat2 psi_p = Mat2::identity() + op_p(k);
        const Mat2 dpsi = (psi_p - psi_m) * Complex(1.0 / (2.0 * hx));
        const Mat2 rhs = Complex(0.0, -1.0) * k * sigma3_commutator(psi_0) + q * psi_0;
        worst = std::max(worst, (dpsi - rhs).frobenius());
    }
    return worst;
}

double data_lq2_norm(const SpectralData& data, int sign, const NormParams& params,
                     const ComponentGrids& grids) {
    ScalarEvaluator f = [&data, sign](Complex k) {
        return sign > 0 ? data.r_plus(k) : data.r_minus(k);
    };
    return lpnu_norm(f, params.q, params.nu, grids.e1_plus, grids.e1_minus, 0);
}

VerificationReport potential_bounds_check(const PotentialSample& sample, const SpectralData& data,
                                          const NormParams& params, const ComponentGrids& grids,
                                          double fitted_m, double fitted_mprime) {
    const double np = data_lq2_norm(data, +1, params, grids);
    const double nm = data_lq2_norm(data, -1, params, grids);
    const double denom = 1.0 - fitted_mprime * (np + nm);

    VerificationReport rep;
    rep.add("small_data_margin", fitted_mprime * (np + nm), 1.0, 0.0, denom > 0.0);
    if (denom <= 0.0) return rep;

    const double bound_u = fitted_m * np / denom;
    const double bound_v = fitted_m * nm / denom;
    double span = 0.0;
    if (sample.x_grid.size() >= 2) span = sample.x_grid.back() - sample.x_grid.front();
    const double l2_factor = std::sqrt(std::max(span, 1.0));

    rep.add("sup_u_vs_data_norm", sample.sup_u(), bound_u, 0.0, sample.sup_u() <= bound_u);
    rep.add("sup_v_vs_data_norm", sample.sup_v(), bound_v, 0.0, sample.sup_v() <= bound_v);
    rep.add("l2_u_vs_data_norm", sample.l2_u(), bound_u * l2_factor, 0.0,
            sample.l2_u() <= bound_u * l2_factor);
    rep.add("l2_v_vs_data_norm", sample.l2_v(), bound_v * l2_factor, 0.0,
            sample.l2_v() <= bound_v * l2_factor);
    return rep;
}

LipschitzResult lipschitz_probe(const SpectralData& a, const SpectralData& b,
                                const std::vector<double>& x_grid, const NormParams& params,
                                double B, const SolverConfig& cfg) {
    const ComponentGrids grids = ComponentGrids::build(cfg.nr, cfg.ntheta);
    for (const SpectralData* d : {&a, &b}) {
        const double n =
            data_lq2_norm(*d, +1, params, grids) + data_lq2_norm(*d, -1, params, grids);
        if (n >= B)
            throw std::invalid_argument(
                "lipschitz_probe: spectral data norm exceeds the ball radius B");
    }

    ScalarEvaluator dplus = [&a, &b](Complex k) { return a.r_plus(k) - b.r_plus(k); };
    ScalarEvaluator dminus = [&a, &b](Complex k) { return a.r_minus(k) - b.r_minus(k); };
    const double denom = lpnu_norm(dplus, params.q, params.nu, grids.e1_plus, grids.e1_minus, 0) +
                         lpnu_norm(dminus, params.q, params.nu, grids.e1_plus, grids.e1_minus, 0);

    const PotentialSample sa = reconstruct_potentials(a, x_grid, cfg);
    const PotentialSample sb = reconstruct_potentials(b, x_grid, cfg);
    double num = 0.0;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (sa.failed[i] || sb.failed[i]) continue;
        num = std::max(num, std::abs(sa.u[i] - sb.u[i]));
        num = std::max(num, std::abs(sa.v[i] - sb.v[i]));
    }

    LipschitzResult res;
    res.numerator = num;
    res.denominator = denom;
    res.ratio = denom > 0.0 ? num / denom : 0.0;
    return res;
}

bool lipschitz_ratios_stable(const std::vector<double>& ratios) {
    if (ratios.empty()) return false;
    double lo = ratios.front(), hi = ratios.front();
    for (double r : ratios) {
        if (!(r > 0.0) || !std::isfinite(r)) return false;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return hi <= 2.0 * lo;
}

}  // namespace dbar
