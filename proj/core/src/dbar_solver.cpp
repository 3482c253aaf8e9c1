#include "dbar/dbar_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "dbar/norms.hpp"
#include "dbar/parallel.hpp"

namespace dbar {

ComponentGrids ComponentGrids::build(int nr, int ntheta) {
    ComponentGrids g;
    g.e1_plus = build_half_disk_grid(+1, nr, ntheta);
    g.e1_minus = build_half_disk_grid(-1, nr, ntheta);
    g.e2_plus = invert_grid(g.e1_minus);
    g.e2_minus = invert_grid(g.e1_plus);
    return g;
}

std::size_t ComponentGrids::component_size(int c) const {
    switch (c) {
        case kE1Plus:
            return e1_plus.nodes.size();
        case kE1Minus:
            return e1_minus.nodes.size();
        case kE2Plus:
            return e2_plus.source->nodes.size();
        default:
            return e2_minus.source->nodes.size();
    }
}

Complex ComponentGrids::point(int c, std::size_t i) const {
    switch (c) {
        case kE1Plus:
            return e1_plus.nodes[i];
        case kE1Minus:
            return e1_minus.nodes[i];
        case kE2Plus:
            return e2_plus.point(i);
        default:
            return e2_minus.point(i);
    }
}

std::size_t ComponentGrids::total_size() const {
    return component_size(0) + component_size(1) + component_size(2) + component_size(3);
}

PsiField4 PsiField4::identity(const ComponentGrids& g) {
    PsiField4 f;
    f.grids = &g;
    for (int c = 0; c < 4; ++c) f.values[c].assign(g.component_size(c), Mat2::identity());
    return f;
}

PsiField4 PsiField4::sample(const ComponentGrids& g, const MatrixEvaluator& fn) {
    PsiField4 f;
    f.grids = &g;
    for (int c = 0; c < 4; ++c) {
        f.values[c].reserve(g.component_size(c));
        for (std::size_t i = 0; i < g.component_size(c); ++i)
            f.values[c].push_back(fn(g.point(c, i)));
    }
    return f;
}

double PsiField4::sup_distance(const PsiField4& other) const {
    double m = 0.0;
    for (int c = 0; c < 4; ++c)
        for (std::size_t i = 0; i < values[c].size(); ++i)
            m = std::max(m, (values[c][i] - other.values[c][i]).frobenius());
    return m;
}

double PsiField4::sup_norm() const {
    double m = 0.0;
    for (int c = 0; c < 4; ++c)
        for (const Mat2& v : values[c]) m = std::max(m, v.frobenius());
    return m;
}

namespace {

// nilpotent_entry with the decomposition's boundedness certificate.
Complex checked_entry(int s, const SpectralData& data, double x, Complex k) {
    const Complex arg = Complex(0.0, -2.0 * s) * k * x;
    const Complex ef = std::exp(arg);
    if (std::abs(ef) > 1.0 + 1e-12)
        throw std::logic_error("apply_RTC: unbounded exponential inside an integrand");
    return (s > 0 ? data.r_plus(k) : data.r_minus(k)) * ef;
}

// Gauss-Legendre 8 on [-1,1] (half tables; nodes are symmetric).
constexpr double kGlX[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                            0.9602898564975363};
constexpr double kGlW[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                            0.1012285362903763};

// Adaptive integral of conj(z-k)/(z-k) dz along one parameterized edge.
// The integrand is unimodular; only its phase varies, on the scale of the
// distance to k, so each panel is resolved by GL-8 once the target is at
// least 1.5 panel lengths away from the panel midpoint.
template <class Map>
Complex adaptive_edge(const Map& zmap, double a, double b, Complex k, double len_per_t,
                      int depth) {
    const double mid = 0.5 * (a + b);
    const double len = len_per_t * (b - a);
    if (depth >= 12 || std::abs(zmap(mid).first - k) >= 1.5 * len) {
        Complex acc(0);
        const double h2 = 0.5 * (b - a);
        for (int i = 0; i < 4; ++i) {
            for (double sgn : {-1.0, 1.0}) {
                const auto [z, zp] = zmap(mid + sgn * h2 * kGlX[i]);
                const Complex d = z - k;
                acc += kGlW[i] * std::conj(d) / d * zp;
            }
        }
        return acc * h2;
    }
    return adaptive_edge(zmap, a, mid, k, len_per_t, depth + 1) +
           adaptive_edge(zmap, mid, b, k, len_per_t, depth + 1);
}

// Exact integral over the polar cell [rlo,rhi] x [thlo,thhi] of
// dsigma / (z - k), valid for k inside, near, or far from the cell:
// d/dconj(z) of conj(z-k)/(z-k) is 1/(z-k) away from z = k, and the
// epsilon-circle around an interior target contributes nothing, so the
// area integral equals (1/2i) times the counterclockwise boundary
// integral of conj(z-k)/(z-k) dz.
Complex polar_cell_kernel(double rlo, double rhi, double thlo, double thhi, Complex k) {
    const Complex elo = std::polar(1.0, thlo);
    const Complex ehi = std::polar(1.0, thhi);
    const auto rad_lo = [&](double t) { return std::pair<Complex, Complex>{t * elo, elo}; };
    const auto rad_hi = [&](double t) { return std::pair<Complex, Complex>{t * ehi, ehi}; };
    const auto arc_out = [&](double th) {
        const Complex z = std::polar(rhi, th);
        return std::pair<Complex, Complex>{z, Complex(0, 1) * z};
    };
    const auto arc_in = [&](double th) {
        const Complex z = std::polar(rlo, th);
        return std::pair<Complex, Complex>{z, Complex(0, 1) * z};
    };
    const Complex acc = adaptive_edge(rad_lo, rlo, rhi, k, 1.0, 0) +
                        adaptive_edge(arc_out, thlo, thhi, k, rhi, 0) -
                        adaptive_edge(rad_hi, rlo, rhi, k, 1.0, 0) -
                        adaptive_edge(arc_in, thlo, thhi, k, rlo, 0);
    return acc / Complex(0.0, 2.0);
}

}  // namespace

Mat2 active_R(const SpectralData& data, double x, Complex k) {
    if (x == 0.0) throw std::invalid_argument("active_R: x = 0 undefined");
    const bool plus_side = k.imag() >= 0.0;
    const int s = (x > 0.0) == plus_side ? -1 : +1;
    Mat2 w;
    if (s < 0)
        w(1, 0) = nilpotent_entry(-1, data, x, k);
    else
        w(0, 1) = nilpotent_entry(+1, data, x, k);
    return w;
}

RtcApplier::RtcApplier(const PsiField4& psi, const SpectralData& data, double x) {
    if (x == 0.0)
        throw std::invalid_argument("apply_RTC: x = 0 (half-line indicator undefined)");
    const ComponentGrids& g = *psi.grids;
    dr_ = g.e1_plus.nr > 0 ? 1.0 / g.e1_plus.nr : 0.0;
    dth_ = g.e1_plus.ntheta > 0 ? kPi / g.e1_plus.ntheta : 0.0;

    // Active (nilpotent sign, half-plane) pairing for the sign of x.
    struct PairSpec {
        int s;      // -1: w_-, +1: w_+
        int sigma;  // +1: C^+, -1: C^-
    };
    const std::array<PairSpec, 2> spec = x > 0.0
                                             ? std::array<PairSpec, 2>{{{-1, +1}, {+1, -1}}}
                                             : std::array<PairSpec, 2>{{{-1, -1}, {+1, +1}}};

    for (int p = 0; p < 2; ++p) {
        const auto [s, sigma] = spec[p];
        Piece& piece = pieces_[p];
        piece.col = s < 0 ? 0 : 1;

        const QuadratureGrid& igrid = sigma > 0 ? g.e1_plus : g.e1_minus;
        const auto& ipsi = psi.values[sigma > 0 ? kE1Plus : kE1Minus];
        piece.nr = igrid.nr;
        piece.ntheta = igrid.ntheta;
        piece.thbase = sigma > 0 ? 0.0 : kPi;
        piece.dens_u.assign(igrid.nodes.size(), Complex(0));
        piece.dens_l.assign(igrid.nodes.size(), Complex(0));
        for (std::size_t i = 0; i < igrid.nodes.size(); ++i) {
            const Complex z = igrid.nodes[i];
            const Complex e = checked_entry(s, data, x, z);
            if (e == Complex(0)) continue;
            const Mat2& pv = ipsi[i];
            const Complex du = (s < 0 ? pv(0, 1) : pv(0, 0)) * e;
            const Complex dl = (s < 0 ? pv(1, 1) : pv(1, 0)) * e;
            piece.dens_u[i] = du;
            piece.dens_l[i] = dl;
            piece.z.push_back(z);
            piece.su.push_back(du * igrid.weights[i]);
            piece.sl.push_back(dl * igrid.weights[i]);
            piece.idx.push_back(static_cast<int>(i));
        }

        // Exterior piece over E2^sigma, written on the opposite half disk via
        // k -> 1/z with the conj(z)^-2 kernel weighting.
        const QuadratureGrid& egrid = sigma > 0 ? g.e1_minus : g.e1_plus;
        const auto& epsi = psi.values[sigma > 0 ? kE2Plus : kE2Minus];
        for (std::size_t i = 0; i < egrid.nodes.size(); ++i) {
            const Complex z = egrid.nodes[i];
            const Complex zc = std::conj(z);
            const Complex c =
                checked_entry(s, data, x, 1.0 / z) / (zc * zc) * egrid.weights[i];
            if (c == Complex(0)) continue;
            const Mat2& pv = epsi[i];
            piece.ez.push_back(z);
            piece.einv.push_back(1.0 / z);
            piece.esu.push_back((s < 0 ? pv(0, 1) : pv(0, 0)) * c);
            piece.esl.push_back((s < 0 ? pv(1, 1) : pv(1, 0)) * c);
            const double rho = egrid.cell_radius(i);
            piece.erho2.push_back(rho * rho);
        }
    }
}

Mat2 RtcApplier::operator()(Complex k) const {
    Mat2 out;
    const double kn2 = std::norm(k);
    // Nearest cell indices in each half-disk grid. The near-field window is
    // a fixed 5x5 index block around the cell containing (or nearest to) the
    // target, so it does not shift under the small finite-difference moves
    // used by dbar_residual; within the window each cell's constant density
    // is integrated against the exact cell kernel, which carries the correct
    // local dbar density everywhere inside the window.
    const double rk = std::abs(k);
    const double thk = std::atan2(k.imag(), k.real());
    for (const Piece& piece : pieces_) {
        Complex au(0), al(0);
        int irlo = 0, irhi = -1, itlo = 0, ithi = -1;
        if (piece.nr > 0 && piece.ntheta > 0) {
            const int ir0 = std::clamp(static_cast<int>(rk / dr_), 0, piece.nr - 1);
            double lam = thk - piece.thbase;
            while (lam < 0.0) lam += 2.0 * kPi;
            while (lam >= 2.0 * kPi) lam -= 2.0 * kPi;
            int it0;
            if (lam <= kPi)
                it0 = std::min(static_cast<int>(lam / dth_), piece.ntheta - 1);
            else  // other half-plane: nearest angular edge of this grid
                it0 = (lam - kPi < 2.0 * kPi - lam) ? piece.ntheta - 1 : 0;
            irlo = std::max(0, ir0 - 2);
            irhi = std::min(piece.nr - 1, ir0 + 2);
            itlo = std::max(0, it0 - 2);
            ithi = std::min(piece.ntheta - 1, it0 + 2);
        }
        const std::size_t ni = piece.z.size();
        for (std::size_t i = 0; i < ni; ++i) {
            const int ir = piece.idx[i] / piece.ntheta;
            const int it = piece.idx[i] % piece.ntheta;
            if (ir >= irlo && ir <= irhi && it >= itlo && it <= ithi) continue;
            const Complex inv = 1.0 / (piece.z[i] - k);
            au += piece.su[i] * inv;
            al += piece.sl[i] * inv;
        }
        for (int ir = irlo; ir <= irhi; ++ir) {
            for (int it = itlo; it <= ithi; ++it) {
                const std::size_t i = static_cast<std::size_t>(ir) * piece.ntheta + it;
                const Complex du = piece.dens_u[i];
                const Complex dl = piece.dens_l[i];
                if (du == Complex(0) && dl == Complex(0)) continue;
                const Complex ker =
                    polar_cell_kernel(ir * dr_, (ir + 1) * dr_, piece.thbase + it * dth_,
                                      piece.thbase + (it + 1) * dth_, k);
                au += du * ker;
                al += dl * ker;
            }
        }
        const std::size_t ne = piece.ez.size();
        for (std::size_t i = 0; i < ne; ++i) {
            // kernel 1/z + k/(1 - kz) == 1/z - 1/(z - 1/k), robust at k = 0
            const Complex q = 1.0 - k * piece.ez[i];
            if (std::norm(q) < kn2 * piece.erho2[i]) continue;
            const Complex ker = piece.einv[i] + k / q;
            au += piece.esu[i] * ker;
            al += piece.esl[i] * ker;
        }
        out(0, piece.col) += -au / kPi;
        out(1, piece.col) += -al / kPi;
    }
    return out;
}

std::vector<Mat2> RtcApplier::batch(const std::vector<Complex>& targets) const {
    std::vector<Mat2> out(targets.size());
    parallel_for(targets.size(), [&](std::size_t t) { out[t] = (*this)(targets[t]); });
    return out;
}

std::vector<Mat2> apply_RTC(const PsiField4& psi, const SpectralData& data, double x,
                            const std::vector<Complex>& targets) {
    const ComponentGrids& g = *psi.grids;
    for (Complex k : targets) {
        for (int c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < g.component_size(c); ++i)
                if (std::abs(g.point(c, i) - k) < 1e-14)
                    throw std::invalid_argument("apply_RTC: target exactly on a node");
    }
    return RtcApplier(psi, data, x).batch(targets);
}

PsiField4 apply_RTC_on_grid(const PsiField4& psi, const SpectralData& data, double x) {
    const RtcApplier op(psi, data, x);
    const ComponentGrids& g = *psi.grids;
    PsiField4 out;
    out.grids = &g;
    for (int c = 0; c < 4; ++c) {
        out.values[c].resize(g.component_size(c));
        parallel_for(g.component_size(c),
                     [&, c](std::size_t i) { out.values[c][i] = op(g.point(c, i)); });
    }
    return out;
}

SolveResult solve_psi(const SpectralData& data, double x, const ComponentGrids& grids, double tol,
                      int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("solve_psi: tol > 0 required");
    PsiField4 psi = PsiField4::identity(grids);
    const PsiField4 eye = PsiField4::identity(grids);

    double prev_change = std::numeric_limits<double>::infinity();
    double last_ratio = 0.0;
    int growth_streak = 0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        PsiField4 next = apply_RTC_on_grid(psi, data, x);
        for (int c = 0; c < 4; ++c)
            for (auto& m : next.values[c]) m += Mat2::identity();
        const double change = next.sup_distance(psi);
        if (std::isfinite(prev_change) && prev_change > 0.0) last_ratio = change / prev_change;
        psi = std::move(next);
        if (change <= tol) {
            SolveResult res;
            res.iterations = iter;
            res.contraction_ratio = last_ratio;
            // fixed-point residual with one extra application
            PsiField4 op = apply_RTC_on_grid(psi, data, x);
            double r = 0.0;
            for (int c = 0; c < 4; ++c)
                for (std::size_t i = 0; i < psi.values[c].size(); ++i)
                    r = std::max(r, (psi.values[c][i] - Mat2::identity() - op.values[c][i])
                                        .frobenius());
            res.residual = r;
            res.psi = std::move(psi);
            return res;
        }
        if (change > prev_change) {
            if (++growth_streak >= 5)
                throw DivergenceError("solve_psi: diverging (small-norm condition violated)");
        } else {
            growth_streak = 0;
        }
        prev_change = change;
    }
    throw NonConvergenceError("solve_psi: no convergence after max_iter iterations");
}

namespace {

std::uint64_t mix_u64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
double u01(std::uint64_t& state) { return (mix_u64(state) >> 11) * 0x1.0p-53; }

// Bounded smooth random matrix field: identity-scaled offset plus a few
// Gaussian bumps. Bounded on the whole plane, so it lies in L^{p,0}.
MatrixEvaluator random_test_field(std::uint64_t& state) {
    struct Bump {
        Complex center;
        double width;
        Mat2 coeff;
    };
    auto rc = [&state]() {
        return Complex(2.0 * u01(state) - 1.0, 2.0 * u01(state) - 1.0);
    };
    Complex c0 = rc();
    std::vector<Bump> bumps;
    for (int j = 0; j < 3; ++j) {
        Bump b;
        b.center = 1.5 * rc();
        b.width = 0.4 + 0.8 * u01(state);
        for (int e = 0; e < 4; ++e) b.coeff.m[e] = 0.5 * rc();
        bumps.push_back(b);
    }
    return [c0, bumps](Complex k) {
        Mat2 v = Mat2::identity() * c0;
        for (const auto& b : bumps) {
            const double g = std::exp(-std::norm(k - b.center) / (b.width * b.width));
            v += b.coeff * Complex(g);
        }
        return v;
    };
}

double lp0_whole_plane_norm(const PsiField4& f, double p) {
    const ComponentGrids& g = *f.grids;
    double interior = 0.0, image = 0.0;
    for (std::size_t i = 0; i < g.e1_plus.nodes.size(); ++i)
        interior += g.e1_plus.weights[i] * std::pow(f.values[kE1Plus][i].frobenius(), p);
    for (std::size_t i = 0; i < g.e1_minus.nodes.size(); ++i)
        interior += g.e1_minus.weights[i] * std::pow(f.values[kE1Minus][i].frobenius(), p);
    // f_(0)(z) = f(1/z) sampled on E1 is exactly the stored E2 data.
    for (std::size_t i = 0; i < g.e1_minus.nodes.size(); ++i)
        image += g.e1_minus.weights[i] * std::pow(f.values[kE2Plus][i].frobenius(), p);
    for (std::size_t i = 0; i < g.e1_plus.nodes.size(); ++i)
        image += g.e1_plus.weights[i] * std::pow(f.values[kE2Minus][i].frobenius(), p);
    return std::pow(interior, 1.0 / p) + std::pow(image, 1.0 / p);
}

}  // namespace

OperatorEstimate estimate_operator_norm(const SpectralData& data, const NormParams& params,
                                        const std::vector<double>& x_samples, int trials,
                                        std::uint64_t seed, const ComponentGrids& grids) {
    if (trials < 10) throw std::invalid_argument("estimate_operator_norm: trials >= 10");
    OperatorEstimate est;
    est.p = params.p;
    est.q = params.q;
    est.alpha = params.alpha;

    std::uint64_t state = seed ^ 0x9d2c5680u;
    double best_power = 0.0;
    double best_holder = 0.0;
    for (int t = 0; t < trials; ++t) {
        MatrixEvaluator field = random_test_field(state);
        PsiField4 phi = PsiField4::sample(grids, field);
        const double n0 = lp0_whole_plane_norm(phi, params.p);
        if (n0 <= 0.0) continue;
        for (int c = 0; c < 4; ++c)
            for (auto& m : phi.values[c]) m *= Complex(1.0 / n0);

        for (double x : x_samples) {
            const RtcApplier op(phi, data, x);
            MatrixEvaluator y = [&op](Complex k) { return op(k); };
            const HolderEstimate he = holder_norm_estimate(y, params.alpha,
                                                           Region::disk({0, 0}, 2.0), 250,
                                                           mix_u64(state));
            best_holder = std::max(best_holder, he.sup_norm + he.seminorm);

            // Power-iteration ratio: lower-bounds the spectral radius, which
            // is what the Neumann contraction sees.
            PsiField4 y1 = apply_RTC_on_grid(phi, data, x);
            const double ny1 = y1.sup_norm();
            if (ny1 > 0.0) {
                PsiField4 y2 = apply_RTC_on_grid(y1, data, x);
                best_power = std::max(best_power, y2.sup_norm() / ny1);
            }
        }
    }
    est.norm_lower_bound = best_power;
    est.holder_bound = best_holder;
    est.small_norm_margin = 1.0 - best_power;
    return est;
}

Mat2 wirtinger_fd(const MatrixEvaluator& f, Complex k, double step) {
    const Complex dx(step, 0.0), dy(0.0, step);
    const Mat2 gx = (f(k + dx) - f(k - dx)) * Complex(1.0 / (2.0 * step));
    const Mat2 gy = (f(k + dy) - f(k - dy)) * Complex(1.0 / (2.0 * step));
    return (gx + Complex(0.0, 1.0) * gy) * Complex(0.5);
}

double dbar_residual(const PsiField4& psi, const SpectralData& data, double x) {
    const ComponentGrids& g = *psi.grids;
    const RtcApplier op(psi, data, x);
    MatrixEvaluator psi_eval = [&op](Complex k) { return Mat2::identity() + op(k); };

    // Length scale of the quadrature cells: the radial spacing. (The grid's
    // h field mixes in the angular step, which is an angle, not a length.)
    const double dr = 1.0 / std::max(1, std::max(g.e1_plus.nr, g.e1_minus.nr));

    std::vector<std::pair<int, std::size_t>> safe;
    for (int c : {kE1Plus, kE1Minus}) {
        const QuadratureGrid& grid = c == kE1Plus ? g.e1_plus : g.e1_minus;
        for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
            const Complex z = grid.nodes[i];
            if (std::abs(z) < 1.0 - 3.0 * dr && std::abs(z.imag()) > 3.0 * dr)
                safe.push_back({c, i});
        }
    }
    const std::size_t stride = std::max<std::size_t>(1, safe.size() / 60);
    std::vector<double> residuals((safe.size() + stride - 1) / stride, 0.0);
    parallel_for(residuals.size(), [&](std::size_t t) {
        const auto [c, i] = safe[t * stride];
        const QuadratureGrid& grid = c == kE1Plus ? g.e1_plus : g.e1_minus;
        const Complex z = grid.nodes[i];
        // Keep the stencil well inside the node's own equal-area disk, where
        // the interpolant carries the correct local dbar density. The
        // quadratic scaling in the cell radius suppresses the finite-
        // difference noise of the neighboring poles (O((step/rho)^2)).
        const double rho = grid.cell_radius(i);
        const double step = std::min(2.0 * rho * rho, 0.5 * rho);
        const Mat2 lhs = wirtinger_fd(psi_eval, z, step);
        // The right-hand side uses the interpolant's own value, so a field
        // that is not a fixed point leaves an O(mismatch * ||R||) residual.
        const Mat2 rhs = psi_eval(z) * active_R(data, x, z);
        residuals[t] = (lhs - rhs).frobenius();
    });
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

}  // namespace dbar
