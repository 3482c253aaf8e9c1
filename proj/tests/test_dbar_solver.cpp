#include <doctest.h>

#include <cmath>

#include "dbar/dbar_solver.hpp"
#include "dbar/norms.hpp"
#include "oracles.hpp"

using namespace dbar;

namespace {
const ComponentGrids& grids24() {
    static ComponentGrids g = ComponentGrids::build(24, 24);
    return g;
}
const SpectralData& fixture() {
    static SpectralData d = SpectralData::annulus_bump({0.4, 0.0}, {0.3, 0.0});
    return d;
}
}  // namespace

TEST_CASE("component grids: four components of matching sizes") {
    const ComponentGrids& g = grids24();
    CHECK(g.total_size() == 4 * 24 * 24);
    // exterior points really lie outside the unit disk in the right half
    for (std::size_t i = 0; i < g.component_size(kE2Plus); ++i) {
        const Complex k = g.point(kE2Plus, i);
        CHECK(std::abs(k) > 1.0);
        CHECK(k.imag() > 0.0);
    }
}

TEST_CASE("apply_RTC: zero data gives the zero field") {
    const PsiField4 id = PsiField4::identity(grids24());
    const auto vals = apply_RTC(id, SpectralData::zero(), 0.5, {{0.3, 0.2}, {1.4, -0.5}});
    for (const Mat2& v : vals) CHECK(v.frobenius() == 0.0);
}

TEST_CASE("apply_RTC: x = 0 and node targets are rejected") {
    const PsiField4 id = PsiField4::identity(grids24());
    CHECK_THROWS_AS(apply_RTC(id, fixture(), 0.0, {{0.3, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(apply_RTC(id, fixture(), 0.5, {grids24().point(kE1Plus, 5)}),
                    std::invalid_argument);
}

TEST_CASE("exponential boundedness certificate of the decomposition") {
    // For x > 0 and Im z > 0 the kept integrand factor is e^{2izx}.
    std::uint64_t state = 31;
    auto rnd = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (int i = 0; i < 10000; ++i) {
        const Complex z(4.0 * rnd() - 2.0, 2.0 * rnd() + 1e-9);
        const double x = 3.0 * rnd() + 1e-9;
        CHECK(std::abs(std::exp(Complex(0.0, 2.0) * z * x)) <= 1.0);
    }
}

TEST_CASE("apply_RTC agrees with the brute-force half-plane oracle (psi = I)") {
    const ComponentGrids grids = ComponentGrids::build(192, 192);
    const PsiField4 id = PsiField4::identity(grids);
    for (double x : {0.5, -0.5}) {
        const std::vector<Complex> ks{{0.355, 0.205}, {-0.455, 0.305}, {0.105, -0.555}};
        const auto got = apply_RTC(id, fixture(), x, ks);
        MatrixEvaluator ident = [](Complex) { return Mat2::identity(); };
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const Mat2 ref = oracles::brute_force_rtc(ident, fixture(), x, ks[i], 1024);
            CHECK((got[i] - ref).frobenius() < 1e-3 * std::max(1.0, ref.frobenius()));
        }
    }
}

TEST_CASE("solve_psi: zero data converges to the identity immediately") {
    const SolveResult res = solve_psi(SpectralData::zero(), 0.5, grids24(), 1e-12, 10);
    CHECK(res.iterations == 1);
    CHECK(res.residual == 0.0);
    CHECK(res.psi.sup_distance(PsiField4::identity(grids24())) == 0.0);
}

TEST_CASE("solve_psi: fixture converges with a contracting tail") {
    const SolveResult res = solve_psi(fixture(), 0.5, grids24(), 1e-10, 50);
    CHECK(res.iterations <= 50);
    CHECK(res.residual < 1e-8);
    CHECK(res.contraction_ratio < 1.0);
}

TEST_CASE("solve_psi: second Neumann term scales quadratically in the amplitude") {
    std::vector<double> eps{1e-2, 1e-3};
    std::vector<double> errs;
    for (double e : eps) {
        const SpectralData d = fixture().scaled(Complex(e / 0.4));
        const SolveResult res = solve_psi(d, 0.5, grids24(), 1e-13, 60);
        PsiField4 first = apply_RTC_on_grid(PsiField4::identity(grids24()), d, 0.5);
        for (int c = 0; c < 4; ++c)
            for (auto& m : first.values[c]) m += Mat2::identity();
        errs.push_back(res.psi.sup_distance(first));
    }
    CHECK(oracles::loglog_slope(eps, errs) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("solve_psi: super-critical amplitude raises Divergence") {
    const SpectralData big = SpectralData::annulus_bump({40.0, 0.0}, {40.0, 0.0});
    CHECK_THROWS_AS(solve_psi(big, 0.5, grids24(), 1e-10, 60), DivergenceError);
}

TEST_CASE("solve_psi: exhausted iteration budget raises NonConvergence") {
    CHECK_THROWS_AS(solve_psi(fixture(), 0.5, grids24(), 1e-14, 2), NonConvergenceError);
}

TEST_CASE("estimate_operator_norm: zero data") {
    const NormParams np = NormParams::from_pq(8.0, 8.0);
    const OperatorEstimate est =
        estimate_operator_norm(SpectralData::zero(), np, {0.5}, 10, 3, grids24());
    CHECK(est.norm_lower_bound == 0.0);
    CHECK(est.small_norm());
    CHECK_THROWS_AS(estimate_operator_norm(SpectralData::zero(), np, {0.5}, 5, 3, grids24()),
                    std::invalid_argument);
}

TEST_CASE("estimate_operator_norm: homogeneous in the data amplitude") {
    const NormParams np = NormParams::from_pq(8.0, 8.0);
    const OperatorEstimate a =
        estimate_operator_norm(fixture(), np, {0.5}, 10, 3, grids24());
    const OperatorEstimate b =
        estimate_operator_norm(fixture().scaled(Complex(2.0)), np, {0.5}, 10, 3, grids24());
    CHECK(b.norm_lower_bound == doctest::Approx(2.0 * a.norm_lower_bound).epsilon(1e-8));
}

TEST_CASE("estimate_operator_norm: lower bound consistent with observed contraction") {
    const NormParams np = NormParams::from_pq(8.0, 8.0);
    const SolveResult res = solve_psi(fixture(), 0.5, grids24(), 1e-10, 50);
    const OperatorEstimate est =
        estimate_operator_norm(fixture(), np, {0.5}, 10, 3, grids24());
    CHECK(est.norm_lower_bound <= res.contraction_ratio + 0.05);
}

TEST_CASE("wirtinger_fd: conj(k) has derivative 1, k has derivative 0") {
    MatrixEvaluator f = [](Complex k) { return Mat2::identity() * std::conj(k); };
    MatrixEvaluator g = [](Complex k) { return Mat2::identity() * k; };
    const Mat2 df = wirtinger_fd(f, {0.3, 0.2}, 1e-5);
    const Mat2 dg = wirtinger_fd(g, {0.3, 0.2}, 1e-5);
    CHECK((df - Mat2::identity()).frobenius() < 1e-9);
    CHECK(dg.frobenius() < 1e-9);
}

TEST_CASE("dbar_residual: zero data gives exactly zero") {
    const SolveResult res = solve_psi(SpectralData::zero(), 0.5, grids24(), 1e-12, 10);
    CHECK(dbar_residual(res.psi, SpectralData::zero(), 0.5) == 0.0);
}

TEST_CASE("dbar_residual: decreases under grid refinement") {
    double prev = -1.0;
    for (int n : {16, 32}) {
        const ComponentGrids g = ComponentGrids::build(n, n);
        const SolveResult res = solve_psi(fixture(), 0.5, g, 1e-11, 60);
        const double r = dbar_residual(res.psi, fixture(), 0.5);
        if (prev >= 0.0) CHECK(r < prev / 1.5);
        prev = r;
    }
}

TEST_CASE("dbar_residual: detects a deliberately wrong field") {
    // The converged solution satisfies the equation to discretization
    // error; a constant off-diagonal perturbation breaks it by O(perturbation
    // times data amplitude), which must dominate that floor.
    const ComponentGrids g = ComponentGrids::build(32, 32);
    const SolveResult res = solve_psi(fixture(), 0.5, g, 1e-11, 60);
    const double r_ok = dbar_residual(res.psi, fixture(), 0.5);
    PsiField4 wrong = res.psi;
    for (int c = 0; c < 4; ++c)
        for (auto& m : wrong.values[c]) m(0, 1) += Complex(0.3, 0.0);
    const double r_bad = dbar_residual(wrong, fixture(), 0.5);
    CHECK(r_bad > 3.0 * r_ok);
}

TEST_CASE("active_R keeps one nilpotent half per half-plane") {
    const SpectralData d = fixture();
    const Complex kp(0.5, 0.3), km(0.5, -0.3);
    // x > 0: w_- on C^+, w_+ on C^-
    CHECK(active_R(d, 0.5, kp)(0, 1) == Complex(0));
    CHECK(active_R(d, 0.5, km)(1, 0) == Complex(0));
    // x < 0: swapped
    CHECK(active_R(d, -0.5, kp)(1, 0) == Complex(0));
    CHECK(active_R(d, -0.5, km)(0, 1) == Complex(0));
    CHECK_THROWS_AS(active_R(d, 0.0, kp), std::invalid_argument);
}
