#include <doctest.h>

#include <cmath>

#include "dbar/norms.hpp"

using namespace dbar;

namespace {
const QuadratureGrid& e1p() {
    static QuadratureGrid g = build_half_disk_grid(+1, 96, 96);
    return g;
}
const QuadratureGrid& e1m() {
    static QuadratureGrid g = build_half_disk_grid(-1, 96, 96);
    return g;
}
}  // namespace

TEST_CASE("lp_norm_bounded: zero field") {
    const ScalarField f = ScalarField::sample(e1p(), [](Complex) { return Complex(0); });
    CHECK(lp_norm_bounded(f, 4.0) == 0.0);
}

TEST_CASE("lp_norm_bounded: constant on a half disk") {
    const ScalarField f = ScalarField::sample(e1p(), [](Complex) { return Complex(1); });
    CHECK(lp_norm_bounded(f, 2.0) == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-10));
}

TEST_CASE("lp_norm_bounded: f(k) = k on a half disk") {
    // Integral of |k|^2 over the half disk: int r^3 dr dtheta = (1/4) pi.
    const ScalarField f = ScalarField::sample(e1p(), [](Complex k) { return k; });
    CHECK(lp_norm_bounded(f, 2.0) == doctest::Approx(std::sqrt(kPi / 4.0)).epsilon(1e-3));
}

TEST_CASE("lpnu_norm: constant with nu = 0 gives twice the unit-disk norm") {
    ScalarEvaluator one = [](Complex) { return Complex(1); };
    CHECK(lpnu_norm(one, 2.0, 0.0, e1p(), e1m(), 0) ==
          doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-10));
}

TEST_CASE("lpnu_norm: zero evaluator") {
    ScalarEvaluator z = [](Complex) { return Complex(0); };
    CHECK(lpnu_norm(z, 4.0, 2.0, e1p(), e1m(), 0) == 0.0);
}

TEST_CASE("lpnu_norm: rational decay matches a direct quadrature oracle") {
    // f(k) = 1/(1+|k|^4); f_(2)(k) = |k|^2/(1+|k|^4) stays bounded on E1.
    ScalarEvaluator f = [](Complex k) {
        const double a2 = std::norm(k);
        return Complex(1.0 / (1.0 + a2 * a2), 0.0);
    };
    const double p = 4.0, nu = 2.0;
    const double got = lpnu_norm(f, p, nu, e1p(), e1m(), 0);

    // Oracle: radial integrals by dense midpoint rule.
    auto radial = [&](std::function<double(double)> g) {
        const int n = 200000;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = (i + 0.5) / n;
            acc += g(r) * r / n;
        }
        return 2.0 * kPi * acc;
    };
    const double interior =
        std::pow(radial([&](double r) { return std::pow(1.0 / (1.0 + std::pow(r, 4)), p); }),
                 1.0 / p);
    const double image = std::pow(
        radial([&](double r) { return std::pow(r * r / (1.0 + std::pow(r, 4)), p); }), 1.0 / p);
    CHECK(got == doctest::Approx(interior + image).epsilon(1e-3));
}

TEST_CASE("lpnu_norm: image blow-up raises domain_error") {
    ScalarEvaluator f = [](Complex k) { return Complex(std::pow(std::abs(k), 400.0), 0.0); };
    CHECK_THROWS_AS(lpnu_norm(f, 4.0, 2.0, e1p(), e1m(), 0), std::domain_error);
}

TEST_CASE("lpnu_norm: half-plane pieces are consistent with the whole plane") {
    ScalarEvaluator f = [](Complex k) {
        const double a2 = std::norm(k);
        return Complex(1.0 / (1.0 + a2 * a2), 0.0);
    };
    const double plus = lpnu_norm(f, 4.0, 2.0, e1p(), e1m(), +1);
    const double minus = lpnu_norm(f, 4.0, 2.0, e1p(), e1m(), -1);
    const double whole = lpnu_norm(f, 4.0, 2.0, e1p(), e1m(), 0);
    // Radially symmetric integrand: the halves are equal, and each piece of
    // the whole-plane norm is 2^{1/p} times the half-plane piece.
    CHECK(plus == doctest::Approx(minus).epsilon(1e-10));
    CHECK(whole == doctest::Approx(std::pow(2.0, 0.25) * plus).epsilon(1e-10));
}

TEST_CASE("NormParams derives the exponent bundle") {
    const NormParams np = NormParams::from_pq(8.0, 8.0);
    CHECK(np.mu == doctest::Approx(4.0));
    CHECK(np.alpha == doctest::Approx(0.5));
    CHECK(np.gamma == doctest::Approx(0.75));
    CHECK_THROWS_AS(NormParams::from_pq(3.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(NormParams::from_pq(2.0, 8.0), std::invalid_argument);
}

TEST_CASE("holder_norm_estimate: constant field has zero seminorm") {
    ScalarEvaluator f = [](Complex) { return Complex(3.5, -1.0); };
    const HolderEstimate he = holder_norm_estimate(f, 0.7, Region::unit_disk(), 500, 11);
    CHECK(he.seminorm == 0.0);
    CHECK(he.sup_norm == doctest::Approx(std::abs(Complex(3.5, -1.0))));
}

TEST_CASE("holder_norm_estimate: identity map at alpha = 1") {
    ScalarEvaluator f = [](Complex k) { return k; };
    const HolderEstimate he = holder_norm_estimate(f, 1.0, Region::unit_disk(), 2000, 5);
    CHECK(he.seminorm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(he.empirical_exponent == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("holder_norm_estimate: |k|^(1/2) has exponent near 1/2") {
    ScalarEvaluator f = [](Complex k) { return Complex(std::sqrt(std::abs(k)), 0.0); };
    const HolderEstimate he = holder_norm_estimate(f, 0.5, Region::unit_disk(), 20000, 7);
    CHECK(he.empirical_exponent == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(he.empirical_exponent - 0.5) < 0.05);
}

TEST_CASE("holder_norm_estimate: deterministic in the seed") {
    ScalarEvaluator f = [](Complex k) { return std::exp(-std::norm(k)) * k; };
    const HolderEstimate a = holder_norm_estimate(f, 0.5, Region::unit_disk(), 1000, 42);
    const HolderEstimate b = holder_norm_estimate(f, 0.5, Region::unit_disk(), 1000, 42);
    CHECK(a.sup_norm == b.sup_norm);
    CHECK(a.seminorm == b.seminorm);
    CHECK(a.empirical_exponent == b.empirical_exponent);
}

TEST_CASE("holder_norm_estimate: seminorm is monotone in the pair budget") {
    ScalarEvaluator f = [](Complex k) { return Complex(std::sqrt(std::abs(k - 0.3)), 0.0); };
    double prev = -1.0;
    for (int n : {200, 1000, 5000}) {
        const HolderEstimate he = holder_norm_estimate(f, 0.5, Region::unit_disk(), n, 99);
        CHECK(he.seminorm >= prev);
        prev = he.seminorm;
    }
}

TEST_CASE("norms satisfy triangle inequality and homogeneity on random fields") {
    std::uint64_t state = 77;
    auto rnd = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    };
    for (int trial = 0; trial < 5; ++trial) {
        const double a = rnd(), b = rnd(), c = rnd(), d = rnd();
        ScalarEvaluator f = [a, b](Complex k) { return Complex(a, b) * std::exp(-std::norm(k)); };
        ScalarEvaluator g = [c, d](Complex k) { return Complex(c, d) * k; };
        ScalarEvaluator sum = [&f, &g](Complex k) { return f(k) + g(k); };
        ScalarEvaluator scaled = [&f](Complex k) { return 2.5 * f(k); };
        const double nf = lpnu_norm(f, 4.0, 2.0, e1p(), e1m(), 0);
        const double ng = lpnu_norm(g, 4.0, 2.0, e1p(), e1m(), 0);
        const double ns = lpnu_norm(sum, 4.0, 2.0, e1p(), e1m(), 0);
        CHECK(ns <= nf + ng + 1e-10);
        CHECK(lpnu_norm(scaled, 4.0, 2.0, e1p(), e1m(), 0) ==
              doctest::Approx(2.5 * nf).epsilon(1e-10));
    }
}
