#include <doctest.h>

#include <cmath>

#include "dbar/cauchy.hpp"
#include "oracles.hpp"

using namespace dbar;

namespace {
const QuadratureGrid& disk_grid() {
    static QuadratureGrid g = build_disk_grid({0, 0}, 1.0, 128, 128);
    return g;
}
}  // namespace

TEST_CASE("cauchy_transform: zero field maps to zero") {
    const ScalarField f = ScalarField::sample(disk_grid(), [](Complex) { return Complex(0); });
    const CauchyEvaluation ev = cauchy_transform(f, {{0.3, 0.1}, {2.0, 0.0}});
    for (Complex v : ev.values) CHECK(v == Complex(0));
}

TEST_CASE("cauchy_transform: disk indicator interior closed form") {
    const ScalarField one = ScalarField::sample(disk_grid(), [](Complex) { return Complex(1); });
    const Complex k(0.3, 0.2);
    const CauchyEvaluation ev = cauchy_transform(one, {k});
    CHECK(std::abs(ev.values[0] - std::conj(k)) < 5e-3);
}

TEST_CASE("cauchy_transform: disk indicator exterior closed form") {
    const ScalarField one = ScalarField::sample(disk_grid(), [](Complex) { return Complex(1); });
    const CauchyEvaluation ev = cauchy_transform(one, {{2.0, 0.0}});
    CHECK(std::abs(ev.values[0] - Complex(0.5, 0.0)) < 5e-3);
}

TEST_CASE("cauchy_transform: target on a node is rejected") {
    const ScalarField one = ScalarField::sample(disk_grid(), [](Complex) { return Complex(1); });
    CHECK_THROWS_AS(cauchy_transform(one, {disk_grid().nodes[10]}), std::invalid_argument);
}

TEST_CASE("cauchy_oracle: indicator at the symmetry point and at a closed-form point") {
    ScalarEvaluator one = [](Complex) { return Complex(1); };
    CHECK(std::abs(cauchy_oracle(one, Region::unit_disk(), {0.0, 0.0}, 512)) < 1e-2);
    CHECK(std::abs(cauchy_oracle(one, Region::unit_disk(), {0.5, 0.0}, 512) - Complex(0.5)) <
          1e-2);
}

TEST_CASE("cauchy_oracle: rejects coarse meshes and unbounded regions") {
    ScalarEvaluator one = [](Complex) { return Complex(1); };
    CHECK_THROWS_AS(cauchy_oracle(one, Region::unit_disk(), {0.0, 0.0}, 32),
                    std::invalid_argument);
    CHECK_THROWS_AS(cauchy_oracle(one, Region{RegionTag::CPlus, {0, 0}, 1.0}, {0.0, 1.0}, 256),
                    std::invalid_argument);
}

TEST_CASE("scheme agreement: corrected vs oracle on smooth data") {
    ScalarEvaluator f = [](Complex z) { return std::exp(-3.0 * std::norm(z)) * (z + 0.2); };
    const ScalarField fs = ScalarField::sample(disk_grid(), f);
    const std::vector<Complex> ks{{0.21, 0.17}, {-0.4, 0.33}, {0.05, -0.6}, {1.3, 0.4}};
    const CauchyEvaluation ev = cauchy_transform(fs, ks);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const Complex ref = cauchy_oracle(f, Region::unit_disk(), ks[i], 700);
        CHECK(std::abs(ev.values[i] - ref) < 5e-3);
    }
}

TEST_CASE("cross-validation on f(z) = conj(z)") {
    ScalarEvaluator f = [](Complex z) { return std::conj(z); };
    const ScalarField fs = ScalarField::sample(disk_grid(), f);
    const CauchyEvaluation ev = cauchy_transform(fs, {{0.0, 0.35}});
    const Complex ref = cauchy_oracle(f, Region::unit_disk(), {0.0, 0.35}, 700);
    CHECK(std::abs(ev.values[0] - ref) < 5e-3);
}

TEST_CASE("pompeiu: phi = conj(k) with unit dbar derivative") {
    ScalarEvaluator phi = [](Complex k) { return std::conj(k); };
    ScalarEvaluator dphi = [](Complex) { return Complex(1); };
    const std::vector<Complex> ks{{0.25, 0.1}, {-0.3, 0.4}, {0.1, -0.55}};
    const VerificationReport rep = verify_pompeiu(phi, dphi, Region::unit_disk(), ks);
    CHECK(rep.all_pass());
}

TEST_CASE("pompeiu: holomorphic phi reduces to the Cauchy integral formula") {
    ScalarEvaluator phi = [](Complex k) { return k * k + Complex(0.5, 0.25); };
    ScalarEvaluator dphi = [](Complex) { return Complex(0); };
    const std::vector<Complex> ks{{0.2, 0.3}, {-0.5, -0.1}};
    const VerificationReport rep = verify_pompeiu(phi, dphi, Region::unit_disk(), ks);
    CHECK(rep.all_pass());
    CHECK(rep.max_observed() < 5e-3);
}

TEST_CASE("pompeiu: phi = |k|^2 with dbar phi = k") {
    ScalarEvaluator phi = [](Complex k) { return Complex(std::norm(k), 0.0); };
    ScalarEvaluator dphi = [](Complex k) { return k; };
    const std::vector<Complex> ks{{0.3, 0.2}, {-0.2, 0.5}, {0.0, -0.4}};
    const VerificationReport rep = verify_pompeiu(phi, dphi, Region::unit_disk(), ks);
    CHECK(rep.all_pass());
}

TEST_CASE("lemma1: sub-critical pair integral stays bounded as the points merge") {
    const Lemma1Result res = lemma1_check(0.5, 0.5, {0.0, 0.0}, {0.5, 0.0}, Region::unit_disk());
    CHECK(res.regime == Lemma1Regime::Sub);
    CHECK(std::isfinite(res.integral));
    // Values along the shrink sequence approach a finite limit from below
    // the initial value's neighborhood: max/min stays close to 1.
    double lo = res.shrink_values[0], hi = res.shrink_values[0];
    for (double v : res.shrink_values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi / lo < 1.2);
}

TEST_CASE("lemma1: log regime coefficient stays below the analytic constant") {
    const Lemma1Result res = lemma1_check(1.0, 1.0, {0.0, 0.0}, {0.3, 0.0}, Region::unit_disk());
    CHECK(res.regime == Lemma1Regime::Log);
    CHECK(res.log_coefficient > 0.0);
    CHECK(res.log_coefficient <= 8.0 * kPi * 1.10);
}

TEST_CASE("lemma1: super-critical exponent matches 2 - mu - nu") {
    const Lemma1Result res = lemma1_check(1.5, 1.5, {0.1, 0.05}, {0.5, 0.05}, Region::unit_disk());
    CHECK(res.regime == Lemma1Regime::Super);
    CHECK(res.exponent_fit == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("lemma1: invalid exponents and coincident points are rejected") {
    CHECK_THROWS_AS(lemma1_check(2.5, 0.5, {0, 0}, {0.5, 0}, Region::unit_disk()),
                    std::invalid_argument);
    CHECK_THROWS_AS(lemma1_check(0.5, 0.5, {0.2, 0.1}, {0.2, 0.1}, Region::unit_disk()),
                    std::invalid_argument);
}

TEST_CASE("theorem3: zero field gives zero ratio") {
    const ScalarField z = ScalarField::sample(disk_grid(), [](Complex) { return Complex(0); });
    const Theorem3Result res = theorem3_check(z, 4.0, 500);
    CHECK(res.bound_ratio == 0.0);
}

TEST_CASE("theorem3: disk indicator transform is at least gamma-regular") {
    const ScalarField one = ScalarField::sample(disk_grid(), [](Complex) { return Complex(1); });
    const Theorem3Result res = theorem3_check(one, 4.0, 2000);
    CHECK(res.gamma == doctest::Approx(0.5));
    CHECK(res.empirical_exponent >= res.gamma - 0.05);
    CHECK(res.bound_ratio > 0.0);
}
