#ifndef DBAR_CAUCHY_HPP
#define DBAR_CAUCHY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dbar/fields.hpp"
#include "dbar/norms.hpp"
#include "dbar/report.hpp"

namespace dbar {

/// Values of g(k) = -(1/pi) ∬ f(z)/(z-k) dσ_z at a list of targets.
/// The dz∧dz̄ = -2i dσ identity fixes the sign relative to the 1/(2πi)
/// normalization.
struct CauchyEvaluation {
    std::vector<Complex> targets;
    std::vector<Complex> values;
    std::string scheme;  // "corrected" or "oracle"
    double h = 0.0;
};

/// Grid quadrature with singular-cell correction: a cell whose node lies
/// within its equal-area radius of the target is excluded; the analytic
/// integral of the kernel against f(target) over the equal-area disk is zero
/// by angular symmetry, so the correction is the exclusion itself.
/// Throws std::invalid_argument for a target within 1e-14 of a node.
CauchyEvaluation cauchy_transform(const ScalarField& f, const std::vector<Complex>& targets);

/// Independent brute-force evaluation: midpoint rule on an n x n Cartesian
/// mesh over the region's bounding box, dropping the cell containing k.
/// First-order accurate; kept deliberately simple so it can arbitrate the
/// corrected scheme.
Complex cauchy_oracle(const ScalarEvaluator& f, Region region, Complex k, int n);

/// Checks phi(k) = Phi(k) + (dbar phi)T_G(k) on a disk: boundary integral by
/// trapezoid rule with m nodes, area term by the corrected scheme on an
/// nr x ntheta grid.
VerificationReport verify_pompeiu(const ScalarEvaluator& phi, const ScalarEvaluator& dbar_phi,
                                  Region disk, const std::vector<Complex>& k_samples,
                                  int nr = 256, int ntheta = 256, int m_boundary = 1024,
                                  double tol = 5e-3);

enum class Lemma1Regime { Sub, Log, Super };

struct Lemma1Result {
    double integral = 0.0;
    Lemma1Regime regime = Lemma1Regime::Sub;
    /// Super regime: slope of log I vs log|k1-k2| over a shrink sequence.
    double exponent_fit = 0.0;
    /// Log regime: fitted c in I ~ c|ln|k1-k2|| + b over the same sequence.
    double log_coefficient = 0.0;
    std::vector<double> shrink_distances;
    std::vector<double> shrink_values;
};

/// I(mu,nu) = ∬_G |z-k1|^-mu |z-k2|^-nu dσ_z by oracle quadrature with polar
/// patches around the singular points; classifies the mu+nu regime and fits
/// the shrink-sequence behavior of the matching bound.
Lemma1Result lemma1_check(double mu, double nu, Complex k1, Complex k2, Region disk);

struct Theorem3Result {
    double bound_ratio = 0.0;         // sup |g| / ||f||_p over sampled targets
    double empirical_exponent = 0.0;  // Holder exponent estimate of g
    double gamma = 0.0;               // (p-2)/p
};

Theorem3Result theorem3_check(const ScalarField& f, double p, int pair_budget,
                              std::uint64_t seed = 17);

}  // namespace dbar

#endif
