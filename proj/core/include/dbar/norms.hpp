#ifndef DBAR_NORMS_HPP
#define DBAR_NORMS_HPP

#include <cstdint>

#include "dbar/fields.hpp"

namespace dbar {

/// Discrete L^p norm on a bounded-region grid: (sum w_i |f_i|^p)^(1/p).
double lp_norm_bounded(const ScalarField& f, double p);
/// Matrix version; the pointwise matrix norm is Frobenius.
double lp_norm_bounded(const MatrixField& f, double p);

/// Weighted L^{p,nu} norm built from two bounded pieces: the L^p norm of f
/// on E1 and the L^p norm of the inverted image f_(nu)(k) = |k|^-nu f(1/k)
/// on E1. `halfplane` = +1/-1 restricts to C^+/C^- (interior piece on
/// E1^+/-, image piece on the opposite half-disk); 0 sums both half-planes.
/// Throws std::domain_error if the image blows up at a sampled node.
double lpnu_norm(const ScalarEvaluator& f, double p, double nu,
                 const QuadratureGrid& e1_plus, const QuadratureGrid& e1_minus,
                 int halfplane = 0);
double lpnu_norm(const MatrixEvaluator& f, double p, double nu,
                 const QuadratureGrid& e1_plus, const QuadratureGrid& e1_minus,
                 int halfplane = 0);

struct HolderEstimate {
    double sup_norm = 0.0;
    double seminorm = 0.0;
    /// Least-squares slope of log|df| vs log|dk| over pairs with |dk| <= 0.1;
    /// a lower-bound estimator of the true Holder exponent.
    double empirical_exponent = 0.0;
    int pairs_used = 0;
};

/// Randomized estimate of the H^alpha(G) data of an evaluator: sup over
/// sampled points, seminorm as the max difference quotient over n_pairs
/// random pairs. The sampling stream is deterministic in `seed`, and pair n
/// is a prefix of pair n+1's stream, so enlarging n_pairs never decreases
/// the seminorm estimate.
HolderEstimate holder_norm_estimate(const ScalarEvaluator& f, double alpha, Region region,
                                    int n_pairs, std::uint64_t seed);
HolderEstimate holder_norm_estimate(const MatrixEvaluator& f, double alpha, Region region,
                                    int n_pairs, std::uint64_t seed);

/// Uniform-ish random point strictly inside the region (disk-like regions
/// sample in polar form; half-planes sample inside |k| < 2).
Complex sample_point(Region region, std::uint64_t& state);

}  // namespace dbar

#endif
