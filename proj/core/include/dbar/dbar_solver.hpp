#ifndef DBAR_DBAR_SOLVER_HPP
#define DBAR_DBAR_SOLVER_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dbar/fields.hpp"
#include "dbar/geometry.hpp"
#include "dbar/spectral.hpp"

namespace dbar {

/// The four component domains the solution lives on: the half unit disks
/// E1^+/- and the exterior half-planes E2^+/- addressed through the
/// inversion of the opposite half disk.
enum Component : int { kE1Plus = 0, kE1Minus = 1, kE2Plus = 2, kE2Minus = 3 };

struct ComponentGrids {
    QuadratureGrid e1_plus;
    QuadratureGrid e1_minus;
    InversionImage e2_plus;   // source = e1_minus; points 1/z lie in E2^+
    InversionImage e2_minus;  // source = e1_plus; points 1/z lie in E2^-

    static ComponentGrids build(int nr, int ntheta);
    std::size_t component_size(int c) const;
    Complex point(int c, std::size_t i) const;
    std::size_t total_size() const;
};

/// Matrix samples on all four component domains simultaneously; the
/// operator needs psi both inside the unit disk and at the inverted
/// exterior points.
struct PsiField4 {
    const ComponentGrids* grids = nullptr;
    std::array<std::vector<Mat2>, 4> values;

    static PsiField4 identity(const ComponentGrids& g);
    static PsiField4 sample(const ComponentGrids& g, const MatrixEvaluator& f);
    double sup_distance(const PsiField4& other) const;
    double sup_norm() const;
};

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precomputed source tables for one (psi, data, x); evaluating at a target
/// is then a single weighted sum. Used by everything that needs repeated
/// point evaluations (Neumann iteration, finite differences, Holder pairs).
class RtcApplier {
  public:
    RtcApplier(const PsiField4& psi, const SpectralData& data, double x);
    /// Operator value at one target; singular cells are excluded per the
    /// equal-area-disk rule.
    Mat2 operator()(Complex k) const;
    std::vector<Mat2> batch(const std::vector<Complex>& targets) const;

  private:
    struct Piece {
        int col = 0;
        // interior sources (E1^sigma): flat list of nonzero cells for the
        // far-field midpoint sum, plus full (nr x ntheta) density tables for
        // the near-field window around the cell containing the target.
        std::vector<Complex> z, su, sl;
        std::vector<int> idx;
        std::vector<Complex> dens_u, dens_l;
        int nr = 0, ntheta = 0;
        double thbase = 0.0;  // angular origin of the half-disk grid
        // exterior sources (inverted E2^sigma, parameterized over E1^{-sigma})
        std::vector<Complex> ez, einv, esu, esl;
        std::vector<double> erho2;
    };
    std::array<Piece, 2> pieces_;
    // Polar extents of the interior cells, for near-field handling.
    double dr_ = 0.0;
    double dth_ = 0.0;
};

/// The decomposed operator psi -> psi R T_C(.;x) evaluated at arbitrary
/// targets. For x > 0 this is psi w_- T_{C^+} + psi w_+ T_{C^-}; for x < 0
/// the half-plane pairing swaps. Each half-plane transform is the interior
/// E1 quadrature plus the exterior piece computed on the inverted grid with
/// the conj(z)^-2 weighting, so every exponential inside an integrand has
/// modulus <= 1 (checked, throws std::logic_error on violation).
/// x == 0 is rejected; so is a target exactly on a component node.
std::vector<Mat2> apply_RTC(const PsiField4& psi, const SpectralData& data, double x,
                            const std::vector<Complex>& targets);

/// Same operator with targets at the component points themselves (the
/// Nystrom iteration path; the singular-cell exclusion covers the self
/// node, so node targets are well defined here).
PsiField4 apply_RTC_on_grid(const PsiField4& psi, const SpectralData& data, double x);

struct SolveResult {
    PsiField4 psi;
    int iterations = 0;
    /// Fixed-point residual sup-node || psi - I - psi R T_C || after the
    /// final iterate.
    double residual = 0.0;
    /// Observed late-iteration contraction ratio (0 when the iteration
    /// finishes in one step).
    double contraction_ratio = 0.0;
};

/// Neumann iteration psi_{n+1} = I + psi_n R T_C; stops when the sup-node
/// change drops below tol. Throws DivergenceError on monotone growth over 5
/// consecutive iterations, NonConvergenceError after max_iter.
SolveResult solve_psi(const SpectralData& data, double x, const ComponentGrids& grids, double tol,
                      int max_iter);

struct OperatorEstimate {
    double norm_lower_bound = 0.0;
    double holder_bound = 0.0;       // sup + H^alpha seminorm of op output per unit input
    double small_norm_margin = 1.0;  // 1 - norm_lower_bound; negative = predicate fails
    double p = 8.0;
    double q = 8.0;
    double alpha = 0.5;
    bool small_norm() const { return norm_lower_bound < 1.0; }
};

/// Randomized estimate of the size of R T_C. norm_lower_bound is the best
/// power-iteration ratio over random unit L^{p,0} test fields; it
/// lower-bounds the spectral radius, which is exactly what the Neumann
/// contraction sees, so it is directly comparable with observed contraction
/// ratios. holder_bound additionally measures the output in H^alpha
/// (sup + seminorm); it certifies the mapping-into-Holder property but can
/// legitimately exceed the contraction ratio, so it is reported separately.
OperatorEstimate estimate_operator_norm(const SpectralData& data, const NormParams& params,
                                        const std::vector<double>& x_samples, int trials,
                                        std::uint64_t seed, const ComponentGrids& grids);

/// Discrete Wirtinger derivative d/d(conj k) by centered differences.
Mat2 wirtinger_fd(const MatrixEvaluator& f, Complex k, double step);

/// sup || dbar psi - psi R_active || over interior nodes at least 3h from
/// |k| = 1 and the real axis, where R_active keeps the nilpotent part the
/// decomposition assigns to each half-plane for the sign of x.
double dbar_residual(const PsiField4& psi, const SpectralData& data, double x);

/// The half-plane-matched part of R: for x > 0, w_- on C^+ and w_+ on C^-;
/// swapped for x < 0.
Mat2 active_R(const SpectralData& data, double x, Complex k);

}  // namespace dbar

#endif
