#ifndef DBAR_FIELDS_HPP
#define DBAR_FIELDS_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "dbar/geometry.hpp"
#include "dbar/types.hpp"

namespace dbar {

using ScalarEvaluator = std::function<Complex(Complex)>;
using MatrixEvaluator = std::function<Mat2(Complex)>;

/// Complex samples attached to a quadrature grid.
struct ScalarField {
    const QuadratureGrid* grid = nullptr;
    std::vector<Complex> values;

    static ScalarField sample(const QuadratureGrid& g, const ScalarEvaluator& f) {
        ScalarField s;
        s.grid = &g;
        s.values.reserve(g.nodes.size());
        for (Complex z : g.nodes) s.values.push_back(f(z));
        return s;
    }
};

/// 2x2 matrix samples attached to a quadrature grid.
struct MatrixField {
    const QuadratureGrid* grid = nullptr;
    std::vector<Mat2> values;

    static MatrixField constant(const QuadratureGrid& g, const Mat2& m) {
        MatrixField f;
        f.grid = &g;
        f.values.assign(g.nodes.size(), m);
        return f;
    }
    static MatrixField sample(const QuadratureGrid& g, const MatrixEvaluator& f) {
        MatrixField s;
        s.grid = &g;
        s.values.reserve(g.nodes.size());
        for (Complex z : g.nodes) s.values.push_back(f(z));
        return s;
    }
};

/// Exponent bundle tying the function-space machinery together:
/// 1/mu = 1/p + 1/q, alpha = 1 - 2(1/p + 1/q), gamma = (p-2)/p.
struct NormParams {
    double p = 8.0;
    double q = 8.0;
    double mu = 4.0;
    double alpha = 0.5;
    double gamma = 0.75;
    double nu = 2.0;

    static NormParams from_pq(double p, double q, double nu = 2.0) {
        if (p <= 2.0 || q <= 2.0) throw std::invalid_argument("NormParams: p, q must exceed 2");
        const double s = 1.0 / p + 1.0 / q;
        if (s >= 0.5) throw std::invalid_argument("NormParams: 1/p + 1/q must be below 1/2");
        NormParams np;
        np.p = p;
        np.q = q;
        np.nu = nu;
        np.mu = 1.0 / s;
        np.alpha = 1.0 - 2.0 * s;
        np.gamma = (p - 2.0) / p;
        return np;
    }
};

}  // namespace dbar

#endif
