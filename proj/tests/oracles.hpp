// Independent brute-force evaluations used to arbitrate the production
// schemes. Everything here is deliberately naive: Cartesian or dense polar
// midpoint rules with none of the library's singular-cell machinery.
#ifndef DBAR_TESTS_ORACLES_HPP
#define DBAR_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dbar/dbar_solver.hpp"
#include "dbar/spectral.hpp"
#include "dbar/types.hpp"

namespace oracles {

using dbar::Complex;
using dbar::Mat2;
using dbar::kPi;

/// Closed form of the transform of the unit-disk indicator.
inline Complex disk_indicator_exact(Complex k) {
    return std::abs(k) < 1.0 ? std::conj(k) : 1.0 / k;
}

/// Half-plane-paired operator value at one target by Cartesian midpoint
/// quadrature over the unit square (valid for compactly supported data):
/// the integrand keeps w_- on the half-plane matched to sign(x) and w_+ on
/// the other, exactly as the decomposition defines the operator. The cell
/// containing the target contributes its symmetric principal value, which
/// vanishes for the constant part when the target sits at a cell center.
/// When the target lies inside the unit disk and off the real axis, the
/// locally constant part of the density is subtracted over a disk D(k,delta)
/// contained in the target's half-plane; its analytic principal value is
/// exactly zero, so only the smooth remainder is summed numerically. This
/// removes the first-order near-singularity quadrature error.
inline Mat2 brute_force_rtc(const dbar::MatrixEvaluator& psi, const dbar::SpectralData& data,
                            double x, Complex k, int n) {
    const double h = 2.0 / n;
    const double delta =
        std::min({0.12, 0.9 * std::abs(k.imag()), 0.9 * (1.0 - std::abs(k))});
    Mat2 mk;  // psi(k) * w_active(k), the subtracted constant density
    if (delta > 3.0 * h) {
        const bool plus_side = k.imag() >= 0.0;
        const int sk = (x > 0.0) == plus_side ? -1 : +1;
        Mat2 wk;
        if (sk < 0)
            wk(1, 0) = dbar::nilpotent_entry(-1, data, x, k);
        else
            wk(0, 1) = dbar::nilpotent_entry(+1, data, x, k);
        mk = psi(k) * wk;
    }
    Mat2 acc;
    for (int i = 0; i < n; ++i) {
        const double zx = -1.0 + (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double zy = -1.0 + (j + 0.5) * h;
            const Complex z(zx, zy);
            if (std::abs(z) > 1.0) continue;
            if (std::abs(zx - k.real()) <= 0.5 * h && std::abs(zy - k.imag()) <= 0.5 * h)
                continue;
            const bool plus_side = z.imag() >= 0.0;
            const int s = (x > 0.0) == plus_side ? -1 : +1;
            Mat2 w;
            if (s < 0)
                w(1, 0) = dbar::nilpotent_entry(-1, data, x, z);
            else
                w(0, 1) = dbar::nilpotent_entry(+1, data, x, z);
            Mat2 v = psi(z) * w;
            if (std::abs(z - k) < delta) v -= mk;
            acc += v * (1.0 / (z - k));
        }
    }
    return acc * Complex(-h * h / kPi);
}

/// Dense polar quadrature of (1/pi) over one half-plane (annulus-supported
/// integrands only) of f; used as the moment oracle.
inline Complex half_plane_scalar_moment(const std::function<Complex(Complex)>& f, int half_sign,
                                        double r0, double r1, int nrad, int nang) {
    const double dr = (r1 - r0) / nrad;
    const double th0 = half_sign > 0 ? 0.0 : kPi;
    const double dth = kPi / nang;
    Complex acc(0);
    for (int i = 0; i < nrad; ++i) {
        const double r = r0 + (i + 0.5) * dr;
        for (int j = 0; j < nang; ++j) {
            const double th = th0 + (j + 0.5) * dth;
            acc += f(Complex(r * std::cos(th), r * std::sin(th))) * (r * dr * dth);
        }
    }
    return acc / kPi;
}

/// First-order (Born) potential u_1(x) for unit-amplitude data: the w_+
/// moment over its active half-plane with psi = I. The moment bracket
/// carries (1/2 pi i) dk ^ dconj(k) = -(1/pi) dsigma, so u_1 = -2i * (-1/pi)
/// times the area integral, i.e. +2i times the dense quadrature below.
inline Complex born_u1(const dbar::SpectralData& unit_data, double x) {
    const int half = x > 0.0 ? -1 : +1;  // w_+ lives on C^- for x > 0
    auto f = [&](Complex z) { return dbar::nilpotent_entry(+1, unit_data, x, z); };
    return Complex(0.0, 2.0) * half_plane_scalar_moment(f, half, 0.0, 1.0, 1200, 600);
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(xs.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles

#endif
