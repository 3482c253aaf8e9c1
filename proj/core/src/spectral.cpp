#include "dbar/spectral.hpp"

#include <cmath>

namespace dbar {

double SpectralData::profile(Complex k) const {
    switch (preset) {
        case Preset::Zero:
            return 0.0;
        case Preset::AnnulusBump: {
            const double mid = 0.5 * (support_inner + support_outer);
            const double half = 0.5 * (support_outer - support_inner);
            const double s = (std::abs(k) - mid) / half;
            if (std::abs(s) >= 1.0) return 0.0;
            return std::exp(1.0 - 1.0 / (1.0 - s * s));
        }
        case Preset::RationalDecay: {
            const double a2 = std::norm(k);
            return 1.0 / (1.0 + a2 * a2);
        }
    }
    return 0.0;
}

Complex nilpotent_entry(int s, const SpectralData& data, double x, Complex k) {
    const Complex i2kx = Complex(0.0, 2.0) * k * x;
    if (s > 0) return data.r_plus(k) * std::exp(-i2kx);
    return data.r_minus(k) * std::exp(i2kx);
}

Mat2 evolve_R(const SpectralData& data, double x, Complex k) {
    Mat2 r;
    r(0, 1) = nilpotent_entry(+1, data, x, k);
    r(1, 0) = nilpotent_entry(-1, data, x, k);
    return r;
}

Mat2 nilpotent_minus(const SpectralData& data, double x, Complex k) {
    Mat2 w;
    w(1, 0) = nilpotent_entry(-1, data, x, k);
    return w;
}

Mat2 nilpotent_plus(const SpectralData& data, double x, Complex k) {
    Mat2 w;
    w(0, 1) = nilpotent_entry(+1, data, x, k);
    return w;
}

}  // namespace dbar
