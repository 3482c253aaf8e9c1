#ifndef DBAR_SPECTRAL_HPP
#define DBAR_SPECTRAL_HPP

#include "dbar/types.hpp"

namespace dbar {

/// Closed-form spectral data (r_+, r_-). Both presets lie in L^{q,2}(C) for
/// every q > 2: the annulus bump is smooth with compact support away from 0
/// and infinity, and the rational profile decays like |k|^-4. No delta
/// components.
struct SpectralData {
    enum class Preset { Zero, AnnulusBump, RationalDecay };

    Preset preset = Preset::Zero;
    Complex amplitude_plus{0.0, 0.0};
    Complex amplitude_minus{0.0, 0.0};
    double support_inner = 0.2;  // annulus bump support ring
    double support_outer = 0.9;

    static SpectralData zero() { return SpectralData{}; }
    static SpectralData annulus_bump(Complex ap, Complex am) {
        return SpectralData{Preset::AnnulusBump, ap, am};
    }
    static SpectralData rational_decay(Complex ap, Complex am) {
        return SpectralData{Preset::RationalDecay, ap, am};
    }

    /// Unit-amplitude radial profile.
    double profile(Complex k) const;
    Complex r_plus(Complex k) const { return amplitude_plus * profile(k); }
    Complex r_minus(Complex k) const { return amplitude_minus * profile(k); }
    bool is_zero() const {
        return preset == Preset::Zero ||
               (amplitude_plus == Complex(0) && amplitude_minus == Complex(0));
    }
    SpectralData scaled(Complex c) const {
        SpectralData d = *this;
        d.amplitude_plus *= c;
        d.amplitude_minus *= c;
        return d;
    }
};

/// R(k;x): off-diagonal, R12 = r_+(k) e^{-2ikx}, R21 = r_-(k) e^{2ikx};
/// the closed-form solution of dR/dx = -ik[sigma3, R].
Mat2 evolve_R(const SpectralData& data, double x, Complex k);

/// Nilpotent split R = w_- + w_+ into strictly triangular parts.
Mat2 nilpotent_minus(const SpectralData& data, double x, Complex k);
Mat2 nilpotent_plus(const SpectralData& data, double x, Complex k);

/// Scalar carried by w_s (s = +1: entry 12 of w_+; s = -1: entry 21 of w_-).
Complex nilpotent_entry(int s, const SpectralData& data, double x, Complex k);

}  // namespace dbar

#endif
