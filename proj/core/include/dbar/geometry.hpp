#ifndef DBAR_GEOMETRY_HPP
#define DBAR_GEOMETRY_HPP

#include <vector>

#include "dbar/types.hpp"

namespace dbar {

enum class RegionTag {
    E1Plus,   // |k| <= 1, Im k > 0
    E1Minus,  // |k| <= 1, Im k < 0
    E2Plus,   // |k| >= 1, Im k > 0
    E2Minus,  // |k| >= 1, Im k < 0
    CPlus,
    CMinus,
    UnitDisk,
    Disk,
};

/// A region of the complex plane. `center`/`radius` are only meaningful for
/// Disk; the unit disk and its half/exterior splits are fixed.
struct Region {
    RegionTag tag = RegionTag::UnitDisk;
    Complex center{0.0, 0.0};
    double radius = 1.0;

    static Region unit_disk() { return Region{RegionTag::UnitDisk, {0, 0}, 1.0}; }
    static Region disk(Complex c, double r) { return Region{RegionTag::Disk, c, r}; }
    static Region half_disk(int sign) {
        return Region{sign > 0 ? RegionTag::E1Plus : RegionTag::E1Minus, {0, 0}, 1.0};
    }

    bool contains(Complex k) const;
    /// Area of the region; half-disks are pi/2, disks pi r^2. Exterior and
    /// half-plane regions have infinite area (returns +inf).
    double area() const;
};

/// Boundary convention: Im k = 0 goes to the plus side, |k| = 1 to E1.
RegionTag classify_point(Complex k);

/// Quadrature nodes and positive weights discretizing the area measure of a
/// bounded region. `h` is the characteristic cell size.
struct QuadratureGrid {
    Region region;
    std::vector<Complex> nodes;
    std::vector<double> weights;
    double h = 0.0;
    int nr = 0;
    int ntheta = 0;

    double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
    /// Radius of the equal-area disk of cell i; used as the exclusion radius
    /// around a singular quadrature target.
    double cell_radius(std::size_t i) const { return std::sqrt(weights[i] / kPi); }
};

/// Polar midpoint grid on the half disk E1^sign. Nodes r_i e^{i theta_j} with
/// r_i = (i+1/2)/nr and theta_j midpoints of (0,pi) for +, (pi,2pi) for -.
/// Weights r_i dr dtheta; no node touches 0, |k|=1, or the real axis.
QuadratureGrid build_half_disk_grid(int sign, int nr, int ntheta);

/// Polar midpoint grid on a full disk.
QuadratureGrid build_disk_grid(Complex center, double radius, int nr, int ntheta);

/// Change of variables k -> 1/z mapping E2^{±} integrals onto the E1^{∓}
/// grid: ∬_{E2^±} F dσ_k = Σ_i jacobian_weights[i] F(1/z_i) with
/// jacobian_weights[i] = w_i |z_i|^{-4}.
struct InversionImage {
    const QuadratureGrid* source = nullptr;
    std::vector<double> jacobian_weights;

    Complex point(std::size_t i) const { return 1.0 / source->nodes[i]; }
};

InversionImage invert_grid(const QuadratureGrid& grid);

}  // namespace dbar

#endif
