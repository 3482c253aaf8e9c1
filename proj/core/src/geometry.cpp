#include "dbar/geometry.hpp"

#include <limits>
#include <stdexcept>

namespace dbar {

bool Region::contains(Complex k) const {
    switch (tag) {
        case RegionTag::E1Plus:
            return std::abs(k) <= 1.0 && k.imag() > 0.0;
        case RegionTag::E1Minus:
            return std::abs(k) <= 1.0 && k.imag() < 0.0;
        case RegionTag::E2Plus:
            return std::abs(k) >= 1.0 && k.imag() > 0.0;
        case RegionTag::E2Minus:
            return std::abs(k) >= 1.0 && k.imag() < 0.0;
        case RegionTag::CPlus:
            return k.imag() > 0.0;
        case RegionTag::CMinus:
            return k.imag() < 0.0;
        case RegionTag::UnitDisk:
            return std::abs(k) <= 1.0;
        case RegionTag::Disk:
            return std::abs(k - center) <= radius;
    }
    return false;
}

double Region::area() const {
    switch (tag) {
        case RegionTag::E1Plus:
        case RegionTag::E1Minus:
            return kPi / 2.0;
        case RegionTag::UnitDisk:
            return kPi;
        case RegionTag::Disk:
            return kPi * radius * radius;
        default:
            return std::numeric_limits<double>::infinity();
    }
}

RegionTag classify_point(Complex k) {
    const bool plus = k.imag() >= 0.0;
    const bool inner = std::abs(k) <= 1.0;
    if (inner) return plus ? RegionTag::E1Plus : RegionTag::E1Minus;
    return plus ? RegionTag::E2Plus : RegionTag::E2Minus;
}

static QuadratureGrid polar_grid(Region region, Complex center, double radius,
                                 double theta0, double theta1, int nr, int ntheta) {
    if (nr < 2 || ntheta < 2) throw std::invalid_argument("polar grid needs nr, ntheta >= 2");
    QuadratureGrid g;
    g.region = region;
    g.nr = nr;
    g.ntheta = ntheta;
    const double dr = radius / nr;
    const double dth = (theta1 - theta0) / ntheta;
    g.h = std::max(dr, dth);
    g.nodes.reserve(static_cast<std::size_t>(nr) * ntheta);
    g.weights.reserve(static_cast<std::size_t>(nr) * ntheta);
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) * dr;
        const double w = r * dr * dth;
        for (int j = 0; j < ntheta; ++j) {
            const double th = theta0 + (j + 0.5) * dth;
            g.nodes.push_back(center + Complex(r * std::cos(th), r * std::sin(th)));
            g.weights.push_back(w);
        }
    }
    return g;
}

QuadratureGrid build_half_disk_grid(int sign, int nr, int ntheta) {
    if (sign > 0) return polar_grid(Region::half_disk(+1), {0, 0}, 1.0, 0.0, kPi, nr, ntheta);
    return polar_grid(Region::half_disk(-1), {0, 0}, 1.0, kPi, 2.0 * kPi, nr, ntheta);
}

QuadratureGrid build_disk_grid(Complex center, double radius, int nr, int ntheta) {
    return polar_grid(Region::disk(center, radius), center, radius, 0.0, 2.0 * kPi, nr, ntheta);
}

InversionImage invert_grid(const QuadratureGrid& grid) {
    if (grid.region.tag != RegionTag::E1Plus && grid.region.tag != RegionTag::E1Minus)
        throw std::invalid_argument("invert_grid expects an E1 half-disk grid");
    InversionImage img;
    img.source = &grid;
    img.jacobian_weights.reserve(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        const double a = std::abs(grid.nodes[i]);
        img.jacobian_weights.push_back(grid.weights[i] / (a * a * a * a));
    }
    return img;
}

}  // namespace dbar
