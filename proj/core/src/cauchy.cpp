#include "dbar/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dbar/parallel.hpp"

namespace dbar {

CauchyEvaluation cauchy_transform(const ScalarField& f, const std::vector<Complex>& targets) {
    const QuadratureGrid& g = *f.grid;
    CauchyEvaluation out;
    out.targets = targets;
    out.values.assign(targets.size(), Complex(0));
    out.scheme = "corrected";
    out.h = g.h;

    for (Complex k : targets) {
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            if (std::abs(g.nodes[i] - k) < 1e-14)
                throw std::invalid_argument("cauchy_transform: target coincides with a node");
    }

    // Polar cell extents, used to subdivide cells close to a target. The
    // midpoint rule equals the exact equal-area-disk average of the kernel,
    // so the near-field error is pure cell-shape mismatch; subdividing the
    // actual polar cell removes it.
    const bool is_disk = g.region.tag == RegionTag::Disk || g.region.tag == RegionTag::UnitDisk;
    const Complex center = is_disk ? g.region.center : Complex(0, 0);
    const double span_r = is_disk ? g.region.radius : 1.0;
    const double dr = g.nr > 0 ? span_r / g.nr : 0.0;
    const double dth = g.ntheta > 0 ? (is_disk ? 2.0 * kPi : kPi) / g.ntheta : 0.0;
    constexpr int kSub = 4;

    parallel_for(targets.size(), [&](std::size_t t) {
        const Complex k = targets[t];
        Complex acc(0);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const Complex dz = g.nodes[i] - k;
            const double dist2 = std::norm(dz);
            const double rho = g.cell_radius(i);
            if (dist2 >= 16.0 * rho * rho || dr <= 0.0 || dth <= 0.0) {
                acc += f.values[i] * g.weights[i] / dz;
                continue;
            }
            // Near-singular cell: subdivide the polar cell, with the
            // analytic equal-area-disk correction
            // integral_{|z-c|<rho'} dsigma/(z-k) = -pi conj(k-c)
            // replacing any sub-cell the target falls into.
            const Complex rel = g.nodes[i] - center;
            const double r0 = std::abs(rel);
            const double th0 = std::atan2(rel.imag(), rel.real());
            for (int a = 0; a < kSub; ++a) {
                const double r = r0 + ((a + 0.5) / kSub - 0.5) * dr;
                for (int b = 0; b < kSub; ++b) {
                    const double th = th0 + ((b + 0.5) / kSub - 0.5) * dth;
                    const Complex z = center + Complex(r * std::cos(th), r * std::sin(th));
                    const double w = r * (dr / kSub) * (dth / kSub);
                    const Complex dzs = z - k;
                    if (std::norm(dzs) < w / kPi)
                        acc += f.values[i] * kPi * std::conj(dzs);
                    else
                        acc += f.values[i] * w / dzs;
                }
            }
        }
        out.values[t] = -acc / kPi;
    });
    return out;
}

namespace {

struct Box {
    double x0, x1, y0, y1;
};

Box bounding_box(Region region) {
    switch (region.tag) {
        case RegionTag::UnitDisk:
            return {-1.0, 1.0, -1.0, 1.0};
        case RegionTag::E1Plus:
            return {-1.0, 1.0, 0.0, 1.0};
        case RegionTag::E1Minus:
            return {-1.0, 1.0, -1.0, 0.0};
        case RegionTag::Disk:
            return {region.center.real() - region.radius, region.center.real() + region.radius,
                    region.center.imag() - region.radius, region.center.imag() + region.radius};
        default:
            throw std::invalid_argument("cauchy_oracle: region must be bounded");
    }
}

}  // namespace

Complex cauchy_oracle(const ScalarEvaluator& f, Region region, Complex k, int n) {
    if (n < 64) throw std::invalid_argument("cauchy_oracle: n >= 64 required");
    const Box b = bounding_box(region);
    const double hx = (b.x1 - b.x0) / n;
    const double hy = (b.y1 - b.y0) / n;
    Complex acc(0);
    for (int i = 0; i < n; ++i) {
        const double x = b.x0 + (i + 0.5) * hx;
        for (int j = 0; j < n; ++j) {
            const double y = b.y0 + (j + 0.5) * hy;
            const Complex z(x, y);
            if (!region.contains(z)) continue;
            if (std::abs(x - k.real()) <= 0.5 * hx && std::abs(y - k.imag()) <= 0.5 * hy)
                continue;  // cell containing k dropped
            acc += f(z) / (z - k);
        }
    }
    return -acc * hx * hy / kPi;
}

VerificationReport verify_pompeiu(const ScalarEvaluator& phi, const ScalarEvaluator& dbar_phi,
                                  Region disk, const std::vector<Complex>& k_samples, int nr,
                                  int ntheta, int m_boundary, double tol) {
    if (disk.tag != RegionTag::Disk && disk.tag != RegionTag::UnitDisk)
        throw std::invalid_argument("verify_pompeiu: disk region required");
    if (m_boundary < 512) throw std::invalid_argument("verify_pompeiu: m_boundary >= 512");

    const QuadratureGrid grid = build_disk_grid(disk.center, disk.radius, nr, ntheta);
    const ScalarField f = ScalarField::sample(grid, dbar_phi);
    const CauchyEvaluation area = cauchy_transform(f, k_samples);

    VerificationReport report;
    report.grid_nr = nr;
    report.grid_ntheta = ntheta;
    for (std::size_t s = 0; s < k_samples.size(); ++s) {
        const Complex k = k_samples[s];
        Complex boundary(0);
        for (int j = 0; j < m_boundary; ++j) {
            const double th = 2.0 * kPi * j / m_boundary;
            const Complex e(std::cos(th), std::sin(th));
            const Complex z = disk.center + disk.radius * e;
            boundary += phi(z) * disk.radius * e / (z - k);
        }
        boundary /= static_cast<double>(m_boundary);
        const double residual = std::abs(phi(k) - boundary - area.values[s]);
        report.add("pompeiu_residual_k" + std::to_string(s), residual, 0.0, tol, residual <= tol);
    }
    return report;
}

namespace {

// I(mu,nu) at one (k1,k2): Cartesian midpoint with polar patches replacing
// the cells near each singular point inside the domain.
double singular_pair_integral(double mu, double nu, Complex k1, Complex k2, Region region) {
    const Box b = bounding_box(region);
    const double d = std::abs(k1 - k2);
    const double rho = std::min(0.08, d / 3.0);
    const double L = std::max(b.x1 - b.x0, b.y1 - b.y0);
    const int n = std::clamp(static_cast<int>(std::ceil(L / (rho / 6.0))), 256, 2000);
    const double hx = (b.x1 - b.x0) / n;
    const double hy = (b.y1 - b.y0) / n;

    auto integrand = [&](Complex z) {
        return std::pow(std::abs(z - k1), -mu) * std::pow(std::abs(z - k2), -nu);
    };

    const bool patch1 = region.contains(k1);
    const bool patch2 = region.contains(k2);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = b.x0 + (i + 0.5) * hx;
        for (int j = 0; j < n; ++j) {
            const Complex z(x, b.y0 + (j + 0.5) * hy);
            if (!region.contains(z)) continue;
            if (patch1 && std::abs(z - k1) < rho) continue;
            if (patch2 && std::abs(z - k2) < rho) continue;
            acc += integrand(z);
        }
    }
    acc *= hx * hy;

    // Polar midpoint patch around each singular point; the radial factor
    // r^{1-mu} (resp. r^{1-nu}) is integrable for mu, nu < 2.
    auto patch = [&](Complex kc, double expo, Complex other, double oexp) {
        const int pr = 48, pt = 48;
        const double drr = rho / pr;
        const double dth = 2.0 * kPi / pt;
        double s = 0.0;
        for (int i = 0; i < pr; ++i) {
            const double r = (i + 0.5) * drr;
            for (int j = 0; j < pt; ++j) {
                const double th = (j + 0.5) * dth;
                const Complex z = kc + Complex(r * std::cos(th), r * std::sin(th));
                if (!region.contains(z)) continue;
                s += std::pow(r, -expo) * std::pow(std::abs(z - other), -oexp) * r * drr * dth;
            }
        }
        return s;
    };
    if (patch1) acc += patch(k1, mu, k2, nu);
    if (patch2) acc += patch(k2, nu, k1, mu);
    return acc;
}

}  // namespace

Lemma1Result lemma1_check(double mu, double nu, Complex k1, Complex k2, Region disk) {
    if (mu <= 0.0 || mu >= 2.0 || nu <= 0.0 || nu >= 2.0)
        throw std::invalid_argument("lemma1_check: mu, nu in (0,2) required");
    if (std::abs(k1 - k2) == 0.0) throw std::invalid_argument("lemma1_check: k1 != k2 required");

    Lemma1Result res;
    const double s = mu + nu;
    res.regime = s < 2.0 - 1e-12 ? Lemma1Regime::Sub
                                 : (s > 2.0 + 1e-12 ? Lemma1Regime::Super : Lemma1Regime::Log);
    res.integral = singular_pair_integral(mu, nu, k1, k2, disk);

    // Shrink k2 toward k1 along the joining direction; 5 halvings.
    const Complex dir = (k2 - k1) / std::abs(k2 - k1);
    std::vector<double> xs, ys;
    for (int j = 0; j < 5; ++j) {
        const double dj = std::abs(k2 - k1) * std::pow(0.5, j);
        const double val = singular_pair_integral(mu, nu, k1, k1 + dj * dir, disk);
        res.shrink_distances.push_back(dj);
        res.shrink_values.push_back(val);
        xs.push_back(std::log(dj));
        ys.push_back(std::log(val));
    }

    // Least-squares slope of log I vs log d (super regime target: 2-mu-nu).
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int nfit = static_cast<int>(xs.size());
        for (int i = 0; i < nfit; ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        res.exponent_fit = (nfit * sxy - sx * sy) / (nfit * sxx - sx * sx);
    }
    // Log-regime growth coefficient: LS fit of I against |ln d|.
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int nfit = static_cast<int>(res.shrink_distances.size());
        for (int i = 0; i < nfit; ++i) {
            const double lx = std::abs(std::log(res.shrink_distances[i]));
            sx += lx;
            sy += res.shrink_values[i];
            sxx += lx * lx;
            sxy += lx * res.shrink_values[i];
        }
        res.log_coefficient = (nfit * sxy - sx * sy) / (nfit * sxx - sx * sx);
    }
    return res;
}

Theorem3Result theorem3_check(const ScalarField& f, double p, int pair_budget,
                              std::uint64_t seed) {
    if (p <= 2.0) throw std::invalid_argument("theorem3_check: p > 2 required");
    const double fnorm = lp_norm_bounded(f, p);
    Theorem3Result res;
    res.gamma = (p - 2.0) / p;
    if (fnorm == 0.0) return res;

    std::uint64_t state = seed;
    std::vector<Complex> targets;
    for (int i = 0; i < 200; ++i) targets.push_back(sample_point(Region::disk({0, 0}, 2.0), state));
    const CauchyEvaluation ev = cauchy_transform(f, targets);
    double sup = 0.0;
    for (Complex v : ev.values) sup = std::max(sup, std::abs(v));
    res.bound_ratio = sup / fnorm;

    ScalarEvaluator g = [&f](Complex k) {
        return cauchy_transform(f, std::vector<Complex>{k}).values[0];
    };
    const HolderEstimate he =
        holder_norm_estimate(g, res.gamma, Region::disk({0, 0}, 2.0), pair_budget, seed);
    res.empirical_exponent = he.empirical_exponent;
    return res;
}

}  // namespace dbar
