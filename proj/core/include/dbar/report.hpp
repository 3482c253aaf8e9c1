#ifndef DBAR_REPORT_HPP
#define DBAR_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace dbar {

struct CheckRecord {
    std::string name;
    double observed = 0.0;
    double bound_or_target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Structured record of residuals, empirical exponents/constants, and
/// pass/fail flags, plus provenance for reproducibility.
struct VerificationReport {
    std::vector<CheckRecord> checks;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    int grid_nr = 0;
    int grid_ntheta = 0;

    void add(const std::string& name, double observed, double bound, double tol, bool pass) {
        checks.push_back({name, observed, bound, tol, pass});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double max_observed() const {
        double m = 0.0;
        for (const auto& c : checks) m = std::max(m, c.observed);
        return m;
    }
    std::string to_json() const;
};

}  // namespace dbar

#endif
