#ifndef DBAR_CONFIG_HPP
#define DBAR_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dbar/fields.hpp"
#include "dbar/spectral.hpp"

namespace dbar {

/// Malformed or invariant-violating run configuration; the message names the
/// offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One run of the pipeline, as read from a JSON config file. Every field has
/// a default, so `{}` is a valid config (the zero preset).
struct RunConfig {
    std::string preset = "zero";  // zero | annulus_bump | rational_decay
    Complex amplitude_plus{0.0, 0.0};
    Complex amplitude_minus{0.0, 0.0};

    int grid_nr = 32;
    int grid_ntheta = 64;

    double x_min = -1.0;
    double x_max = 1.0;
    int x_count = 64;

    double p = 8.0;
    double q = 8.0;

    double tol = 1e-10;
    int max_iter = 60;

    std::uint64_t seed = 1234;
    bool deterministic = true;

    SpectralData spectral_data() const;
    /// Uniform x samples over [x_min, x_max]; validation rejects grids that
    /// touch x = 0.
    std::vector<double> x_values() const;
    NormParams norm_params() const { return NormParams::from_pq(p, q); }
    /// FNV-1a hash of the canonical serialized form; identifies the run in
    /// reports and output file naming.
    std::uint64_t hash() const;
    std::string canonical_json() const;
};

/// Parse and validate a config from JSON text. Unknown keys and invariant
/// violations (exponent range, oscillation resolution, empty x grid) raise
/// ConfigError naming the field.
RunConfig parse_config(const std::string& json_text);

/// Read the file at `path` and parse it.
RunConfig load_config(const std::string& path);

}  // namespace dbar

#endif
