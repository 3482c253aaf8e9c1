#include "dbar/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dbar {

using json = nlohmann::ordered_json;

SpectralData RunConfig::spectral_data() const {
    if (preset == "zero") return SpectralData::zero();
    if (preset == "annulus_bump")
        return SpectralData::annulus_bump(amplitude_plus, amplitude_minus);
    if (preset == "rational_decay")
        return SpectralData::rational_decay(amplitude_plus, amplitude_minus);
    throw ConfigError("preset: unknown preset '" + preset + "'");
}

std::vector<double> RunConfig::x_values() const {
    std::vector<double> xs;
    if (x_count == 1) {
        if (x_min != 0.0) xs.push_back(x_min);
        return xs;
    }
    const double dx = (x_max - x_min) / (x_count - 1);
    for (int i = 0; i < x_count; ++i) xs.push_back(x_min + i * dx);
    return xs;
}

std::string RunConfig::canonical_json() const {
    json j;
    j["preset"] = preset;
    j["amplitude_plus"] = {amplitude_plus.real(), amplitude_plus.imag()};
    j["amplitude_minus"] = {amplitude_minus.real(), amplitude_minus.imag()};
    j["grid"] = {{"nr", grid_nr}, {"ntheta", grid_ntheta}};
    j["x_grid"] = {{"min", x_min}, {"max", x_max}, {"count", x_count}};
    j["exponents"] = {{"p", p}, {"q", q}};
    j["solver"] = {{"tol", tol}, {"max_iter", max_iter}};
    j["seed"] = seed;
    j["deterministic"] = deterministic;
    return j.dump();
}

std::uint64_t RunConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_json()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

Complex parse_amplitude(const json& v, const char* field) {
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex(v[0].get<double>(), v[1].get<double>());
    throw ConfigError(std::string(field) + ": expected a number or [re, im]");
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key)) throw ConfigError(where + key + ": unknown field");
}

void validate(const RunConfig& c) {
    c.spectral_data();  // preset name check
    if (c.grid_nr < 2 || c.grid_ntheta < 2)
        throw ConfigError("grid: nr and ntheta must be at least 2");
    if (!(c.x_min <= c.x_max)) throw ConfigError("x_grid: min must not exceed max");
    if (c.x_count < 1) throw ConfigError("x_grid.count: must be at least 1");
    for (double x : c.x_values())
        if (std::abs(x) < 1e-12)
            throw ConfigError("x_grid: grid includes x = 0, where the half-line "
                              "indicator decomposition is undefined");
    if (c.p <= 2.0 || c.q <= 2.0) throw ConfigError("exponents: p and q must exceed 2");
    if (1.0 / c.p + 1.0 / c.q >= 0.5)
        throw ConfigError("exponents: 1/p + 1/q must be below 1/2");
    if (c.tol <= 0.0) throw ConfigError("solver.tol: must be positive");
    if (c.max_iter < 1) throw ConfigError("solver.max_iter: must be at least 1");
    // The integrands oscillate like e^{2ikx}; keep enough angular cells to
    // resolve a period at the largest |x|.
    const double xmax = std::max(std::abs(c.x_min), std::abs(c.x_max));
    const int need = 64 * static_cast<int>(std::ceil(std::max(xmax, 1.0)));
    if (c.grid_ntheta < need)
        throw ConfigError("grid.ntheta: must be at least " + std::to_string(need) +
                          " to resolve the oscillation at max |x| = " + std::to_string(xmax));
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    reject_unknown(j,
                   {"preset", "amplitude_plus", "amplitude_minus", "grid", "x_grid", "exponents",
                    "solver", "seed", "deterministic"},
                   "");

    RunConfig c;
    try {
        if (j.contains("preset")) c.preset = j["preset"].get<std::string>();
        if (j.contains("amplitude_plus"))
            c.amplitude_plus = parse_amplitude(j["amplitude_plus"], "amplitude_plus");
        if (j.contains("amplitude_minus"))
            c.amplitude_minus = parse_amplitude(j["amplitude_minus"], "amplitude_minus");
        if (j.contains("grid")) {
            const json& g = j["grid"];
            reject_unknown(g, {"nr", "ntheta"}, "grid.");
            if (g.contains("nr")) c.grid_nr = g["nr"].get<int>();
            if (g.contains("ntheta")) c.grid_ntheta = g["ntheta"].get<int>();
        }
        if (j.contains("x_grid")) {
            const json& g = j["x_grid"];
            reject_unknown(g, {"min", "max", "count"}, "x_grid.");
            if (g.contains("min")) c.x_min = g["min"].get<double>();
            if (g.contains("max")) c.x_max = g["max"].get<double>();
            if (g.contains("count")) c.x_count = g["count"].get<int>();
        }
        if (j.contains("exponents")) {
            const json& g = j["exponents"];
            reject_unknown(g, {"p", "q"}, "exponents.");
            if (g.contains("p")) c.p = g["p"].get<double>();
            if (g.contains("q")) c.q = g["q"].get<double>();
        }
        if (j.contains("solver")) {
            const json& g = j["solver"];
            reject_unknown(g, {"tol", "max_iter"}, "solver.");
            if (g.contains("tol")) c.tol = g["tol"].get<double>();
            if (g.contains("max_iter")) c.max_iter = g["max_iter"].get<int>();
        }
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("deterministic")) c.deterministic = j["deterministic"].get<bool>();
    } catch (const json::type_error& e) {
        throw ConfigError(std::string("config: wrong field type (") + e.what() + ")");
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace dbar
