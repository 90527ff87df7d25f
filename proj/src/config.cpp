#include "lspec/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace lspec {

namespace {

const std::map<std::string, std::set<std::string>> kSchema = {
    {"model", {"kind", "l", "j_z", "j", "h_x", "h_z", "r_z", "seed"}},
    {"times", {"t", "dt"}},
    {"grid", {"e_min", "e_max", "de", "points"}},
    {"windows", {"e_minus", "e_plus", "t_sc"}},
    {"ensemble", {"n_realizations", "base_seed"}},
    {"outputs", {"dir", "vectors"}},
    {"fock", {"sigma"}},
    {"thermo", {"beta_max", "beta_points"}},
    {"stochastic", {"samples", "seed"}},
};

std::string trim(std::string_view v) {
    std::size_t a = 0;
    std::size_t b = v.size();
    while (a < b && std::isspace(static_cast<unsigned char>(v[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(v[b - 1]))) --b;
    return std::string(v.substr(a, b - a));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw config_error(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& name, int line, const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        fail(name, line, "expected a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& name, int line, const std::string& v) {
    long long out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        fail(name, line, "expected an integer, got '" + v + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& name, int line, const std::string& v) {
    std::uint64_t out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        fail(name, line, "expected an unsigned integer, got '" + v + "'");
    return out;
}

bool parse_bool(const std::string& name, int line, const std::string& v) {
    const std::string s = lower(v);
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    fail(name, line, "expected a boolean, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& name, int line, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(name, line, "empty entry in list '" + v + "'");
        out.push_back(parse_double(name, line, item));
    }
    if (out.empty()) fail(name, line, "empty list");
    return out;
}

} // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& name) {
    ExperimentConfig cfg;
    cfg.raw_text = std::string(text);
    cfg.path = name;

    std::string section;
    std::set<std::string> seen;
    std::istringstream in(cfg.raw_text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail(name, line, "unterminated section header");
            section = lower(trim(s.substr(1, s.size() - 2)));
            if (kSchema.find(section) == kSchema.end())
                fail(name, line, "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(name, line, "expected key = value");
        if (section.empty()) fail(name, line, "key outside any [section]");
        const std::string key = lower(trim(s.substr(0, eq)));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(name, line, "empty key");
        if (value.empty()) fail(name, line, "empty value for '" + key + "'");
        if (!kSchema.at(section).count(key))
            fail(name, line, "unknown key '" + key + "' in [" + section + "]");
        if (!seen.insert(section + "." + key).second)
            fail(name, line, "duplicate key '" + key + "' in [" + section + "]");

        const bool is_auto = lower(value) == "auto";
        if (section == "model") {
            if (key == "kind") {
                const std::string k = lower(value);
                if (k == "ising") cfg.model.kind = ModelKind::IsingZ;
                else if (k == "xxz") cfg.model.kind = ModelKind::XXZ;
                else fail(name, line, "kind must be 'ising' or 'xxz'");
            } else if (key == "l") cfg.model.L = static_cast<int>(parse_int(name, line, value));
            else if (key == "j_z") cfg.model.j_z = parse_double(name, line, value);
            else if (key == "j") cfg.model.j = parse_double(name, line, value);
            else if (key == "h_x") cfg.model.h_x = parse_double(name, line, value);
            else if (key == "h_z") cfg.model.h_z = parse_double(name, line, value);
            else if (key == "r_z") cfg.model.r_z = parse_double(name, line, value);
            else if (key == "seed") cfg.model.seed = parse_u64(name, line, value);
        } else if (section == "times") {
            if (key == "t") cfg.t_values = parse_list(name, line, value);
            else if (key == "dt" && !is_auto) cfg.dt = parse_double(name, line, value);
        } else if (section == "grid") {
            if (is_auto) continue;
            if (key == "e_min") cfg.grid_e_min = parse_double(name, line, value);
            else if (key == "e_max") cfg.grid_e_max = parse_double(name, line, value);
            else if (key == "de") cfg.grid_de = parse_double(name, line, value);
            else if (key == "points") cfg.grid_points = static_cast<int>(parse_int(name, line, value));
        } else if (section == "windows") {
            if (key == "e_minus") cfg.eth_e_minus = parse_double(name, line, value);
            else if (key == "e_plus") cfg.eth_e_plus = parse_double(name, line, value);
            else if (key == "t_sc" && !is_auto) cfg.t_sc = parse_double(name, line, value);
        } else if (section == "ensemble") {
            if (key == "n_realizations")
                cfg.n_realizations = static_cast<int>(parse_int(name, line, value));
            else if (key == "base_seed") cfg.base_seed = parse_u64(name, line, value);
        } else if (section == "outputs") {
            if (key == "dir") cfg.out_dir = value;
            else if (key == "vectors") cfg.export_vectors = parse_bool(name, line, value);
        } else if (section == "fock") {
            if (key == "sigma") cfg.fock_pattern = value;
        } else if (section == "thermo") {
            if (key == "beta_max") cfg.beta_max = parse_double(name, line, value);
            else if (key == "beta_points")
                cfg.beta_points = static_cast<int>(parse_int(name, line, value));
        } else if (section == "stochastic") {
            if (key == "samples") cfg.stochastic_samples = static_cast<int>(parse_int(name, line, value));
            else if (key == "seed") cfg.stochastic_seed = parse_u64(name, line, value);
        }
    }

    try {
        cfg.model.validate();
    } catch (const validation_error& e) {
        throw config_error(name + ": invalid [model]: " + e.what());
    }
    if (cfg.n_realizations < 1)
        throw config_error(name + ": [ensemble] n_realizations must be >= 1");
    if (cfg.beta_points < 2 || !(cfg.beta_max > 0.0))
        throw config_error(name + ": invalid [thermo] grid");
    if (cfg.stochastic_samples < 1)
        throw config_error(name + ": [stochastic] samples must be >= 1");
    for (double t : cfg.t_values)
        if (!(t > 0.0)) throw config_error(name + ": [times] T values must be positive");
    if (cfg.dt && !(*cfg.dt > 0.0))
        throw config_error(name + ": [times] dt must be positive");
    if (!cfg.fock_pattern.empty()) {
        try {
            const FockState f = FockState::from_pattern(cfg.fock_pattern);
            if (f.L != cfg.model.L)
                throw validation_error("pattern length differs from model L");
        } catch (const validation_error& e) {
            throw config_error(name + ": invalid [fock] sigma: " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error(path + ": cannot open config file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

std::string model_to_config(const ModelSpec& m) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "[model]\nkind = %s\nL = %d\nj_z = %.17g\nj = %.17g\nh_x = %.17g\n"
                  "h_z = %.17g\nr_z = %.17g\nseed = %llu\n",
                  m.kind == ModelKind::IsingZ ? "ising" : "xxz", m.L, m.j_z, m.j, m.h_x,
                  m.h_z, m.r_z, static_cast<unsigned long long>(m.seed));
    return buf;
}

FockState ExperimentConfig::fock_state() const {
    if (!fock_pattern.empty()) return FockState::from_pattern(fock_pattern);
    std::string neel(static_cast<std::size_t>(model.L), 'u');
    for (int i = 0; i < model.L; ++i)
        if ((i / 2) % 2 == 1) neel[static_cast<std::size_t>(i)] = 'd';
    return FockState::from_pattern(neel);
}

EnergyGrid ExperimentConfig::resolve_grid(const Spectrum& s, double T) const {
    EnergyGrid def = EnergyGrid::default_for(s, T);
    const double lo = grid_e_min.value_or(def.e_min);
    const double hi = grid_e_max.value_or(def.e_max);
    int points = 0;
    if (grid_points)
        points = *grid_points;
    else if (grid_de)
        points = static_cast<int>(std::ceil((hi - lo) / *grid_de)) + 1;
    else
        points = std::max(2, static_cast<int>(std::ceil((hi - lo) * 8.0 * T)) + 1);
    EnergyGrid grid(lo, hi, points);
    if (grid.spacing() > 1.0 / (4.0 * T) * (1.0 + 1e-12))
        throw config_error(path + ": [grid] spacing exceeds 1/(4T) at T=" + std::to_string(T));
    return grid;
}

TimeGrid ExperimentConfig::resolve_time_grid(const Spectrum& s, double T) const {
    if (!dt) return TimeGrid::for_spectrum(s, T);
    const int steps = std::max(1, static_cast<int>(std::ceil(T / *dt - 1e-9)));
    TimeGrid grid(T / steps, steps);
    if (grid.dt * s.bandwidth() > std::numbers::pi * (1.0 + 1e-12))
        throw config_error(path + ": [times] dt violates the aliasing guard pi/bandwidth");
    return grid;
}

} // namespace lspec
