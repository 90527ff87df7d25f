#pragma once

#include "lspec/dynamics.hpp"
#include "lspec/model.hpp"
#include "lspec/reconstruct.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lspec {

/// One experiment per file: flat sections of key = value pairs, '#' comments.
/// The parser is schema-strict: unknown sections or keys, duplicates, and
/// malformed values are config_errors carrying "file:line:" anchors.
struct ExperimentConfig {
    ModelSpec model;

    std::vector<double> t_values;           // [times] T = 5, 20, ...
    std::optional<double> dt;               // [times] dt (auto: aliasing guard)

    std::optional<double> grid_e_min;       // [grid]
    std::optional<double> grid_e_max;
    std::optional<double> grid_de;
    std::optional<int> grid_points;

    double eth_e_minus = -1.0;              // [windows]
    double eth_e_plus = 1.0;
    std::optional<double> t_sc;

    int n_realizations = 1;                 // [ensemble]
    std::optional<std::uint64_t> base_seed; // default: model.seed

    std::string out_dir = "out";            // [outputs]
    bool export_vectors = false;

    std::string fock_pattern;               // [fock] sigma; default uudd...

    double beta_max = 2.0;                  // [thermo]
    int beta_points = 41;

    int stochastic_samples = 200;           // [stochastic]
    std::uint64_t stochastic_seed = 77;

    std::string raw_text;                   // exact file bytes, hashed into manifests
    std::string path;

    /// The configured probe state; defaults to the alternating-pair pattern
    /// uudd... at the model size.
    FockState fock_state() const;

    std::uint64_t ensemble_base_seed() const {
        return base_seed.value_or(model.seed);
    }

    /// Energy grid for observation time T: config overrides or the
    /// [E_0 - 10/T, E_max + 10/T], spacing 1/(8T) default. Enforces the
    /// spacing <= 1/(4T) invariant.
    EnergyGrid resolve_grid(const Spectrum& s, double T) const;

    /// Time grid reaching T: config dt or the aliasing-guard default.
    TimeGrid resolve_time_grid(const Spectrum& s, double T) const;
};

ExperimentConfig parse_config(std::string_view text, const std::string& name);
ExperimentConfig load_config(const std::string& path);

/// The [model] section for a spec, in the documented schema; parsing it back
/// reproduces the spec exactly.
std::string model_to_config(const ModelSpec& m);

} // namespace lspec
