#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lgp/types.hpp"

namespace lgp::cli {

/// Invalid or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { ContinuousOscillator, DiscreteOscillator, Convergence1D, FillDistance };

[[nodiscard]] std::string to_string(ExperimentKind kind);
[[nodiscard]] ExperimentKind experiment_kind_from_string(const std::string& name);

/// Every experiment parameter, with the defaults used for the reference runs.
/// Sampling is deterministic (Halton, meshes), so there is no seed.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::ContinuousOscillator;
    int samples = 80;
    double alpha = 0.1;
    /// Snapshot spacing of the discrete model.
    double step = 0.1;
    /// Midpoint-rule substeps per snapshot spacing when generating data.
    int substeps = 10;
    double region_lower = -1.0;
    double region_upper = 1.0;
    /// Normalisation point; empty means the centroid of the region.
    Vector base;
    double base_value = 1.0;
    /// Momentum at the base point; empty means zero.
    Vector base_momentum;
    double lengthscale = 1.0;
    double jitter = 0.0;
    double pinv_cutoff = 1e-12;
    /// RK4 step and horizon for continuous trajectories.
    double integrator_dt = 0.01;
    double horizon = 100.0;
    /// Discrete evolution steps.
    int steps = 1000;
    /// Continuous: (x, xd). Discrete: (x, p) of the true-flow seed.
    Vector start;
    std::vector<int> convergence_sizes{2, 4, 8, 16, 32, 64};
    int eval_mesh_x = 10;
    int eval_mesh_v = 11;
    std::vector<int> fill_dims{1, 2};
    std::vector<int> fill_sizes{4, 9, 16, 25, 36, 49, 64, 100, 144, 196, 256, 324, 400};
    int probe_resolution = 100;
    int grid_resolution = 50;
    std::string output_dir = ".";
    unsigned threads = 0;

    /// Configuration dimension d of the experiment's system.
    [[nodiscard]] int half_dim() const;
    [[nodiscard]] Vector resolved_base() const;
    [[nodiscard]] Vector resolved_momentum() const;
};

/// Defaults for a kind (start point and sample count differ per experiment).
[[nodiscard]] ExperimentConfig default_config(ExperimentKind kind);

/// Sets one `key = value` entry. Throws ConfigError for unknown keys or bad values.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads `key = value` lines ('#' starts a comment). A `kind` entry, if present,
/// resets the remaining keys to that kind's defaults before they are applied.
[[nodiscard]] ExperimentConfig load_config(const std::string& path);
[[nodiscard]] ExperimentConfig parse_config(const std::string& text);

/// Applies `key=value` overrides in order.
void apply_overrides(ExperimentConfig& config, const std::vector<std::string>& overrides);

/// Throws ConfigError when the configuration cannot be run.
void validate(const ExperimentConfig& config);

/// Full configuration in the file format accepted by parse_config.
[[nodiscard]] std::string dump_config(const ExperimentConfig& config);

[[nodiscard]] Vector parse_vector(const std::string& text);
[[nodiscard]] std::string format_vector(const Vector& v);

}  // namespace lgp::cli
