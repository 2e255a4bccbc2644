#pragma once

#include <string>
#include <vector>

#include "lgp/analytic.hpp"
#include "lgp/cli/config.hpp"
#include "lgp/dynamics.hpp"
#include "lgp/inference.hpp"
#include "lgp/observations.hpp"

namespace lgp::cli {

/// Phase-space region Omega = [lower, upper]^(2d).
[[nodiscard]] Box region(const ExperimentConfig& config);

/// Coupled oscillator (d = 2) or 1-D harmonic oscillator (convergence study).
[[nodiscard]] AnalyticLagrangian reference_lagrangian(const ExperimentConfig& config);

struct Dataset {
    ModelKind kind = ModelKind::Continuous;
    std::vector<JetPoint> jets;
    std::vector<SnapshotTriple> triples;

    [[nodiscard]] std::size_t size() const { return kind == ModelKind::Continuous ? jets.size() : triples.size(); }
};

/// First `count` Halton points of the region, turned into jets (continuous)
/// or snapshot triples from (x, p) starts (discrete).
[[nodiscard]] Dataset generate_dataset(const ExperimentConfig& config, int count);

[[nodiscard]] ConstraintSet build_constraints(const ExperimentConfig& config, const Dataset& data);
[[nodiscard]] GramOptions gram_options(const ExperimentConfig& config);
[[nodiscard]] Kernel kernel(const ExperimentConfig& config);

[[nodiscard]] PosteriorModel train_model(const ExperimentConfig& config, int count);
[[nodiscard]] PosteriorModel train_model(const ExperimentConfig& config, const Dataset& data);

struct TrainReport {
    std::size_t constraints = 0;
    double solve_residual = 0.0;
    double constraint_residual = 0.0;
    double rhs_norm = 0.0;
    double rkhs_norm = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int rank = 0;
    std::vector<std::string> warnings;
};

[[nodiscard]] TrainReport train_report(const PosteriorModel& model);
[[nodiscard]] std::string format_report(const TrainReport& report);

/// Reference motion from config.start: RK4 of the analytic Lagrangian
/// (continuous) or fine midpoint-rule snapshots x_0 .. x_{steps+1} (discrete).
[[nodiscard]] Trajectory reference_trajectory(const ExperimentConfig& config);

/// Learned motion from the same initial data. Discrete models are seeded
/// with the first two reference snapshots.
[[nodiscard]] Trajectory model_trajectory(const ExperimentConfig& config, const Lagrangian& model);

/// max over time and position components of |x_model - x_ref|.
[[nodiscard]] double max_position_error(const Trajectory& a, const Trajectory& b);

/// Componentwise posterior variance of the (D)EL residual along a trajectory,
/// one row per `stride` states (rows for degenerate states are NaN).
[[nodiscard]] std::vector<std::pair<double, Vector>> trajectory_variance(const PosteriorModel& model,
                                                                         const Trajectory& trajectory, int stride);

struct ConvergenceRow {
    int samples = 0;
    double fill_distance = 0.0;
    double max_rel_error = 0.0;
    /// Evaluation points skipped because the learned model is degenerate there.
    int excluded = 0;
};

[[nodiscard]] std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& config);

/// Slopes of log(error) against log(M) between consecutive rows.
[[nodiscard]] std::vector<double> loglog_slopes(const std::vector<ConvergenceRow>& rows);

struct FillRow {
    int dim = 0;
    int samples = 0;
    double uniform = 0.0;
    double halton = 0.0;
    double formula = 0.0;
};

/// Fill distance of uniform meshes and Halton sets on [lower, upper]^dim.
/// Sizes that are not perfect dim-th powers are skipped for the mesh (NaN).
[[nodiscard]] std::vector<FillRow> fill_distance_study(const ExperimentConfig& config);

enum class Observable { EulerLagrange, Hamiltonian, Momentum };

[[nodiscard]] Observable observable_from_string(const std::string& name);

/// A 2-D slice through phase space: coordinates `axis_u` and `axis_v` vary over
/// [lower, upper] on a resolution x resolution grid, the rest stay at `anchor`.
/// Discrete models are sliced in (x, p) space; each point is turned into a
/// triple by the reference flow.
struct SliceSpec {
    int axis_u = 0;
    int axis_v = 1;
    Vector anchor;
    double lower = -1.0;
    double upper = 1.0;
    int resolution = 50;
};

/// Parses "x0,x1" style axis pairs: x<i> is position i, v<i> or p<i> is the
/// second half (velocity or momentum) component i.
[[nodiscard]] std::pair<int, int> parse_axes(const std::string& text, int half_dim);

struct GridRow {
    double u = 0.0;
    double v = 0.0;
    Vector value;
    Vector variance;
};

[[nodiscard]] std::vector<GridRow> uq_grid(const ExperimentConfig& config, const PosteriorModel& model,
                                           Observable observable, const SliceSpec& slice);

/// Median of the finite entries (NaN when none).
[[nodiscard]] double median(std::vector<double> values);

}  // namespace lgp::cli
