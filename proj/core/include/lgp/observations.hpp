#pragma once

#include <vector>

#include "lgp/analytic.hpp"
#include "lgp/dynamics.hpp"
#include "lgp/sampling.hpp"

namespace lgp {

/// Appends the true acceleration to each (x, xd) sample.
[[nodiscard]] std::vector<JetPoint> gen_continuous_observations(const AnalyticLagrangian& lagrangian,
                                                                const SampleSet& samples);

/// Snapshot triples (x(0), x(dt), x(2 dt)) of the midpoint-rule flow of the
/// continuous Lagrangian, started from each (x, p) and integrated with
/// internal step dt / substeps.
[[nodiscard]] std::vector<SnapshotTriple> gen_discrete_observations(const AnalyticLagrangian& lagrangian,
                                                                    const std::vector<PositionMomentum>& initial,
                                                                    double dt, int substeps,
                                                                    const NewtonConfig& cfg = {});

/// Splits 2d-dimensional sample points into (x, p) halves.
[[nodiscard]] std::vector<PositionMomentum> split_position_momentum(const SampleSet& samples);

}  // namespace lgp
