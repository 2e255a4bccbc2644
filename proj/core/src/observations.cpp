#include "lgp/observations.hpp"

namespace lgp {

std::vector<JetPoint> gen_continuous_observations(const AnalyticLagrangian& lagrangian, const SampleSet& samples) {
    if (lagrangian.kind() != ModelKind::Continuous)
        throw std::invalid_argument("gen_continuous_observations: continuous Lagrangian expected");
    std::vector<JetPoint> out;
    out.reserve(samples.size());
    for (const auto& z : samples.points) {
        if (z.size() != 2 * lagrangian.half_dim())
            throw DimensionError("gen_continuous_observations: sample dimension mismatch");
        PhasePoint p = PhasePoint::from_coords(z);
        Vector a = acceleration(lagrangian, p);
        out.push_back({std::move(p), std::move(a)});
    }
    return out;
}

std::vector<SnapshotTriple> gen_discrete_observations(const AnalyticLagrangian& lagrangian,
                                                      const std::vector<PositionMomentum>& initial, double dt,
                                                      int substeps, const NewtonConfig& cfg) {
    if (lagrangian.kind() != ModelKind::Continuous)
        throw std::invalid_argument("gen_discrete_observations: continuous Lagrangian expected");
    if (!(dt > 0.0)) throw std::invalid_argument("gen_discrete_observations: dt must be positive");
    std::vector<SnapshotTriple> out;
    out.reserve(initial.size());
    for (const auto& start : initial) {
        const auto x = midpoint_snapshots(lagrangian, start, dt, substeps, 3, cfg);
        out.push_back({x[0], x[1], x[2]});
    }
    return out;
}

std::vector<PositionMomentum> split_position_momentum(const SampleSet& samples) {
    std::vector<PositionMomentum> out;
    out.reserve(samples.size());
    for (const auto& z : samples.points) {
        if (z.size() % 2 != 0) throw DimensionError("split_position_momentum: odd sample dimension");
        const auto d = z.size() / 2;
        out.push_back({z.head(d), z.tail(d)});
    }
    return out;
}

}  // namespace lgp
