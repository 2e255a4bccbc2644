#pragma once

#include "lgp/types.hpp"

namespace lgp {

class Functional;

/// Anything that can be differentiated twice at a phase-space point: analytic
/// reference Lagrangians and trained posterior means alike.
class Lagrangian {
public:
    virtual ~Lagrangian() = default;

    [[nodiscard]] virtual ModelKind kind() const = 0;
    [[nodiscard]] virtual int half_dim() const = 0;
    [[nodiscard]] virtual LocalJet jet(const PhasePoint& point) const = 0;

    [[nodiscard]] virtual double value(const PhasePoint& point) const { return jet(point).value; }
    [[nodiscard]] virtual double partial(const MultiIndex& alpha, const PhasePoint& point) const {
        return jet(point).partial(alpha);
    }

    /// Covariance of two linear observables of the (possibly random) Lagrangian.
    /// Deterministic Lagrangians carry no uncertainty.
    [[nodiscard]] virtual double covariance(const Functional& /*psi*/, const Functional& /*phi*/) const { return 0.0; }

    void check_point(const PhasePoint& point) const {
        if (point.half_dim() != half_dim()) throw DimensionError("Lagrangian: point dimension mismatch");
    }
};

}  // namespace lgp
