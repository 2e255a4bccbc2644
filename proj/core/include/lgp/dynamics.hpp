#pragma once

#include <vector>

#include "lgp/analytic.hpp"
#include "lgp/lagrangian.hpp"
#include "lgp/sampling.hpp"

namespace lgp {

/// Reciprocal condition number below which a Hessian block counts as degenerate.
inline constexpr double kDegenerateRcond = 1e-12;

struct NewtonConfig {
    double tol = 1e-12;
    int max_iter = 50;
    bool fd_jacobian = false;
};

struct NewtonResult {
    Vector solution;
    /// Residual norm before each update and after the last one.
    std::vector<double> residuals;
    /// Residual normalisation used by the stopping test.
    double scale = 1.0;
};

/// Continuous: states are (x, xd) of length 2d, times t_k = k dt.
/// Discrete: states are snapshots x_k of length d, times are step counts.
struct Trajectory {
    ModelKind kind = ModelKind::Continuous;
    std::vector<double> times;
    std::vector<Vector> states;
    std::size_t steps_outside_region = 0;
};

/// xdd solving EL(L)(x, xd, xdd) = 0:
///   L_{xd xd} xdd = L_x - L_{xd x} xd.
/// Throws DegenerateError when L_{xd xd} has reciprocal condition < 1e-12.
[[nodiscard]] Vector acceleration(const Lagrangian& lagrangian, const PhasePoint& point);

/// Euler-Lagrange residual EL(L)(x, xd, xdd) as a vector.
[[nodiscard]] Vector el_residual(const Lagrangian& lagrangian, const PhasePoint& point, const Vector& accel);

/// Classical fixed-step RK4 on (x, xd)' = (xd, g(x, xd)).
[[nodiscard]] Trajectory integrate(const Lagrangian& lagrangian, const PhasePoint& start, double horizon, double dt,
                                   const Box* region = nullptr);

/// DEL(L_d)(x0, x1, x2) = d2 L_d(x0, x1) + d1 L_d(x1, x2).
[[nodiscard]] Vector del_residual(const Lagrangian& discrete, const Vector& x0, const Vector& x1, const Vector& x2);

/// Newton solve of DEL(L_d)(x0, x1, x2) = 0 for x2 starting from 2 x1 - x0.
/// The Jacobian d/dx2 is the mixed block d^2 L_d / dx0 dx1 at (x1, x2), taken
/// from the Lagrangian's second partials or, with fd_jacobian, from central
/// differences of the residual.
[[nodiscard]] NewtonResult solve_discrete_step(const Lagrangian& discrete, const Vector& x0, const Vector& x1,
                                               const NewtonConfig& cfg = {});

[[nodiscard]] Vector discrete_evolution(const Lagrangian& discrete, const Vector& x0, const Vector& x1,
                                        const NewtonConfig& cfg = {});

/// Snapshots x_0 .. x_{steps+1} of the discrete flow seeded with (x0, x1).
[[nodiscard]] Trajectory evolve_discrete(const Lagrangian& discrete, const Vector& x0, const Vector& x1, int steps,
                                         const NewtonConfig& cfg = {});

/// One step of the variational midpoint rule for an analytic continuous
/// Lagrangian: x2 from (x0, x1).
[[nodiscard]] Vector midpoint_step(const AnalyticLagrangian& lagrangian, const Vector& x0, const Vector& x1,
                                   double dt, const NewtonConfig& cfg = {});

struct PositionMomentum {
    Vector x;
    Vector p;
};

/// Position-momentum form of a discrete Lagrangian map:
/// solve p = -d1 L_d(x, x') for x', then p' = d2 L_d(x, x').
[[nodiscard]] PositionMomentum discrete_flow_step(const Lagrangian& discrete, const PositionMomentum& state,
                                                  const NewtonConfig& cfg = {});

/// Positions at t = 0, dt, ..., (count - 1) dt of the midpoint-rule flow of L
/// started from (x, p), using substeps internal steps of dt / substeps.
[[nodiscard]] std::vector<Vector> midpoint_snapshots(const AnalyticLagrangian& lagrangian, const PositionMomentum& start,
                                                     double dt, int substeps, int count, const NewtonConfig& cfg = {});

/// Velocity xd with dL/dxd(x, xd) = p (Newton from xd = p).
[[nodiscard]] Vector velocity_from_momentum(const Lagrangian& lagrangian, const Vector& x, const Vector& p,
                                            const NewtonConfig& cfg = {});

}  // namespace lgp
