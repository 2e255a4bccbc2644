#include "lgp/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace lgp {

namespace {

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

Matrix fd_jacobian(const ResidualFn& residual, const Vector& x) {
    const double h = 1e-6 * (1.0 + x.lpNorm<Eigen::Infinity>());
    Matrix jac(x.size(), x.size());
    Vector probe = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        probe[j] = x[j] + h;
        const Vector plus = residual(probe);
        probe[j] = x[j] - h;
        const Vector minus = residual(probe);
        probe[j] = x[j];
        jac.col(j) = (plus - minus) / (2.0 * h);
    }
    return jac;
}

NewtonResult newton(const ResidualFn& residual, const JacobianFn& jacobian, Vector x, double scale,
                    const NewtonConfig& cfg, const char* what) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("NewtonConfig: tol must be positive");
    NewtonResult result;
    result.scale = scale;
    Vector r = residual(x);
    result.residuals.push_back(r.norm());
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        if (!r.allFinite()) break;
        if (result.residuals.back() <= cfg.tol * scale) {
            result.solution = std::move(x);
            return result;
        }
        const Matrix jac = cfg.fd_jacobian ? fd_jacobian(residual, x) : jacobian(x);
        const Eigen::PartialPivLU<Matrix> lu(jac);
        if (!(lu.rcond() >= kDegenerateRcond))
            throw DegenerateError(std::string(what) + ": singular Jacobian");
        const Vector step = lu.solve(r);
        x -= step;
        r = residual(x);
        result.residuals.push_back(r.norm());
        // Round-off level steps, or a residual that has stopped decreasing,
        // mean the evaluation noise floor has been reached.
        const double last = result.residuals.back();
        const double previous = result.residuals[result.residuals.size() - 2];
        const bool stalled = step.norm() <= cfg.tol * (1.0 + x.norm()) || last >= previous;
        if (stalled && last <= std::sqrt(cfg.tol) * scale) {
            result.solution = std::move(x);
            return result;
        }
    }
    if (r.allFinite() && result.residuals.back() <= cfg.tol * scale) {
        result.solution = std::move(x);
        return result;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e, scale %.3e", result.residuals.back(), scale);
    throw ConvergenceError(std::string(what) + ": Newton iteration did not converge (residual " + buf + ")");
}

}  // namespace

Vector acceleration(const Lagrangian& lagrangian, const PhasePoint& point) {
    if (lagrangian.kind() != ModelKind::Continuous)
        throw std::invalid_argument("acceleration: continuous Lagrangian expected");
    lagrangian.check_point(point);
    const int d = lagrangian.half_dim();
    const LocalJet j = lagrangian.jet(point);
    const Matrix vv = j.hessian.bottomRightCorner(d, d);
    const Matrix vx = j.hessian.bottomLeftCorner(d, d);  // rows xd^k, columns x^i
    const Vector rhs = j.gradient.head(d) - vx * point.second();

    const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (vv + vv.transpose()), Eigen::EigenvaluesOnly);
    const double largest = eig.eigenvalues().cwiseAbs().maxCoeff();
    const double smallest = eig.eigenvalues().cwiseAbs().minCoeff();
    if (!(largest > 0.0) || !(smallest >= kDegenerateRcond * largest))
        throw DegenerateError("acceleration: degenerate Lagrangian at query point");
    return vv.ldlt().solve(rhs);
}

Vector el_residual(const Lagrangian& lagrangian, const PhasePoint& point, const Vector& accel) {
    const int d = lagrangian.half_dim();
    const LocalJet j = lagrangian.jet(point);
    return j.hessian.bottomRightCorner(d, d) * accel + j.hessian.bottomLeftCorner(d, d) * point.second() -
           j.gradient.head(d);
}

Trajectory integrate(const Lagrangian& lagrangian, const PhasePoint& start, double horizon, double dt,
                     const Box* region) {
    if (!(dt > 0.0) || !(horizon >= 0.0)) throw std::invalid_argument("integrate: need dt > 0 and horizon >= 0");
    const int d = lagrangian.half_dim();
    const auto steps = static_cast<long>(std::llround(horizon / dt));
    auto field = [&](const Vector& z) {
        Vector dz(2 * d);
        dz.head(d) = z.tail(d);
        dz.tail(d) = acceleration(lagrangian, PhasePoint::from_coords(z));
        return dz;
    };

    Trajectory traj;
    traj.kind = ModelKind::Continuous;
    traj.times.reserve(static_cast<std::size_t>(steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    Vector z = start.coords();
    traj.times.push_back(0.0);
    traj.states.push_back(z);
    for (long n = 0; n < steps; ++n) {
        const Vector k1 = field(z);
        const Vector k2 = field(z + 0.5 * dt * k1);
        const Vector k3 = field(z + 0.5 * dt * k2);
        const Vector k4 = field(z + dt * k3);
        z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.times.push_back(static_cast<double>(n + 1) * dt);
        traj.states.push_back(z);
        if (region != nullptr && !region->contains(z)) ++traj.steps_outside_region;
    }
    return traj;
}

Vector del_residual(const Lagrangian& discrete, const Vector& x0, const Vector& x1, const Vector& x2) {
    const int d = discrete.half_dim();
    const LocalJet a = discrete.jet(PhasePoint(x0, x1));
    const LocalJet b = discrete.jet(PhasePoint(x1, x2));
    return a.gradient.tail(d) + b.gradient.head(d);
}

NewtonResult solve_discrete_step(const Lagrangian& discrete, const Vector& x0, const Vector& x1,
                                 const NewtonConfig& cfg) {
    if (discrete.kind() != ModelKind::Discrete)
        throw std::invalid_argument("discrete_evolution: discrete Lagrangian expected");
    const int d = discrete.half_dim();
    if (x0.size() != d || x1.size() != d) throw DimensionError("discrete_evolution: snapshot length mismatch");

    const Vector momentum = discrete.jet(PhasePoint(x0, x1)).gradient.tail(d);
    auto residual = [&](const Vector& x2) {
        return Vector(momentum + discrete.jet(PhasePoint(x1, x2)).gradient.head(d));
    };
    auto jacobian = [&](const Vector& x2) {
        return Matrix(discrete.jet(PhasePoint(x1, x2)).hessian.block(0, d, d, d));
    };
    return newton(residual, jacobian, 2.0 * x1 - x0, 1.0 + momentum.norm(), cfg, "discrete_evolution");
}

Vector discrete_evolution(const Lagrangian& discrete, const Vector& x0, const Vector& x1, const NewtonConfig& cfg) {
    return solve_discrete_step(discrete, x0, x1, cfg).solution;
}

Trajectory evolve_discrete(const Lagrangian& discrete, const Vector& x0, const Vector& x1, int steps,
                           const NewtonConfig& cfg) {
    if (steps < 0) throw std::invalid_argument("evolve_discrete: negative step count");
    Trajectory traj;
    traj.kind = ModelKind::Discrete;
    traj.states = {x0, x1};
    traj.times = {0.0, 1.0};
    for (int n = 0; n < steps; ++n) {
        const auto& prev = traj.states[traj.states.size() - 2];
        const auto& cur = traj.states.back();
        Vector next = discrete_evolution(discrete, prev, cur, cfg);
        traj.states.push_back(std::move(next));
        traj.times.push_back(static_cast<double>(n + 2));
    }
    return traj;
}

Vector midpoint_step(const AnalyticLagrangian& lagrangian, const Vector& x0, const Vector& x1, double dt,
                     const NewtonConfig& cfg) {
    return discrete_evolution(midpoint_discretisation(lagrangian, dt), x0, x1, cfg);
}

PositionMomentum discrete_flow_step(const Lagrangian& discrete, const PositionMomentum& state,
                                    const NewtonConfig& cfg) {
    if (discrete.kind() != ModelKind::Discrete)
        throw std::invalid_argument("discrete_flow_step: discrete Lagrangian expected");
    const int d = discrete.half_dim();
    if (state.x.size() != d || state.p.size() != d) throw DimensionError("discrete_flow_step: state length mismatch");
    auto residual = [&](const Vector& next) {
        return Vector(state.p + discrete.jet(PhasePoint(state.x, next)).gradient.head(d));
    };
    auto jacobian = [&](const Vector& next) {
        return Matrix(discrete.jet(PhasePoint(state.x, next)).hessian.block(0, d, d, d));
    };
    const NewtonResult res = newton(residual, jacobian, state.x, 1.0 + state.p.norm(), cfg, "discrete_flow_step");
    const Vector p_next = discrete.jet(PhasePoint(state.x, res.solution)).gradient.tail(d);
    return {res.solution, p_next};
}

std::vector<Vector> midpoint_snapshots(const AnalyticLagrangian& lagrangian, const PositionMomentum& start, double dt,
                                       int substeps, int count, const NewtonConfig& cfg) {
    if (substeps < 1 || count < 1) throw std::invalid_argument("midpoint_snapshots: need substeps, count >= 1");
    const AnalyticLagrangian discrete = midpoint_discretisation(lagrangian, dt / substeps);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(count));
    PositionMomentum state = start;
    out.push_back(state.x);
    for (int n = 1; n < count; ++n) {
        for (int s = 0; s < substeps; ++s) state = discrete_flow_step(discrete, state, cfg);
        out.push_back(state.x);
    }
    return out;
}

Vector velocity_from_momentum(const Lagrangian& lagrangian, const Vector& x, const Vector& p, const NewtonConfig& cfg) {
    if (lagrangian.kind() != ModelKind::Continuous)
        throw std::invalid_argument("velocity_from_momentum: continuous Lagrangian expected");
    const int d = lagrangian.half_dim();
    auto residual = [&](const Vector& v) { return Vector(lagrangian.jet(PhasePoint(x, v)).gradient.tail(d) - p); };
    auto jacobian = [&](const Vector& v) {
        return Matrix(lagrangian.jet(PhasePoint(x, v)).hessian.bottomRightCorner(d, d));
    };
    return newton(residual, jacobian, p, 1.0 + p.norm(), cfg, "velocity_from_momentum").solution;
}

}  // namespace lgp
