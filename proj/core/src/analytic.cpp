#include "lgp/analytic.hpp"

#include <cmath>

namespace lgp {

AnalyticLagrangian::AnalyticLagrangian(std::string name, ModelKind kind, int half_dim, ValueFn value,
                                       GradientFn gradient, HessianFn hessian, std::map<std::string, double> params)
    : name_(std::move(name)),
      kind_(kind),
      half_dim_(half_dim),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      params_(std::move(params)) {
    if (half_dim <= 0) throw DimensionError("AnalyticLagrangian: dimension must be positive");
}

LocalJet AnalyticLagrangian::jet(const PhasePoint& point) const {
    check_point(point);
    return {value_(point.coords()), gradient_(point.coords()), hessian_(point.coords())};
}

double AnalyticLagrangian::value(const PhasePoint& point) const {
    check_point(point);
    return value_(point.coords());
}

double AnalyticLagrangian::partial(const MultiIndex& alpha, const PhasePoint& point) const {
    check_point(point);
    switch (alpha.order()) {
        case 0: return value_(point.coords());
        case 1: return gradient_(point.coords())[alpha.coord(0)];
        default: return hessian_(point.coords())(alpha.coord(0), alpha.coord(1));
    }
}

AnalyticLagrangian coupled_oscillator(double alpha) {
    auto value = [alpha](const Vector& z) {
        return 0.5 * (z[2] * z[2] + z[3] * z[3]) - 0.5 * (z[0] * z[0] + z[1] * z[1]) + alpha * z[0] * z[1];
    };
    auto gradient = [alpha](const Vector& z) {
        Vector g(4);
        g << -z[0] + alpha * z[1], -z[1] + alpha * z[0], z[2], z[3];
        return g;
    };
    auto hessian = [alpha](const Vector&) {
        Matrix h = Matrix::Zero(4, 4);
        h(0, 0) = -1.0;
        h(1, 1) = -1.0;
        h(0, 1) = h(1, 0) = alpha;
        h(2, 2) = 1.0;
        h(3, 3) = 1.0;
        return h;
    };
    return {"coupled_oscillator", ModelKind::Continuous, 2, value, gradient, hessian, {{"alpha", alpha}}};
}

AnalyticLagrangian harmonic_oscillator_1d() {
    Potential v{[](const Vector& x) { return 0.5 * x.squaredNorm(); }, [](const Vector& x) { return Vector(x); },
                [](const Vector& x) { return Matrix(Matrix::Identity(x.size(), x.size())); }};
    return mechanical(Matrix::Identity(1, 1), v, "harmonic_oscillator_1d");
}

AnalyticLagrangian free_particle(int d) {
    Potential v{[](const Vector&) { return 0.0; }, [](const Vector& x) { return Vector(Vector::Zero(x.size())); },
                [](const Vector& x) { return Matrix(Matrix::Zero(x.size(), x.size())); }};
    return mechanical(Matrix::Identity(d, d), v, "free_particle");
}

AnalyticLagrangian mechanical(const Matrix& mass, Potential potential, std::string name) {
    const int d = static_cast<int>(mass.rows());
    if (mass.cols() != d) throw DimensionError("mechanical: mass matrix must be square");
    auto value = [mass, potential, d](const Vector& z) {
        const Vector v = z.tail(d);
        return 0.5 * v.dot(mass * v) - potential.value(z.head(d));
    };
    auto gradient = [mass, potential, d](const Vector& z) {
        Vector g(2 * d);
        g.head(d) = -potential.gradient(z.head(d));
        g.tail(d) = mass * z.tail(d);
        return g;
    };
    auto hessian = [mass, potential, d](const Vector& z) {
        Matrix h = Matrix::Zero(2 * d, 2 * d);
        h.topLeftCorner(d, d) = -potential.hessian(z.head(d));
        h.bottomRightCorner(d, d) = 0.5 * (mass + mass.transpose());
        return h;
    };
    return {std::move(name), ModelKind::Continuous, d, value, gradient, hessian};
}

AnalyticLagrangian midpoint_discretisation(const AnalyticLagrangian& lagrangian, double dt) {
    if (lagrangian.kind() != ModelKind::Continuous)
        throw std::invalid_argument("midpoint_discretisation: needs a continuous Lagrangian");
    if (!(dt > 0.0)) throw std::invalid_argument("midpoint_discretisation: dt must be positive");
    const int d = lagrangian.half_dim();
    // (x0, x1) -> (midpoint, difference quotient) is linear.
    Matrix map(2 * d, 2 * d);
    const Matrix id = Matrix::Identity(d, d);
    map << 0.5 * id, 0.5 * id, -id / dt, id / dt;
    auto value = [lagrangian, map, dt](const Vector& z) { return dt * lagrangian.value_at(map * z); };
    auto gradient = [lagrangian, map, dt](const Vector& z) {
        return Vector(dt * map.transpose() * lagrangian.gradient_at(map * z));
    };
    auto hessian = [lagrangian, map, dt](const Vector& z) {
        return Matrix(dt * map.transpose() * lagrangian.hessian_at(map * z) * map);
    };
    auto params = lagrangian.params();
    params["dt"] = dt;
    return {lagrangian.name() + "_midpoint", ModelKind::Discrete, d, value, gradient, hessian, params};
}

AnalyticLagrangian gauge_apply(const AnalyticLagrangian& lagrangian, const GaugeTransform& gauge) {
    const int d = lagrangian.half_dim();
    const Vector a = gauge.a.size() == 0 ? Vector(Vector::Zero(d)) : gauge.a;
    if (a.size() != d) throw DimensionError("gauge_apply: gauge vector length mismatch");
    const double rho = gauge.rho;
    const double c = gauge.c;
    const bool discrete = lagrangian.kind() == ModelKind::Discrete;

    // Total derivative of F(x) = a^T x: xd^T a (continuous), a^T (x1 - x0) (discrete).
    Vector shift(2 * d);
    if (discrete)
        shift << -a, a;
    else
        shift << Vector::Zero(d), a;

    auto value = [lagrangian, rho, c, shift](const Vector& z) {
        return rho * lagrangian.value_at(z) + shift.dot(z) + c;
    };
    auto gradient = [lagrangian, rho, shift](const Vector& z) {
        return Vector(rho * lagrangian.gradient_at(z) + shift);
    };
    auto hessian = [lagrangian, rho](const Vector& z) { return Matrix(rho * lagrangian.hessian_at(z)); };
    return {lagrangian.name() + "_gauged", lagrangian.kind(), d, value, gradient, hessian, lagrangian.params()};
}

namespace {

double el_component(const AnalyticLagrangian& lagrangian, const JetPoint& tau, int k) {
    return apply(el_functional(tau, k), lagrangian);
}

}  // namespace

NormalisedLagrangian normalize_equivalent(const AnalyticLagrangian& lagrangian, const PhasePoint& base, double cb,
                                          const Vector& pb, const JetPoint& tau, int k, double c_tau) {
    if (lagrangian.kind() != ModelKind::Continuous)
        throw std::invalid_argument("normalize_equivalent: continuous Lagrangian expected");
    const int d = lagrangian.half_dim();
    if (pb.size() != d) throw DimensionError("normalize_equivalent: momentum length mismatch");
    if (c_tau == 0.0) throw std::invalid_argument("normalize_equivalent: c_tau must be nonzero");

    const double c0 = lagrangian.value(base);
    Vector p0(d);
    for (int s = 0; s < d; ++s) p0[s] = apply(momentum_functional(base, s, MomentumVariant::Continuous), lagrangian);
    const double el0 = el_component(lagrangian, tau, k);
    if (std::abs(el0) < 1e-12) throw DegenerateError("normalize_equivalent: EL component vanishes at tau");

    GaugeTransform g;
    g.rho = c_tau / el0;
    g.a = pb - g.rho * p0;
    g.c = cb - base.second().dot(g.a) - g.rho * c0;
    return {gauge_apply(lagrangian, g), g};
}

NormalisedLagrangian normalize_equivalent(const AnalyticLagrangian& lagrangian, const PhasePoint& base, double cb,
                                          const Vector& pb, const SnapshotTriple& tau, int k, double c_tau,
                                          MomentumVariant variant) {
    if (lagrangian.kind() != ModelKind::Discrete)
        throw std::invalid_argument("normalize_equivalent: discrete Lagrangian expected");
    if (variant == MomentumVariant::Continuous)
        throw std::invalid_argument("normalize_equivalent: discrete momentum variant expected");
    const int d = lagrangian.half_dim();
    if (pb.size() != d) throw DimensionError("normalize_equivalent: momentum length mismatch");
    if (c_tau == 0.0) throw std::invalid_argument("normalize_equivalent: c_tau must be nonzero");

    const double c0 = lagrangian.value(base);
    Vector p0(d);
    for (int s = 0; s < d; ++s) p0[s] = apply(momentum_functional(base, s, variant), lagrangian);
    const double del0 = apply(del_functional(tau, k), lagrangian);
    if (std::abs(del0) < 1e-12) throw DegenerateError("normalize_equivalent: DEL component vanishes at tau");

    // Both discrete momenta shift by grad F = a under L_d -> rho L_d + F(x1) - F(x0) + c.
    GaugeTransform g;
    g.rho = c_tau / del0;
    g.a = pb - g.rho * p0;
    g.c = cb - g.rho * c0 - (base.second() - base.first()).dot(g.a);
    return {gauge_apply(lagrangian, g), g};
}

}  // namespace lgp
