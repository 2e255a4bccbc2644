#pragma once

#include <functional>
#include <map>
#include <string>

#include "lgp/functional.hpp"
#include "lgp/lagrangian.hpp"

namespace lgp {

/// Closed-form Lagrangian with exact first and second partials. Used for the
/// reference systems that generate data and for checking geometric identities.
class AnalyticLagrangian final : public Lagrangian {
public:
    using ValueFn = std::function<double(const Vector&)>;
    using GradientFn = std::function<Vector(const Vector&)>;
    using HessianFn = std::function<Matrix(const Vector&)>;

    AnalyticLagrangian(std::string name, ModelKind kind, int half_dim, ValueFn value, GradientFn gradient,
                       HessianFn hessian, std::map<std::string, double> params = {});

    [[nodiscard]] ModelKind kind() const override { return kind_; }
    [[nodiscard]] int half_dim() const override { return half_dim_; }
    [[nodiscard]] LocalJet jet(const PhasePoint& point) const override;
    [[nodiscard]] double value(const PhasePoint& point) const override;
    [[nodiscard]] double partial(const MultiIndex& alpha, const PhasePoint& point) const override;

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::map<std::string, double>& params() const { return params_; }

    [[nodiscard]] double value_at(const Vector& z) const { return value_(z); }
    [[nodiscard]] Vector gradient_at(const Vector& z) const { return gradient_(z); }
    [[nodiscard]] Matrix hessian_at(const Vector& z) const { return hessian_(z); }

private:
    std::string name_;
    ModelKind kind_;
    int half_dim_;
    ValueFn value_;
    GradientFn gradient_;
    HessianFn hessian_;
    std::map<std::string, double> params_;
};

/// L = 1/2 |xd|^2 - 1/2 |x|^2 + alpha x^0 x^1 on TR^2.
[[nodiscard]] AnalyticLagrangian coupled_oscillator(double alpha);

/// L = 1/2 xd^2 - 1/2 x^2 on TR.
[[nodiscard]] AnalyticLagrangian harmonic_oscillator_1d();

/// L = 1/2 |xd|^2.
[[nodiscard]] AnalyticLagrangian free_particle(int d);

struct Potential {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
    std::function<Matrix(const Vector&)> hessian;
};

/// L = 1/2 xd^T mass xd - V(x).
[[nodiscard]] AnalyticLagrangian mechanical(const Matrix& mass, Potential potential, std::string name = "mechanical");

/// Variational midpoint discrete Lagrangian
///   L_d(x0, x1) = dt * L((x0 + x1) / 2, (x1 - x0) / dt).
[[nodiscard]] AnalyticLagrangian midpoint_discretisation(const AnalyticLagrangian& lagrangian, double dt);

/// Gauge transformation with linear F(x) = a^T x:
///   continuous  L~ = rho L + xd^T a + c
///   discrete    L~ = rho L_d + a^T (x1 - x0) + c
struct GaugeTransform {
    double rho = 1.0;
    Vector a;
    double c = 0.0;
};

[[nodiscard]] AnalyticLagrangian gauge_apply(const AnalyticLagrangian& lagrangian, const GaugeTransform& gauge);

struct NormalisedLagrangian {
    AnalyticLagrangian lagrangian;
    GaugeTransform gauge;
};

/// Equivalent Lagrangian with L(xb) = cb, dL/dxd(xb) = pb and
/// EL(L)(tau)_k = c_tau. Throws DegenerateError when EL(L)(tau)_k vanishes.
[[nodiscard]] NormalisedLagrangian normalize_equivalent(const AnalyticLagrangian& lagrangian, const PhasePoint& base,
                                                        double cb, const Vector& pb, const JetPoint& tau, int k,
                                                        double c_tau);

/// Discrete version: L_d(xb) = cb, momentum (variant) at xb equal to pb, and
/// DEL(L_d)(tau)_k = c_tau.
[[nodiscard]] NormalisedLagrangian normalize_equivalent(const AnalyticLagrangian& lagrangian, const PhasePoint& base,
                                                        double cb, const Vector& pb, const SnapshotTriple& tau, int k,
                                                        double c_tau,
                                                        MomentumVariant variant = MomentumVariant::DiscretePlus);

}  // namespace lgp
