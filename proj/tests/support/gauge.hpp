#pragma once

// Transformation rules of the observables under L~ = rho L + d_t F + c with
// F(x) = a^T x, checked at random points. Errors are |lhs - rhs| / max(1, |rhs|).

#include <algorithm>
#include <cmath>
#include <random>

#include "lgp/analytic.hpp"
#include "lgp/dynamics.hpp"
#include "lgp/observables.hpp"
#include "oracles.hpp"

namespace lgp::test {

struct GaugeErrors {
    double el = 0.0;
    double ham = 0.0;
    double momentum = 0.0;
    double sympl = 0.0;
    double vol = 0.0;
    double del = 0.0;
    double momentum_minus = 0.0;
    double momentum_plus = 0.0;
    double sympl_discrete = 0.0;
    double vol_discrete = 0.0;
    double acceleration = 0.0;
    double evolution = 0.0;

    [[nodiscard]] double identities() const {
        return std::max({el, ham, momentum, sympl, vol, del, momentum_minus, momentum_plus, sympl_discrete,
                         vol_discrete});
    }
    [[nodiscard]] double argzero() const { return std::max(acceleration, evolution); }
};

inline double unit_rel(double lhs, double rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)); }

inline double unit_rel(const Vector& lhs, const Vector& rhs) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < lhs.size(); ++i) e = std::max(e, unit_rel(lhs[i], rhs[i]));
    return e;
}

inline double unit_rel(const Matrix& lhs, const Matrix& rhs) {
    return unit_rel(Vector(lhs.reshaped()), Vector(rhs.reshaped()));
}

inline GaugeTransform random_gauge(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> mag(0.2, 3.0);
    std::bernoulli_distribution flip(0.5);
    GaugeTransform g;
    g.rho = flip(rng) ? -mag(rng) : mag(rng);
    g.a = uniform_vector(rng, d, -2.0, 2.0);
    g.c = uniform_vector(rng, 1, -2.0, 2.0)[0];
    return g;
}

/// Continuous rules on `lagrangian`, discrete rules on `discrete`.
inline GaugeErrors check_gauge_rules(const AnalyticLagrangian& lagrangian, const AnalyticLagrangian& discrete,
                                     int transforms, int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int d = lagrangian.half_dim();
    GaugeErrors e;
    for (int t = 0; t < transforms; ++t) {
        const GaugeTransform g = random_gauge(rng, d);
        const AnalyticLagrangian lt = gauge_apply(lagrangian, g);
        const AnalyticLagrangian dt = gauge_apply(discrete, g);
        const double rho_d = std::pow(g.rho, d);
        for (int n = 0; n < points; ++n) {
            const PhasePoint p = PhasePoint::from_coords(uniform_vector(rng, 2 * d));
            const JetPoint jet{p, uniform_vector(rng, d)};
            for (int k = 0; k < d; ++k)
                e.el = std::max(e.el, unit_rel(apply(el_functional(jet, k), lt),
                                               g.rho * apply(el_functional(jet, k), lagrangian)));
            e.ham = std::max(e.ham, unit_rel(hamiltonian(lt, p).value[0], g.rho * hamiltonian(lagrangian, p).value[0] - g.c));
            e.momentum = std::max(e.momentum, unit_rel(momenta(lt, p, MomentumVariant::Continuous).value,
                                                       Vector(g.rho * momenta(lagrangian, p, MomentumVariant::Continuous).value + g.a)));
            e.sympl = std::max(e.sympl, unit_rel(symplectic_form(lt, p).entries,
                                                 Matrix(g.rho * symplectic_form(lagrangian, p).entries)));
            e.vol = std::max(e.vol, unit_rel(volume_density(lt, p), rho_d * volume_density(lagrangian, p)));
            e.acceleration = std::max(e.acceleration, unit_rel(acceleration(lt, p), acceleration(lagrangian, p)));

            const Vector x0 = uniform_vector(rng, d);
            const Vector x1 = x0 + uniform_vector(rng, d, -0.1, 0.1);
            const SnapshotTriple triple{x0, x1, x1 + uniform_vector(rng, d, -0.1, 0.1)};
            const PhasePoint q(x0, x1);
            for (int k = 0; k < d; ++k)
                e.del = std::max(e.del, unit_rel(apply(del_functional(triple, k), dt),
                                                 g.rho * apply(del_functional(triple, k), discrete)));
            e.momentum_minus = std::max(
                e.momentum_minus, unit_rel(momenta(dt, q, MomentumVariant::DiscreteMinus).value,
                                           Vector(g.rho * momenta(discrete, q, MomentumVariant::DiscreteMinus).value + g.a)));
            e.momentum_plus = std::max(
                e.momentum_plus, unit_rel(momenta(dt, q, MomentumVariant::DiscretePlus).value,
                                          Vector(g.rho * momenta(discrete, q, MomentumVariant::DiscretePlus).value + g.a)));
            e.sympl_discrete = std::max(e.sympl_discrete, unit_rel(symplectic_form(dt, q).entries,
                                                                   Matrix(g.rho * symplectic_form(discrete, q).entries)));
            e.vol_discrete = std::max(e.vol_discrete, unit_rel(volume_density(dt, q), rho_d * volume_density(discrete, q)));
            e.evolution = std::max(e.evolution, unit_rel(discrete_evolution(dt, x0, x1), discrete_evolution(discrete, x0, x1)));
        }
    }
    return e;
}

}  // namespace lgp::test
