#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lgp/analytic.hpp"
#include "lgp/dynamics.hpp"
#include "lgp/inference.hpp"
#include "lgp/observables.hpp"
#include "lgp/observations.hpp"
#include "oracles.hpp"

namespace lgp {
namespace {

Potential cubic_potential() {
    // V = x0^2 / 2 + x1^2 + x0^3 / 3
    return {[](const Vector& x) { return 0.5 * x[0] * x[0] + x[1] * x[1] + x[0] * x[0] * x[0] / 3.0; },
            [](const Vector& x) { return Vector((Vector(2) << x[0] + x[0] * x[0], 2.0 * x[1]).finished()); },
            [](const Vector& x) { return Matrix((Matrix(2, 2) << 1.0 + 2.0 * x[0], 0.0, 0.0, 2.0).finished()); }};
}

TEST(Acceleration, CoupledOscillatorAtStart) {
    const PhasePoint p((Vector(2) << 0.2, 0.1).finished(), Vector::Zero(2));
    const Vector a = acceleration(coupled_oscillator(0.1), p);
    EXPECT_NEAR(a[0], -0.19, 1e-15);
    EXPECT_NEAR(a[1], -0.08, 1e-15);
}

TEST(Acceleration, MechanicalIsMinusInverseMassTimesForce) {
    const Matrix mass = (Matrix(2, 2) << 2.0, 0.3, 0.3, 1.0).finished();
    const auto L = mechanical(mass, cubic_potential());
    std::mt19937_64 rng(40);
    for (int n = 0; n < 10; ++n) {
        const Vector z = test::uniform_vector(rng, 4);
        const Vector expected = -mass.inverse() * cubic_potential().gradient(z.head(2));
        EXPECT_LT((acceleration(L, PhasePoint::from_coords(z)) - expected).norm(), 1e-14);
    }
}

TEST(Acceleration, DegenerateLagrangianThrows) {
    const auto L = mechanical(Matrix::Zero(2, 2), cubic_potential());
    EXPECT_THROW((void)acceleration(L, PhasePoint::from_coords(Vector::Ones(4))), DegenerateError);
}

TEST(Acceleration, SolvesElResidual) {
    const auto L = coupled_oscillator(0.4);
    const PhasePoint p = PhasePoint::from_coords((Vector(4) << 0.1, 0.7, -0.3, 0.2).finished());
    EXPECT_LT(el_residual(L, p, acceleration(L, p)).norm(), 1e-15);
}

TEST(Integrate, FreeParticleIsExact) {
    const Vector x0 = (Vector(2) << 0.3, -0.2).finished();
    const Vector v0 = (Vector(2) << 0.5, 1.5).finished();
    const Trajectory t = integrate(free_particle(2), PhasePoint(x0, v0), 3.0, 0.1);
    ASSERT_EQ(t.states.size(), 31u);
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        EXPECT_LT((t.states[i].head(2) - (x0 + t.times[i] * v0)).norm(), 1e-12);
        EXPECT_LT((t.states[i].tail(2) - v0).norm(), 1e-12);
    }
}

TEST(Integrate, HarmonicOscillatorReturnsAfterOnePeriod) {
    const PhasePoint start(Vector::Constant(1, 0.8), Vector::Constant(1, 0.0));
    const double period = 2.0 * std::numbers::pi;
    // dt = period / n with n close to 1/1e-3.
    const int n = 6283;
    const Trajectory t = integrate(harmonic_oscillator_1d(), start, period, period / n);
    EXPECT_LT((t.states.back() - start.coords()).norm(), 1e-9);
}

TEST(Integrate, CountsExcursionsOutsideRegion) {
    const Box box = Box::cube(2, -1.0, 1.0);
    const Trajectory t = integrate(free_particle(1), PhasePoint(Vector::Zero(1), Vector::Constant(1, 0.6)), 2.0, 0.1, &box);
    EXPECT_EQ(t.steps_outside_region, 4u);  // t = 1.7 .. 2.0
}

TEST(DiscreteEvolution, FreeParticleIsLinear) {
    const auto Ld = midpoint_discretisation(free_particle(2), 0.1);
    const Vector x0 = (Vector(2) << 0.1, 0.2).finished();
    const Vector x1 = (Vector(2) << 0.15, 0.1).finished();
    EXPECT_LT((discrete_evolution(Ld, x0, x1) - (2.0 * x1 - x0)).norm(), 1e-13);
}

TEST(DiscreteEvolution, FdJacobianAgrees) {
    const auto Ld = midpoint_discretisation(mechanical(Matrix::Identity(2, 2), cubic_potential()), 0.1);
    const Vector x0 = (Vector(2) << 0.1, 0.2).finished();
    const Vector x1 = (Vector(2) << 0.12, 0.21).finished();
    NewtonConfig fd;
    fd.fd_jacobian = true;
    EXPECT_LT((discrete_evolution(Ld, x0, x1) - discrete_evolution(Ld, x0, x1, fd)).norm(), 1e-12);
    EXPECT_LT(del_residual(Ld, x0, x1, discrete_evolution(Ld, x0, x1)).norm(), 1e-11);
}

TEST(DiscreteEvolution, MidpointEnergyStaysBounded) {
    const auto L = harmonic_oscillator_1d();
    const double dt = 0.01;
    const auto Ld = midpoint_discretisation(L, dt);
    const PositionMomentum start{Vector::Constant(1, 0.5), Vector::Constant(1, 0.0)};
    const auto seed = midpoint_snapshots(L, start, dt, 1, 2);
    const Trajectory t = evolve_discrete(Ld, seed[0], seed[1], 10000);
    const double h0 = 0.125;
    double drift = 0.0;
    for (std::size_t k = 1; k + 1 < t.states.size(); ++k) {
        // Central-difference velocity from neighbouring snapshots.
        const double x = t.states[k][0];
        const double v = (t.states[k + 1][0] - t.states[k - 1][0]) / (2.0 * dt);
        drift = std::max(drift, std::abs(0.5 * (x * x + v * v) - h0));
    }
    EXPECT_LT(drift, 1e-3);
}

TEST(DiscreteEvolution, MidpointStepMatchesFlow) {
    const auto L = coupled_oscillator(0.1);
    const PositionMomentum start{(Vector(2) << 0.2, 0.1).finished(), Vector::Zero(2)};
    const auto snaps = midpoint_snapshots(L, start, 0.05, 1, 3);
    EXPECT_LT((midpoint_step(L, snaps[0], snaps[1], 0.05) - snaps[2]).norm(), 1e-13);
}

TEST(Observations, FreeParticleSnapshots) {
    const auto triples = gen_discrete_observations(free_particle(1), {{Vector::Zero(1), Vector::Ones(1)}}, 0.1, 10);
    ASSERT_EQ(triples.size(), 1u);
    EXPECT_NEAR(triples[0].x0[0], 0.0, 1e-15);
    EXPECT_NEAR(triples[0].x1[0], 0.1, 1e-14);
    EXPECT_NEAR(triples[0].x2[0], 0.2, 1e-14);
}

TEST(Observations, SubstepsRefineTowardsExactFlow) {
    const auto L = harmonic_oscillator_1d();
    const std::vector<PositionMomentum> start{{Vector::Constant(1, 1.0), Vector::Zero(1)}};
    const double coarse = std::abs(gen_discrete_observations(L, start, 0.1, 1)[0].x2[0] - std::cos(0.2));
    const double fine = std::abs(gen_discrete_observations(L, start, 0.1, 10)[0].x2[0] - std::cos(0.2));
    EXPECT_LT(fine, coarse / 50.0);
}

TEST(Observations, ContinuousJetsCarryTrueAcceleration) {
    const auto L = coupled_oscillator(0.1);
    const auto samples = halton(10, 4, Box::cube(4, -1.0, 1.0));
    const auto jets = gen_continuous_observations(L, samples);
    for (const auto& j : jets) EXPECT_LT(el_residual(L, j.base, j.accel).norm(), 1e-15);
}

TEST(DiscreteEvolution, LearnedModelReproducesTrainingTriples) {
    const auto starts = split_position_momentum(halton(80, 4, Box::cube(4, -1.0, 1.0)));
    const auto triples = gen_discrete_observations(coupled_oscillator(0.1), starts, 0.1, 10);
    const auto model = train(build_constraints_discrete(triples, PhasePoint::from_coords(Vector::Zero(4)), Vector::Zero(2), 1.0),
                             Kernel::squared_exponential(4));
    double worst = 0.0;
    for (const auto& t : triples) worst = std::max(worst, (discrete_evolution(model, t.x0, t.x1) - t.x2).norm());
    EXPECT_LT(worst, 1e-6);
}

}  // namespace
}  // namespace lgp
