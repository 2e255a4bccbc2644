#include <gtest/gtest.h>

#include <random>

#include "lgp/analytic.hpp"
#include "lgp/inference.hpp"
#include "lgp/observations.hpp"
#include "oracles.hpp"

namespace lgp {
namespace {

const Box kRegion = Box::cube(4, -1.0, 1.0);

std::vector<JetPoint> oscillator_jets(int m) {
    return gen_continuous_observations(coupled_oscillator(0.1), halton(static_cast<std::size_t>(m), 4, kRegion));
}

std::vector<SnapshotTriple> oscillator_triples(int m) {
    const auto starts = split_position_momentum(halton(static_cast<std::size_t>(m), 4, kRegion));
    return gen_discrete_observations(coupled_oscillator(0.1), starts, 0.1, 10);
}

PhasePoint centroid() { return PhasePoint::from_coords(Vector::Zero(4)); }

ConstraintSet empty_constraints() {
    ConstraintSet c;
    c.kind = ModelKind::Continuous;
    c.half_dim = 2;
    c.rhs = Vector(0);
    return c;
}

TEST(Constraints, CountsAndRhsLayout) {
    const auto c = build_constraints_continuous(oscillator_jets(80), centroid(), Vector::Constant(2, 0.5), 1.0);
    ASSERT_EQ(c.size(), 163u);
    EXPECT_TRUE(c.rhs.head(160).isZero());
    EXPECT_EQ(c.rhs[160], 0.5);
    EXPECT_EQ(c.rhs[161], 0.5);
    EXPECT_EQ(c.rhs[162], 1.0);
    EXPECT_EQ(build_constraints_discrete(oscillator_triples(300), centroid(), Vector::Zero(2), 1.0).size(), 603u);
}

TEST(Constraints, DuplicateBasePointsWarn) {
    auto jets = oscillator_jets(5);
    jets.push_back(jets.front());
    EXPECT_EQ(build_constraints_continuous(jets, centroid(), Vector::Zero(2), 1.0).warnings.size(), 1u);
    EXPECT_TRUE(build_constraints_continuous(oscillator_jets(5), centroid(), Vector::Zero(2), 1.0).warnings.empty());
}

TEST(Constraints, RejectsMismatchedDimensions) {
    EXPECT_THROW((void)build_constraints_continuous(oscillator_jets(3), centroid(), Vector::Zero(3), 1.0), DimensionError);
}

TEST(Theta, SingleEvaluationIsOne) {
    ConstraintSet c = empty_constraints();
    c.functionals.push_back(eval_functional(centroid()));
    c.rhs = Vector::Ones(1);
    const GramSystem g = assemble_theta(c, Kernel::squared_exponential(4));
    ASSERT_EQ(g.theta().rows(), 1);
    EXPECT_EQ(g.theta()(0, 0), 1.0);
}

TEST(Theta, SymmetricAndPositiveSemidefinite) {
    const auto c = build_constraints_discrete(oscillator_triples(40), centroid(), Vector::Zero(2), 1.0);
    const GramSystem g = assemble_theta(c, Kernel::squared_exponential(4));
    EXPECT_EQ((g.theta() - g.theta().transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_GE(g.lambda_min(), -1e-8 * g.lambda_max());
}

TEST(Theta, SubblockMatchesNestedFiniteDifferences) {
    const auto c = build_constraints_continuous(oscillator_jets(30), centroid(), Vector::Zero(2), 1.0);
    const GramSystem g = assemble_theta(c, Kernel::squared_exponential(4));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    for (int r = 0; r < 5; ++r) {
        const std::size_t i = pick(rng);
        for (int s = 0; s < 5; ++s) {
            const std::size_t j = pick(rng);
            const double fd = test::fd_bilinear(c.functionals[i], c.functionals[j], 1.0);
            EXPECT_LT(test::rel_err(g.theta()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), fd, 1e-6), 1e-5)
                << i << "," << j;
        }
    }
}

TEST(Theta, ThreadCountDoesNotChangeEntries) {
    const auto c = build_constraints_continuous(oscillator_jets(20), centroid(), Vector::Zero(2), 1.0);
    GramOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const auto k = Kernel::squared_exponential(4);
    EXPECT_EQ(assemble_theta(c, k, one).theta(), assemble_theta(c, k, four).theta());
}

TEST(Posterior, NoDataNoNormalisationIsZero) {
    const auto model = train(build_constraints_continuous({}, centroid(), Vector::Zero(2), 0.0),
                             Kernel::squared_exponential(4));
    EXPECT_TRUE(model.weights().isZero());
    std::mt19937_64 rng(12);
    EXPECT_EQ(model.value(PhasePoint::from_coords(test::uniform_vector(rng, 4))), 0.0);
}

TEST(Posterior, ValueOnlyNormalisationIsKernelSection) {
    // Theta = diag(1, 1, 1): momentum partials are odd at coincidence, so
    // L = K(xb, .) exactly.
    const PhasePoint base = PhasePoint::from_coords((Vector(4) << 0.1, -0.2, 0.3, 0.0).finished());
    const auto model = train(build_constraints_continuous({}, base, Vector::Zero(2), 1.0), Kernel::squared_exponential(4));
    EXPECT_EQ(model.value(base), 1.0);
    EXPECT_NEAR(model.partial(MultiIndex::first(2), base), 0.0, 1e-16);
    EXPECT_NEAR(model.partial(MultiIndex::first(3), base), 0.0, 1e-16);
    std::mt19937_64 rng(13);
    for (int n = 0; n < 10; ++n) {
        const Vector z = test::uniform_vector(rng, 4);
        EXPECT_NEAR(model.value(PhasePoint::from_coords(z)), std::exp(-0.5 * (z - base.coords()).squaredNorm()), 1e-15);
    }
}

TEST(Posterior, ReproducesEveryConstraint) {
    const auto cont = train(build_constraints_continuous(oscillator_jets(80), centroid(), Vector::Zero(2), 1.0),
                            Kernel::squared_exponential(4));
    EXPECT_LT(cont.constraint_residual(), 1e-8);
    const auto disc = train(build_constraints_discrete(oscillator_triples(80), centroid(), Vector::Zero(2), 1.0),
                            Kernel::squared_exponential(4));
    EXPECT_LT(disc.constraint_residual(), 1e-8);
}

TEST(Posterior, MeanPartialsMatchFiniteDifferences) {
    const auto model = train(build_constraints_continuous(oscillator_jets(20), centroid(), Vector::Zero(2), 1.0),
                             Kernel::squared_exponential(4));
    std::mt19937_64 rng(14);
    const PhasePoint p = PhasePoint::from_coords(test::uniform_vector(rng, 4));
    const auto f = [&](const Vector& z) { return model.value(PhasePoint::from_coords(z)); };
    EXPECT_EQ(mean_partial(model, MultiIndex::zero(), p), model.value(p));
    for (const auto& alpha : test::all_indices(4)) {
        const double fd = test::fd_apply(partial_functional(p, alpha), f);
        EXPECT_LT(test::rel_err(mean_partial(model, alpha, p), fd, 1e-3), 1e-6);
    }
    const LocalJet jet = model.jet(p);
    for (const auto& alpha : test::all_indices(4)) EXPECT_NEAR(jet.partial(alpha), model.partial(alpha, p), 1e-13);
}

TEST(Posterior, ConstrainedDirectionsHaveNoVariance) {
    const auto model = train(build_constraints_continuous(oscillator_jets(40), centroid(), Vector::Zero(2), 1.0),
                             Kernel::squared_exponential(4));
    for (const auto& phi : model.constraints().functionals) EXPECT_NEAR(posterior_cov(model, phi, phi), 0.0, 1e-8);
}

TEST(Posterior, PriorVarianceOfEvaluationIsOne) {
    const auto prior = train(empty_constraints(), Kernel::squared_exponential(4));
    std::mt19937_64 rng(15);
    const Functional phi = eval_functional(PhasePoint::from_coords(test::uniform_vector(rng, 4)));
    EXPECT_DOUBLE_EQ(prior.variance(phi), 1.0);
}

TEST(Posterior, CovarianceIsSymmetric) {
    const auto model = train(build_constraints_continuous(oscillator_jets(20), centroid(), Vector::Zero(2), 1.0),
                             Kernel::squared_exponential(4));
    std::mt19937_64 rng(16);
    const JetPoint a{PhasePoint::from_coords(test::uniform_vector(rng, 4)), test::uniform_vector(rng, 2)};
    const Functional phi = el_functional(a, 0);
    const Functional psi = eval_functional(PhasePoint::from_coords(test::uniform_vector(rng, 4)));
    EXPECT_NEAR(posterior_cov(model, phi, psi), posterior_cov(model, psi, phi), 1e-14);
}

TEST(Posterior, RkhsNormNondecreasingOnNestedData) {
    double previous = 0.0;
    for (int m : {10, 20, 40}) {
        const auto model = train(build_constraints_continuous(oscillator_jets(m), centroid(), Vector::Zero(2), 1.0),
                                 Kernel::squared_exponential(4));
        const double norm = rkhs_norm(model);
        EXPECT_GE(norm, previous * (1.0 - 1e-12)) << m;
        previous = norm;
    }
}

TEST(Posterior, ZeroModelHasZeroNorm) {
    const auto model = train(build_constraints_continuous(oscillator_jets(5), centroid(), Vector::Zero(2), 0.0),
                             Kernel::squared_exponential(4));
    EXPECT_EQ(rkhs_norm(model), 0.0);
}

TEST(Posterior, NormBoundedByDenserModel) {
    // The min-norm solution for a subset of the constraints of a denser model
    // cannot have a larger norm.
    const auto sparse = train(build_constraints_continuous(oscillator_jets(40), centroid(), Vector::Zero(2), 1.0),
                              Kernel::squared_exponential(4));
    const auto dense = train(build_constraints_continuous(oscillator_jets(200), centroid(), Vector::Zero(2), 1.0),
                             Kernel::squared_exponential(4));
    EXPECT_LE(rkhs_norm(sparse), rkhs_norm(dense) * (1.0 + 1e-10));
}

TEST(Posterior, FallbackRescuesIllConditionedSystem) {
    const auto c = build_constraints_discrete(oscillator_triples(300), centroid(), Vector::Zero(2), 1.0);
    const auto model = train(c, Kernel::squared_exponential(4));
    EXPECT_LT(model.solve_residual(), 1e-8 * std::max(1.0, c.rhs.norm()));
    GramOptions strict;
    strict.factorization_fallback = false;
    strict.pinv_cutoff = 1e-6;
    EXPECT_THROW((void)train(c, Kernel::squared_exponential(4), strict), InconsistentConstraintsError);
}

TEST(Posterior, WithWeightsKeepsConstraints) {
    const auto model = train(build_constraints_continuous(oscillator_jets(10), centroid(), Vector::Zero(2), 1.0),
                             Kernel::squared_exponential(4));
    const auto copy = model.with_weights(model.weights());
    std::mt19937_64 rng(17);
    const PhasePoint p = PhasePoint::from_coords(test::uniform_vector(rng, 4));
    EXPECT_EQ(copy.value(p), model.value(p));
}

}  // namespace
}  // namespace lgp
