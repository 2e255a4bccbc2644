#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lgp/kernel.hpp"
#include "oracles.hpp"

namespace lgp {
namespace {

TEST(Kernel, UnitOnDiagonal) {
    const Kernel k = Kernel::squared_exponential(4);
    std::mt19937_64 rng(1);
    for (int n = 0; n < 10; ++n) {
        const Vector x = test::uniform_vector(rng, 4);
        EXPECT_DOUBLE_EQ(k.eval(x, x), 1.0);
    }
}

TEST(Kernel, UnitOffsetValue) {
    const Kernel k = Kernel::squared_exponential(4);
    Vector y = Vector::Zero(4);
    y[0] = 1.0;
    EXPECT_NEAR(k.eval(Vector::Zero(4), y), std::exp(-0.5), 1e-16);
}

TEST(Kernel, Symmetric) {
    const Kernel k = Kernel::squared_exponential(4, 0.7);
    std::mt19937_64 rng(2);
    for (int n = 0; n < 10; ++n) {
        const Vector x = test::uniform_vector(rng, 4);
        const Vector y = test::uniform_vector(rng, 4);
        EXPECT_EQ(k.eval(x, y), k.eval(y, x));
    }
}

TEST(Kernel, GradientVanishesAtCoincidence) {
    const Kernel k = Kernel::squared_exponential(2);
    const Vector x = Vector::Constant(2, 0.3);
    EXPECT_EQ(k.partial(MultiIndex::first(0), MultiIndex::zero(), x, x), 0.0);
}

TEST(Kernel, MixedSecondAtCoincidenceIsInverseLengthscaleSquared) {
    const Vector x = Vector::Constant(2, -0.4);
    EXPECT_DOUBLE_EQ(Kernel::squared_exponential(2).partial(MultiIndex::first(0), MultiIndex::first(0), x, x), 1.0);
    EXPECT_DOUBLE_EQ(Kernel::squared_exponential(2, 0.5).partial(MultiIndex::first(1), MultiIndex::first(1), x, x),
                     4.0);
}

TEST(Kernel, PartialsMatchChainedCentralDifferences) {
    const Kernel k = Kernel::squared_exponential(4, 0.8);
    const auto indices = test::all_indices(4);
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int n = 0; n < 20; ++n) {
        const Vector x = test::uniform_vector(rng, 4);
        const Vector y = test::uniform_vector(rng, 4);
        for (const auto& a : indices) {
            for (const auto& b : indices) {
                if (a.order() + b.order() == 0) continue;
                const double exact = k.partial(a, b, x, y);
                const double fd = test::chained_kernel_fd(k, a, b, x, y, 1e-4);
                worst = std::max(worst, std::abs(exact - fd) / std::max(std::abs(exact), 1e-4));
            }
        }
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Kernel, PartialsMatchNestedDifferencesOfClosedForm) {
    const double l = 1.3;
    const Kernel k = Kernel::squared_exponential(3, l);
    const auto indices = test::all_indices(3);
    std::mt19937_64 rng(4);
    for (int n = 0; n < 3; ++n) {
        const Vector x = test::uniform_vector(rng, 3);
        const Vector y = test::uniform_vector(rng, 3);
        for (const auto& a : indices) {
            for (const auto& b : indices) {
                const test::LongFn outer = [&](const test::LongVec& xs) {
                    const test::LongFn inner = [&](const test::LongVec& ys) { return test::se_kernel(xs, ys, l); };
                    return test::fd_partial(inner, test::to_long(y), b, 4e-3L);
                };
                const double fd = static_cast<double>(test::fd_partial(outer, test::to_long(x), a, 4e-3L));
                EXPECT_NEAR(k.partial(a, b, x, y), fd, 1e-7 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST(Kernel, RejectsBadArguments) {
    EXPECT_THROW(Kernel::squared_exponential(2, 0.0), std::invalid_argument);
    EXPECT_THROW(Kernel::squared_exponential(0), DimensionError);
    const Kernel k = Kernel::squared_exponential(2);
    EXPECT_THROW((void)k.eval(Vector::Zero(2), Vector::Zero(3)), DimensionError);
}

}  // namespace
}  // namespace lgp
