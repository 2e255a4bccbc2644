#pragma once

// Finite-difference oracles. Everything here differentiates closed-form values
// numerically and never calls the library's analytic derivatives.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "lgp/functional.hpp"
#include "lgp/kernel.hpp"
#include "lgp/types.hpp"

namespace lgp::test {

using LongVec = std::vector<long double>;
using LongFn = std::function<long double(const LongVec&)>;

inline LongVec to_long(const Vector& v) { return LongVec(v.data(), v.data() + v.size()); }

/// exp(-|x - y|^2 / (2 l^2)) in extended precision.
inline long double se_kernel(const LongVec& x, const LongVec& y, long double l) {
    long double r2 = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) r2 += (x[i] - y[i]) * (x[i] - y[i]);
    return std::exp(-r2 / (2.0L * l * l));
}

/// Fourth-order central stencils for the partial d^alpha f at x.
inline long double fd_partial(const LongFn& f, LongVec x, const MultiIndex& alpha, long double h) {
    static constexpr long double d1[4] = {1.0L, -8.0L, 8.0L, -1.0L};
    static constexpr int o1[4] = {-2, -1, 1, 2};
    static constexpr long double d2[5] = {-1.0L, 16.0L, -30.0L, 16.0L, -1.0L};
    static constexpr int o2[5] = {-2, -1, 0, 1, 2};
    if (alpha.order() == 0) return f(x);
    if (alpha.order() == 1) {
        const auto i = static_cast<std::size_t>(alpha.coord(0));
        const long double xi = x[i];
        long double s = 0.0L;
        for (int k = 0; k < 4; ++k) {
            x[i] = xi + o1[k] * h;
            s += d1[k] * f(x);
        }
        return s / (12.0L * h);
    }
    const auto i = static_cast<std::size_t>(alpha.coord(0));
    const auto j = static_cast<std::size_t>(alpha.coord(1));
    if (i == j) {
        const long double xi = x[i];
        long double s = 0.0L;
        for (int k = 0; k < 5; ++k) {
            x[i] = xi + o2[k] * h;
            s += d2[k] * f(x);
        }
        return s / (12.0L * h * h);
    }
    const LongFn inner = [&f, j, h](const LongVec& z) { return fd_partial(f, z, MultiIndex::first(static_cast<int>(j)), h); };
    return fd_partial(inner, x, MultiIndex::first(static_cast<int>(i)), h);
}

/// phi^1 psi^2 K by nested finite differences of the closed-form kernel.
inline double fd_bilinear(const Functional& phi, const Functional& psi, double lengthscale, long double h = 4e-3L) {
    long double total = 0.0L;
    for (const auto& a : phi.terms()) {
        for (const auto& b : psi.terms()) {
            const LongVec ya = to_long(b.point.coords());
            const MultiIndex beta = b.index;
            const LongFn outer = [&](const LongVec& x) {
                const LongFn inner = [&](const LongVec& y) { return se_kernel(x, y, lengthscale); };
                return fd_partial(inner, ya, beta, h);
            };
            total += static_cast<long double>(a.weight) * b.weight * fd_partial(outer, to_long(a.point.coords()), a.index, h);
        }
    }
    return static_cast<double>(total);
}

/// phi applied to a scalar function of the coordinates, by finite differences.
inline double fd_apply(const Functional& phi, const std::function<double(const Vector&)>& f, long double h = 1e-3L) {
    const LongFn g = [&f](const LongVec& z) {
        Vector v(static_cast<Eigen::Index>(z.size()));
        for (std::size_t i = 0; i < z.size(); ++i) v[static_cast<Eigen::Index>(i)] = static_cast<double>(z[i]);
        return static_cast<long double>(f(v));
    };
    long double total = 0.0L;
    for (const auto& t : phi.terms()) total += t.weight * fd_partial(g, to_long(t.point.coords()), t.index, h);
    return static_cast<double>(total);
}

/// Fourth-order central difference with step h applied to the kernel partial
/// of one lower order. Order zero is the closed-form kernel itself, so by
/// induction every order is checked against point evaluations of K.
inline double chained_kernel_fd(const Kernel& kernel, const MultiIndex& alpha, const MultiIndex& beta,
                                const Vector& x, const Vector& y, double h) {
    const auto lower = [](const MultiIndex& m) {
        return m.order() == 2 ? MultiIndex::first(m.coord(0)) : MultiIndex::zero();
    };
    const auto stencil = [h](const std::function<double(double)>& f) {
        return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
    };
    if (beta.order() > 0) {
        const int i = beta.max_coord();
        return stencil([&](double s) {
            Vector ys = y;
            ys[i] += s;
            return kernel.partial(alpha, lower(beta), x, ys);
        });
    }
    const int i = alpha.max_coord();
    return stencil([&](double s) {
        Vector xs = x;
        xs[i] += s;
        return kernel.partial(lower(alpha), beta, xs, y);
    });
}

/// All multi-indices of order <= 2 in dim coordinates.
inline std::vector<MultiIndex> all_indices(int dim) {
    std::vector<MultiIndex> out{MultiIndex::zero()};
    for (int i = 0; i < dim; ++i) out.push_back(MultiIndex::first(i));
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) out.push_back(MultiIndex::second(i, j));
    return out;
}

inline Vector uniform_vector(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = u(rng);
    return v;
}

inline double rel_err(double a, double b, double floor = 1e-12) {
    return std::abs(a - b) / std::max(std::abs(b), floor);
}

}  // namespace lgp::test
