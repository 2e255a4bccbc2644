#pragma once

#include <array>

#include "lgp/types.hpp"

namespace lgp {

enum class KernelFamily { SquaredExponential };

/// Positive-definite kernel on R^dim with analytic mixed partials up to
/// order (2, 2). Squared exponential: K(x, y) = exp(-|x - y|^2 / (2 l^2)).
class Kernel {
public:
    static constexpr int kMaxDim = 32;

    Kernel(KernelFamily family, double lengthscale, int dim);
    static Kernel squared_exponential(int dim, double lengthscale = 1.0) {
        return {KernelFamily::SquaredExponential, lengthscale, dim};
    }

    [[nodiscard]] KernelFamily family() const { return family_; }
    [[nodiscard]] double lengthscale() const { return lengthscale_; }
    [[nodiscard]] int dim() const { return dim_; }

    [[nodiscard]] double eval(const Vector& x, const Vector& y) const;
    [[nodiscard]] double eval(const PhasePoint& x, const PhasePoint& y) const { return eval(x.coords(), y.coords()); }

    /// d^alpha over the first argument, d^beta over the second.
    [[nodiscard]] double partial(const MultiIndex& alpha, const MultiIndex& beta, const Vector& x,
                                 const Vector& y) const;
    [[nodiscard]] double partial(const MultiIndex& alpha, const MultiIndex& beta, const PhasePoint& x,
                                 const PhasePoint& y) const {
        return partial(alpha, beta, x.coords(), y.coords());
    }

    void check_dim(const Vector& x) const;

private:
    KernelFamily family_;
    double lengthscale_;
    int dim_;
};

/// All kernel partials at a fixed pair (x, y). Building it costs one
/// exponential; each partial afterwards is a short product.
class KernelPairDerivatives {
public:
    KernelPairDerivatives(const Kernel& kernel, const Vector& x, const Vector& y);
    KernelPairDerivatives(const Kernel& kernel, const double* x, const double* y);

    [[nodiscard]] double value() const { return gauss_; }
    [[nodiscard]] double partial(const MultiIndex& alpha, const MultiIndex& beta) const;

private:
    void init(const double* x, const double* y);

    int dim_;
    double inv_l_;
    double gauss_ = 0.0;
    // hermite_[i][n] = He_n((x_i - y_i) / l), probabilists' Hermite polynomials.
    std::array<std::array<double, 5>, Kernel::kMaxDim> hermite_{};
};

}  // namespace lgp
