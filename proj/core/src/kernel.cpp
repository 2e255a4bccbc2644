#include "lgp/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace lgp {

Kernel::Kernel(KernelFamily family, double lengthscale, int dim)
    : family_(family), lengthscale_(lengthscale), dim_(dim) {
    if (!(lengthscale > 0.0) || !std::isfinite(lengthscale))
        throw std::invalid_argument("Kernel: lengthscale must be positive");
    if (dim <= 0 || dim > kMaxDim) throw DimensionError("Kernel: unsupported dimension");
}

void Kernel::check_dim(const Vector& x) const {
    if (x.size() != dim_) throw DimensionError("Kernel: point dimension does not match kernel");
}

double Kernel::eval(const Vector& x, const Vector& y) const {
    check_dim(x);
    check_dim(y);
    return std::exp(-(x - y).squaredNorm() / (2.0 * lengthscale_ * lengthscale_));
}

double Kernel::partial(const MultiIndex& alpha, const MultiIndex& beta, const Vector& x, const Vector& y) const {
    check_dim(x);
    check_dim(y);
    if (alpha.max_coord() >= dim_ || beta.max_coord() >= dim_)
        throw DimensionError("Kernel: multi-index exceeds kernel dimension");
    return KernelPairDerivatives(*this, x, y).partial(alpha, beta);
}

KernelPairDerivatives::KernelPairDerivatives(const Kernel& kernel, const Vector& x, const Vector& y)
    : dim_(kernel.dim()), inv_l_(1.0 / kernel.lengthscale()) {
    kernel.check_dim(x);
    kernel.check_dim(y);
    init(x.data(), y.data());
}

KernelPairDerivatives::KernelPairDerivatives(const Kernel& kernel, const double* x, const double* y)
    : dim_(kernel.dim()), inv_l_(1.0 / kernel.lengthscale()) {
    init(x, y);
}

void KernelPairDerivatives::init(const double* x, const double* y) {
    double r2 = 0.0;
    for (int i = 0; i < dim_; ++i) {
        const double s = (x[i] - y[i]) * inv_l_;
        const double s2 = s * s;
        r2 += s2;
        auto& h = hermite_[static_cast<std::size_t>(i)];
        h[0] = 1.0;
        h[1] = s;
        h[2] = s2 - 1.0;
        h[3] = s * (s2 - 3.0);
        h[4] = s2 * (s2 - 6.0) + 3.0;
    }
    gauss_ = std::exp(-0.5 * r2);
}

// With u = x - y and G(u) = exp(-|u|^2 / 2l^2):
//   d^a_x d^b_y K = (-1)^|b| d^(a+b)_u G
//   d^n g(t) = (-1/l)^n He_n(t/l) g(t)   per coordinate,
// so the partial is (-1)^|a| l^-|a+b| G prod_i He_{n_i}(u_i / l).
double KernelPairDerivatives::partial(const MultiIndex& alpha, const MultiIndex& beta) const {
    std::array<int, 4> idx{};
    int n = 0;
    for (int s = 0; s < alpha.order(); ++s) idx[static_cast<std::size_t>(n++)] = alpha.coord(s);
    for (int s = 0; s < beta.order(); ++s) idx[static_cast<std::size_t>(n++)] = beta.coord(s);
    std::sort(idx.begin(), idx.begin() + n);

    double prod = 1.0;
    int k = 0;
    while (k < n) {
        int run = 1;
        while (k + run < n && idx[static_cast<std::size_t>(k + run)] == idx[static_cast<std::size_t>(k)]) ++run;
        prod *= hermite_[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])][static_cast<std::size_t>(run)];
        k += run;
    }
    double scale = 1.0;
    for (int s = 0; s < n; ++s) scale *= inv_l_;
    const double sign = (alpha.order() % 2 == 0) ? 1.0 : -1.0;
    return sign * scale * gauss_ * prod;
}

}  // namespace lgp
