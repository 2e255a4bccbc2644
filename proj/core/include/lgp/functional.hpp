#pragma once

#include <vector>

#include "lgp/kernel.hpp"
#include "lgp/lagrangian.hpp"
#include "lgp/types.hpp"

namespace lgp {

/// phi(L) = sum_t weight_t * (d^index_t L)(point_t).
///
/// Every linear functional the method conditions on or reports (Euler-Lagrange
/// residual components, discrete Euler-Lagrange components, momenta, point
/// evaluation, Hamiltonian, symplectic entries) is a short list of such terms.
/// Keeping them symbolic lets the same object be paired against the kernel,
/// applied to an analytic Lagrangian, or written to a model file.
class Functional {
public:
    struct Term {
        double weight;
        PhasePoint point;
        MultiIndex index;
    };

    Functional() = default;
    explicit Functional(std::vector<Term> terms);

    Functional& add(double weight, const PhasePoint& point, const MultiIndex& index);

    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    /// Dimension of the points the terms are anchored at (0 when empty).
    [[nodiscard]] int dim() const;

    [[nodiscard]] Functional scaled(double factor) const;
    friend Functional operator+(const Functional& a, const Functional& b);
    friend Functional operator-(const Functional& a, const Functional& b);

private:
    std::vector<Term> terms_;
};

enum class MomentumVariant { Continuous, DiscreteMinus, DiscretePlus };

// Component indices k are zero-based throughout.

/// EL_k(L)(x, xd, xdd) = sum_i xdd^i L_{xd^k xd^i} + sum_i xd^i L_{xd^k x^i} - L_{x^k}.
[[nodiscard]] Functional el_functional(const JetPoint& jet, int k);

/// DEL_k(L_d)(x0, x1, x2) = d_{x1^k} L_d(x0, x1) + d_{x0^k} L_d(x1, x2).
[[nodiscard]] Functional del_functional(const SnapshotTriple& triple, int k);

/// Continuous: dL/dxd^k. DiscreteMinus: -d_{x0^k} L_d. DiscretePlus: d_{x1^k} L_d.
[[nodiscard]] Functional momentum_functional(const PhasePoint& point, int k, MomentumVariant variant);

[[nodiscard]] Functional eval_functional(const PhasePoint& point);

/// Raw partial derivative d^alpha L at a point.
[[nodiscard]] Functional partial_functional(const PhasePoint& point, const MultiIndex& alpha);

/// Applies phi to a Lagrangian through its own partial derivatives.
[[nodiscard]] double apply(const Functional& phi, const Lagrangian& lagrangian);

/// phi applied to the first slot of K(., y): (K phi)(y).
[[nodiscard]] double pair_left(const Functional& phi, const Kernel& kernel, const PhasePoint& y);

/// d^beta_y of pair_left(phi, K, y).
[[nodiscard]] double pair_left_partial(const Functional& phi, const Kernel& kernel, const MultiIndex& beta,
                                       const PhasePoint& y);

/// phi^1 psi^2 K.
[[nodiscard]] double pair_bilinear(const Functional& phi, const Functional& psi, const Kernel& kernel);

}  // namespace lgp
