#pragma once

#include <vector>

#include "lgp/functional.hpp"
#include "lgp/lagrangian.hpp"

namespace lgp {

/// Mean value of an observable and, when requested, its componentwise
/// posterior variance (empty otherwise).
struct ObservableReport {
    Vector value;
    Vector variance;

    [[nodiscard]] bool has_variance() const { return variance.size() == value.size() && value.size() > 0; }
};

/// Ham(L)(x, xd) = sum_s xd^s dL/dxd^s - L.
[[nodiscard]] Functional hamiltonian_functional(const PhasePoint& point);

[[nodiscard]] ObservableReport hamiltonian(const Lagrangian& lagrangian, const PhasePoint& point,
                                           bool with_variance = false);

/// Conjugate momenta; the variant must match the Lagrangian kind.
[[nodiscard]] ObservableReport momenta(const Lagrangian& lagrangian, const PhasePoint& point,
                                       MomentumVariant variant, bool with_variance = false);

/// Coordinate matrix S of the symplectic 2-form, omega(u, v) = u^T S v.
/// Continuous (coordinates (x, xd)):
///   S = [[L_{x^r xd^s} - L_{x^s xd^r},  -L_{xd xd}],
///        [L_{xd xd},                     0        ]].
/// Discrete (coordinates (x0, x1)), pulled back through the plus Legendre map:
///   S = [[0, D^T], [-D, 0]],  D_{sr} = d^2 L_d / dx1^s dx0^r.
struct SymplecticMatrix {
    Matrix entries;
    /// Entrywise posterior variance (empty unless requested).
    Matrix variance;
};

[[nodiscard]] SymplecticMatrix symplectic_form(const Lagrangian& lagrangian, const PhasePoint& point,
                                               bool with_variance = false);

/// Functional for entry (r, c) of symplectic_form (empty for structural zeros).
[[nodiscard]] Functional symplectic_functional(ModelKind kind, const PhasePoint& point, int r, int c);

/// Canonical form pulled back to (x0, x1) through the minus and plus discrete
/// Legendre maps, computed independently from the Jacobians of each map.
struct DiscreteSymplecticPair {
    Matrix minus;
    Matrix plus;
};

[[nodiscard]] DiscreteSymplecticPair discrete_symplectic_pullbacks(const Lagrangian& discrete,
                                                                   const PhasePoint& point);

/// det(d^2 L / dxd dxd) (continuous) or det(d^2 L_d / dx1 dx0) (discrete), sign kept.
[[nodiscard]] double volume_density(const Lagrangian& lagrangian, const PhasePoint& point);

}  // namespace lgp
