#include "lgp/observables.hpp"

#include <string>

#include <Eigen/LU>

namespace lgp {

namespace {

double clamped_variance(const Lagrangian& lagrangian, const Functional& psi) {
    const double v = lagrangian.covariance(psi, psi);
    return (v < 0.0 && v >= -1e-8) ? 0.0 : v;
}

Matrix canonical(int d) {
    Matrix j = Matrix::Zero(2 * d, 2 * d);
    j.topRightCorner(d, d) = -Matrix::Identity(d, d);
    j.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
    return j;
}

}  // namespace

Functional hamiltonian_functional(const PhasePoint& point) {
    const int d = point.half_dim();
    Functional f;
    for (int s = 0; s < d; ++s) f.add(point[d + s], point, MultiIndex::first(d + s));
    f.add(-1.0, point, MultiIndex::zero());
    return f;
}

ObservableReport hamiltonian(const Lagrangian& lagrangian, const PhasePoint& point, bool with_variance) {
    if (lagrangian.kind() != ModelKind::Continuous)
        throw std::invalid_argument("hamiltonian: continuous Lagrangian expected");
    lagrangian.check_point(point);
    const Functional psi = hamiltonian_functional(point);
    ObservableReport out;
    out.value = Vector::Constant(1, apply(psi, lagrangian));
    if (with_variance) out.variance = Vector::Constant(1, clamped_variance(lagrangian, psi));
    return out;
}

ObservableReport momenta(const Lagrangian& lagrangian, const PhasePoint& point, MomentumVariant variant,
                         bool with_variance) {
    const bool continuous_variant = variant == MomentumVariant::Continuous;
    if (continuous_variant != (lagrangian.kind() == ModelKind::Continuous))
        throw std::invalid_argument("momenta: variant does not match Lagrangian kind " + to_string(lagrangian.kind()));
    lagrangian.check_point(point);
    const int d = lagrangian.half_dim();
    ObservableReport out;
    out.value.resize(d);
    if (with_variance) out.variance.resize(d);
    for (int k = 0; k < d; ++k) {
        const Functional psi = momentum_functional(point, k, variant);
        out.value[k] = apply(psi, lagrangian);
        if (with_variance) out.variance[k] = clamped_variance(lagrangian, psi);
    }
    return out;
}

Functional symplectic_functional(ModelKind kind, const PhasePoint& point, int r, int c) {
    const int d = point.half_dim();
    if (r < 0 || c < 0 || r >= 2 * d || c >= 2 * d) throw std::out_of_range("symplectic_functional: bad entry");
    Functional f;
    const bool top_r = r < d;
    const bool top_c = c < d;
    const int rr = top_r ? r : r - d;
    const int cc = top_c ? c : c - d;
    if (kind == ModelKind::Continuous) {
        if (top_r && top_c) {
            if (rr != cc) {
                f.add(1.0, point, MultiIndex::second(rr, d + cc));
                f.add(-1.0, point, MultiIndex::second(cc, d + rr));
            }
        } else if (top_r) {
            f.add(-1.0, point, MultiIndex::second(d + rr, d + cc));
        } else if (top_c) {
            f.add(1.0, point, MultiIndex::second(d + rr, d + cc));
        }
    } else {
        // Entry (r, d + s) is D_{s r}; entry (d + s, r) is -D_{s r}.
        if (top_r && !top_c) {
            f.add(1.0, point, MultiIndex::second(rr, d + cc));
        } else if (!top_r && top_c) {
            f.add(-1.0, point, MultiIndex::second(cc, d + rr));
        }
    }
    return f;
}

SymplecticMatrix symplectic_form(const Lagrangian& lagrangian, const PhasePoint& point, bool with_variance) {
    lagrangian.check_point(point);
    const int d = lagrangian.half_dim();
    const Matrix h = lagrangian.jet(point).hessian;
    SymplecticMatrix out;
    out.entries = Matrix::Zero(2 * d, 2 * d);
    if (lagrangian.kind() == ModelKind::Continuous) {
        const Matrix xv = h.topRightCorner(d, d);  // L_{x^r xd^s}
        const Matrix vv = h.bottomRightCorner(d, d);
        out.entries.topLeftCorner(d, d) = xv - xv.transpose();
        out.entries.topRightCorner(d, d) = -vv;
        out.entries.bottomLeftCorner(d, d) = vv;
    } else {
        const Matrix d10 = h.block(d, 0, d, d);
        out.entries.topRightCorner(d, d) = d10.transpose();
        out.entries.bottomLeftCorner(d, d) = -d10;
    }
    if (with_variance) {
        out.variance = Matrix::Zero(2 * d, 2 * d);
        for (int r = 0; r < 2 * d; ++r)
            for (int c = 0; c < 2 * d; ++c) {
                const Functional psi = symplectic_functional(lagrangian.kind(), point, r, c);
                if (!psi.empty()) out.variance(r, c) = clamped_variance(lagrangian, psi);
            }
    }
    return out;
}

DiscreteSymplecticPair discrete_symplectic_pullbacks(const Lagrangian& discrete, const PhasePoint& point) {
    if (discrete.kind() != ModelKind::Discrete)
        throw std::invalid_argument("discrete_symplectic_pullbacks: discrete Lagrangian expected");
    discrete.check_point(point);
    const int d = discrete.half_dim();
    const Matrix h = discrete.jet(point).hessian;
    const Matrix id = Matrix::Identity(d, d);

    // Leg-(x0, x1) = (x0, -d_{x0} L_d), Leg+(x0, x1) = (x1, d_{x1} L_d).
    Matrix minus_jac = Matrix::Zero(2 * d, 2 * d);
    minus_jac.topLeftCorner(d, d) = id;
    minus_jac.bottomLeftCorner(d, d) = -h.topLeftCorner(d, d);
    minus_jac.bottomRightCorner(d, d) = -h.topRightCorner(d, d);

    Matrix plus_jac = Matrix::Zero(2 * d, 2 * d);
    plus_jac.topRightCorner(d, d) = id;
    plus_jac.bottomLeftCorner(d, d) = h.bottomLeftCorner(d, d);
    plus_jac.bottomRightCorner(d, d) = h.bottomRightCorner(d, d);

    const Matrix j = canonical(d);
    return {minus_jac.transpose() * j * minus_jac, plus_jac.transpose() * j * plus_jac};
}

double volume_density(const Lagrangian& lagrangian, const PhasePoint& point) {
    lagrangian.check_point(point);
    const int d = lagrangian.half_dim();
    const Matrix h = lagrangian.jet(point).hessian;
    if (lagrangian.kind() == ModelKind::Continuous) return h.bottomRightCorner(d, d).determinant();
    return h.block(d, 0, d, d).determinant();
}

}  // namespace lgp
