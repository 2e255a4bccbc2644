#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lgp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Anything that fails for numerical reasons: degenerate points, Newton
// failures, inconsistent constraint systems.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InconsistentConstraintsError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

enum class ModelKind { Continuous, Discrete };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// A point of the (continuous or discrete) phase space, stored as 2d
/// coordinates. Continuous: (x, xdot). Discrete: (x0, x1).
class PhasePoint {
public:
    PhasePoint() = default;
    PhasePoint(const Vector& first, const Vector& second);

    static PhasePoint from_coords(const Vector& coords);

    [[nodiscard]] int half_dim() const { return static_cast<int>(coords_.size() / 2); }
    [[nodiscard]] int dim() const { return static_cast<int>(coords_.size()); }
    [[nodiscard]] const Vector& coords() const { return coords_; }
    [[nodiscard]] double operator[](int i) const { return coords_[i]; }

    /// x (continuous) or x0 (discrete).
    [[nodiscard]] Vector first() const { return coords_.head(half_dim()); }
    /// xdot (continuous) or x1 (discrete).
    [[nodiscard]] Vector second() const { return coords_.tail(half_dim()); }

    friend bool operator==(const PhasePoint& a, const PhasePoint& b) { return a.coords_ == b.coords_; }

private:
    Vector coords_;
};

/// Partial-derivative multi-index of total order at most two. Stored as the
/// (sorted) list of differentiated coordinates, so e_i + e_j is {i, j}.
class MultiIndex {
public:
    MultiIndex() = default;

    static MultiIndex zero() { return {}; }
    static MultiIndex first(int i);
    static MultiIndex second(int i, int j);
    /// From a vector of orders (one entry per coordinate); total order <= 2.
    static MultiIndex from_orders(const std::vector<int>& orders);

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] int coord(int slot) const { return coords_[static_cast<std::size_t>(slot)]; }
    [[nodiscard]] std::vector<int> orders(int dim) const;
    [[nodiscard]] int max_coord() const { return order_ == 0 ? -1 : coords_[static_cast<std::size_t>(order_ - 1)]; }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.order_ == b.order_ && a.coords_ == b.coords_;
    }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        if (a.order_ != b.order_) return a.order_ < b.order_;
        return a.coords_ < b.coords_;
    }

private:
    std::int8_t order_ = 0;
    std::array<std::int8_t, 2> coords_{-1, -1};
};

/// Value, gradient and Hessian of a scalar function at a point.
struct LocalJet {
    double value = 0.0;
    Vector gradient;
    Matrix hessian;

    [[nodiscard]] double partial(const MultiIndex& alpha) const;
};

/// Jet point (x, xdot, xddot) used for Euler-Lagrange observations.
struct JetPoint {
    PhasePoint base;
    Vector accel;

    [[nodiscard]] int half_dim() const { return base.half_dim(); }
};

/// Three consecutive snapshots (x0, x1, x2) of a discrete motion.
struct SnapshotTriple {
    Vector x0;
    Vector x1;
    Vector x2;

    [[nodiscard]] int half_dim() const { return static_cast<int>(x0.size()); }
    [[nodiscard]] PhasePoint first_pair() const { return {x0, x1}; }
    [[nodiscard]] PhasePoint second_pair() const { return {x1, x2}; }
};

void require_finite(const Vector& v, const char* what);

}  // namespace lgp
