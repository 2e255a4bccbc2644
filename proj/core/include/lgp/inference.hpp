#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "lgp/functional.hpp"
#include "lgp/kernel.hpp"
#include "lgp/lagrangian.hpp"

namespace lgp {

/// Ordered constraint list: M*d (D)EL components, d momentum components at
/// the base point, then evaluation at the base point; rhs (0, .., 0, pb, cb).
struct ConstraintSet {
    ModelKind kind = ModelKind::Continuous;
    int half_dim = 0;
    int num_data = 0;
    PhasePoint base;
    Vector momentum;  // pb
    double value = 0.0;  // cb
    std::vector<Functional> functionals;
    Vector rhs;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t size() const { return functionals.size(); }
};

[[nodiscard]] ConstraintSet build_constraints_continuous(const std::vector<JetPoint>& data, const PhasePoint& base,
                                                         const Vector& pb, double cb);

[[nodiscard]] ConstraintSet build_constraints_discrete(const std::vector<SnapshotTriple>& data,
                                                       const PhasePoint& base, const Vector& pb, double cb);

struct GramOptions {
    /// Added to the diagonal before factorising.
    double jitter = 0.0;
    /// Eigenvalues below cutoff * lambda_max are treated as zero.
    double pinv_cutoff = 1e-12;
    /// Solve must reproduce rhs to this * max(1, |rhs|).
    double consistency_tol = 1e-8;
    /// Worker threads for assembly (0: hardware concurrency).
    unsigned threads = 0;
    /// When the pseudo-inverse solution misses the rhs, retry with a pivoted
    /// LDL^T factorisation plus iterative refinement.
    bool factorization_fallback = true;
};

/// Theta_kl = phi_k^1 phi_l^2 K together with its symmetric
/// eigendecomposition, used as a pseudo-inverse.
class GramSystem {
public:
    GramSystem(Kernel kernel, Matrix theta, const GramOptions& options);

    [[nodiscard]] const Kernel& kernel() const { return kernel_; }
    [[nodiscard]] const Matrix& theta() const { return theta_; }
    [[nodiscard]] const GramOptions& options() const { return options_; }
    [[nodiscard]] const Vector& eigenvalues() const { return eigenvalues_; }
    [[nodiscard]] const Matrix& eigenvectors() const { return eigenvectors_; }

    [[nodiscard]] double lambda_max() const;
    [[nodiscard]] double lambda_min() const;
    [[nodiscard]] double cutoff() const;
    /// Number of eigenvalues kept by the pseudo-inverse.
    [[nodiscard]] int rank() const;

    /// Minimum-norm least-squares solution of (Theta + jitter I) x = b.
    [[nodiscard]] Vector solve(const Vector& b) const;
    /// Solution through the LDL^T factorisation with `refinements` steps of
    /// iterative refinement. Only meaningful when Theta is numerically nonsingular.
    [[nodiscard]] Vector factor_solve(const Vector& b, int refinements = 3) const;
    /// |(Theta + jitter I) x - b|.
    [[nodiscard]] double residual(const Vector& x, const Vector& b) const;
    /// b^T Theta^+ c.
    [[nodiscard]] double inverse_form(const Vector& b, const Vector& c) const;
    /// Eigenvectors with |lambda| < rel_tol * lambda_max.
    [[nodiscard]] Matrix nullspace(double rel_tol) const;

private:
    Kernel kernel_;
    Matrix theta_;
    GramOptions options_;
    Vector eigenvalues_;
    Matrix eigenvectors_;
    Eigen::LDLT<Matrix> ldlt_;
};

[[nodiscard]] GramSystem assemble_theta(const ConstraintSet& constraints, const Kernel& kernel,
                                        const GramOptions& options = {});

/// Conditional mean and covariance of the canonical Gaussian field given the
/// constraints:
///   L(x)        = sum_k z_k (phi_k^1 K)(x),   Theta z = rhs
///   cov(psi,phi)= psi^1 phi^2 K - (psi K Phi^T) Theta^+ (Phi K phi)
class PosteriorModel final : public Lagrangian {
public:
    PosteriorModel(std::shared_ptr<const GramSystem> gram, std::shared_ptr<const ConstraintSet> constraints,
                   Vector weights);

    [[nodiscard]] ModelKind kind() const override { return constraints_->kind; }
    [[nodiscard]] int half_dim() const override { return constraints_->half_dim; }
    [[nodiscard]] LocalJet jet(const PhasePoint& point) const override;
    [[nodiscard]] double value(const PhasePoint& point) const override;
    [[nodiscard]] double partial(const MultiIndex& alpha, const PhasePoint& point) const override;
    [[nodiscard]] double covariance(const Functional& psi, const Functional& phi) const override;

    /// Posterior variance, clamped to zero when within round-off below zero.
    [[nodiscard]] double variance(const Functional& psi) const;

    [[nodiscard]] const Kernel& kernel() const { return gram_->kernel(); }
    [[nodiscard]] const ConstraintSet& constraints() const { return *constraints_; }
    [[nodiscard]] const GramSystem& gram() const { return *gram_; }
    [[nodiscard]] const Vector& weights() const { return weights_; }

    /// |Theta z - rhs|.
    [[nodiscard]] double solve_residual() const;
    /// max_k |phi_k(L) - rhs_k|, applying each constraint to the mean.
    [[nodiscard]] double constraint_residual() const;
    /// Same model with different weights (e.g. shifted along the nullspace).
    [[nodiscard]] PosteriorModel with_weights(Vector weights) const;

private:
    struct Anchor {
        Vector point;
        std::vector<std::pair<MultiIndex, double>> coefficients;
    };

    void build_expansion();
    [[nodiscard]] Vector kernel_column(const Functional& psi) const;

    std::shared_ptr<const GramSystem> gram_;
    std::shared_ptr<const ConstraintSet> constraints_;
    Vector weights_;
    std::vector<Anchor> anchors_;
};

/// assemble_theta + solve_posterior.
[[nodiscard]] PosteriorModel train(ConstraintSet constraints, const Kernel& kernel, const GramOptions& options = {});

/// Weights from the pseudo-inverse, or from the factorisation fallback when
/// that reproduces the rhs better. Throws InconsistentConstraintsError when
/// neither meets the consistency tolerance.
[[nodiscard]] PosteriorModel solve_posterior(std::shared_ptr<const GramSystem> gram,
                                             std::shared_ptr<const ConstraintSet> constraints);

[[nodiscard]] double mean_partial(const PosteriorModel& model, const MultiIndex& alpha, const PhasePoint& point);
[[nodiscard]] double posterior_cov(const PosteriorModel& model, const Functional& psi, const Functional& phi);
/// sqrt(z^T Theta z).
[[nodiscard]] double rkhs_norm(const PosteriorModel& model);

}  // namespace lgp
