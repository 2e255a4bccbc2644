#include "lgp/inference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include <Eigen/Eigenvalues>

namespace lgp {

namespace {

bool lexicographic_less(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

void warn_duplicates(std::vector<Vector> points, std::vector<std::string>& warnings) {
    std::sort(points.begin(), points.end(), lexicographic_less);
    std::size_t dup = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i] == points[i - 1]) ++dup;
    if (dup > 0)
        warnings.push_back(std::to_string(dup) +
                           " duplicate data base point(s): Theta is exactly singular in the data block");
}

void finish_constraints(ConstraintSet& c, const Vector& pb, double cb, MomentumVariant variant) {
    const int d = c.half_dim;
    if (pb.size() != d) throw DimensionError("build_constraints: momentum length mismatch");
    if (!std::isfinite(cb) || !pb.allFinite()) throw std::invalid_argument("build_constraints: non-finite rhs");
    for (int k = 0; k < d; ++k) c.functionals.push_back(momentum_functional(c.base, k, variant));
    c.functionals.push_back(eval_functional(c.base));
    c.momentum = pb;
    c.value = cb;
    c.rhs = Vector::Zero(static_cast<Eigen::Index>(c.functionals.size()));
    c.rhs.segment(static_cast<Eigen::Index>(c.num_data) * d, d) = pb;
    c.rhs[c.rhs.size() - 1] = cb;
}

}  // namespace

ConstraintSet build_constraints_continuous(const std::vector<JetPoint>& data, const PhasePoint& base,
                                           const Vector& pb, double cb) {
    ConstraintSet c;
    c.kind = ModelKind::Continuous;
    c.half_dim = base.half_dim();
    c.num_data = static_cast<int>(data.size());
    c.base = base;
    const int d = c.half_dim;
    c.functionals.reserve(static_cast<std::size_t>((c.num_data + 1) * d + 1));
    std::vector<Vector> bases;
    for (const auto& jet : data) {
        if (jet.half_dim() != d) throw DimensionError("build_constraints_continuous: data dimension mismatch");
        for (int k = 0; k < d; ++k) c.functionals.push_back(el_functional(jet, k));
        bases.push_back(jet.base.coords());
    }
    warn_duplicates(std::move(bases), c.warnings);
    finish_constraints(c, pb, cb, MomentumVariant::Continuous);
    return c;
}

ConstraintSet build_constraints_discrete(const std::vector<SnapshotTriple>& data, const PhasePoint& base,
                                         const Vector& pb, double cb) {
    ConstraintSet c;
    c.kind = ModelKind::Discrete;
    c.half_dim = base.half_dim();
    c.num_data = static_cast<int>(data.size());
    c.base = base;
    const int d = c.half_dim;
    c.functionals.reserve(static_cast<std::size_t>((c.num_data + 1) * d + 1));
    std::vector<Vector> triples;
    for (const auto& t : data) {
        if (t.half_dim() != d) throw DimensionError("build_constraints_discrete: data dimension mismatch");
        for (int k = 0; k < d; ++k) c.functionals.push_back(del_functional(t, k));
        Vector all(3 * d);
        all << t.x0, t.x1, t.x2;
        triples.push_back(all);
    }
    warn_duplicates(std::move(triples), c.warnings);
    finish_constraints(c, pb, cb, MomentumVariant::DiscreteMinus);
    return c;
}

GramSystem::GramSystem(Kernel kernel, Matrix theta, const GramOptions& options)
    : kernel_(kernel), theta_(std::move(theta)), options_(options) {
    if (theta_.rows() != theta_.cols()) throw DimensionError("GramSystem: Theta must be square");
    if (!theta_.allFinite()) throw NumericalError("GramSystem: non-finite entries in Theta");
    if (options_.jitter < 0.0) throw std::invalid_argument("GramSystem: jitter must be nonnegative");
    if (theta_.rows() == 0) {
        eigenvalues_ = Vector();
        eigenvectors_ = Matrix();
        return;
    }
    Matrix shifted = 0.5 * (theta_ + theta_.transpose());
    shifted.diagonal().array() += options_.jitter;
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(shifted);
    if (eig.info() != Eigen::Success) throw NumericalError("GramSystem: eigendecomposition failed");
    eigenvalues_ = eig.eigenvalues();
    eigenvectors_ = eig.eigenvectors();
    if (options_.factorization_fallback) ldlt_.compute(shifted);
}

double GramSystem::lambda_max() const { return eigenvalues_.size() ? eigenvalues_.maxCoeff() : 0.0; }
double GramSystem::lambda_min() const { return eigenvalues_.size() ? eigenvalues_.minCoeff() : 0.0; }
double GramSystem::cutoff() const { return options_.pinv_cutoff * std::max(lambda_max(), 0.0); }

int GramSystem::rank() const { return static_cast<int>((eigenvalues_.array() > cutoff()).count()); }

// Theta is positive semidefinite; eigenvalues at or below the cutoff
// (including round-off negatives) are dropped.
Vector GramSystem::solve(const Vector& b) const {
    if (b.size() != theta_.rows()) throw DimensionError("GramSystem::solve: rhs length mismatch");
    const double cut = cutoff();
    Vector coeff = eigenvectors_.transpose() * b;
    for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] = eigenvalues_[i] > cut ? coeff[i] / eigenvalues_[i] : 0.0;
    return eigenvectors_ * coeff;
}

Vector GramSystem::factor_solve(const Vector& b, int refinements) const {
    if (b.size() != theta_.rows()) throw DimensionError("GramSystem::factor_solve: rhs length mismatch");
    // LDLT flags round-off negative pivots of a semidefinite matrix as a
    // numerical issue; the factors are still usable, so only presence is checked.
    if (ldlt_.rows() != theta_.rows()) throw NumericalError("GramSystem::factor_solve: no factorisation available");
    Vector x = ldlt_.solve(b);
    for (int i = 0; i < refinements; ++i) {
        const Vector r = b - (theta_ * x + options_.jitter * x);
        x += ldlt_.solve(r);
    }
    return x;
}

double GramSystem::residual(const Vector& x, const Vector& b) const {
    return (theta_ * x + options_.jitter * x - b).norm();
}

double GramSystem::inverse_form(const Vector& b, const Vector& c) const {
    if (b.size() != theta_.rows() || c.size() != theta_.rows())
        throw DimensionError("GramSystem::inverse_form: length mismatch");
    const double cut = cutoff();
    const Vector vb = eigenvectors_.transpose() * b;
    const Vector vc = eigenvectors_.transpose() * c;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < vb.size(); ++i)
        if (eigenvalues_[i] > cut) sum += vb[i] * vc[i] / eigenvalues_[i];
    return sum;
}

Matrix GramSystem::nullspace(double rel_tol) const {
    const double cut = rel_tol * std::max(lambda_max(), 0.0);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i)
        if (std::abs(eigenvalues_[i]) < cut) cols.push_back(i);
    Matrix out(theta_.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = eigenvectors_.col(cols[j]);
    return out;
}

GramSystem assemble_theta(const ConstraintSet& constraints, const Kernel& kernel, const GramOptions& options) {
    const auto n = static_cast<Eigen::Index>(constraints.size());
    for (const auto& f : constraints.functionals)
        if (!f.empty() && f.dim() != kernel.dim()) throw DimensionError("assemble_theta: kernel dimension mismatch");
    Matrix theta(n, n);

    unsigned workers = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<Eigen::Index>(workers, std::max<Eigen::Index>(n, 1)));
    // Rows are dealt round-robin; each entry is computed by exactly one worker
    // with a fixed summation order, so the result does not depend on workers.
    auto work = [&](unsigned id) {
        for (Eigen::Index i = id; i < n; i += workers)
            for (Eigen::Index j = i; j < n; ++j)
                theta(i, j) = pair_bilinear(constraints.functionals[static_cast<std::size_t>(i)],
                                            constraints.functionals[static_cast<std::size_t>(j)], kernel);
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
        for (auto& t : pool) t.join();
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j) theta(i, j) = theta(j, i);
    if (!theta.allFinite()) throw NumericalError("assemble_theta: non-finite entry");
    return {kernel, std::move(theta), options};
}

PosteriorModel::PosteriorModel(std::shared_ptr<const GramSystem> gram, std::shared_ptr<const ConstraintSet> constraints,
                               Vector weights)
    : gram_(std::move(gram)), constraints_(std::move(constraints)), weights_(std::move(weights)) {
    if (!gram_ || !constraints_) throw std::invalid_argument("PosteriorModel: null gram or constraints");
    if (weights_.size() != static_cast<Eigen::Index>(constraints_->size()) ||
        gram_->theta().rows() != weights_.size())
        throw DimensionError("PosteriorModel: weights, constraints and Theta sizes differ");
    if (gram_->kernel().dim() != 2 * constraints_->half_dim)
        throw DimensionError("PosteriorModel: kernel dimension must be twice the configuration dimension");
    build_expansion();
}

void PosteriorModel::build_expansion() {
    std::map<std::vector<double>, std::size_t> index;
    for (std::size_t k = 0; k < constraints_->functionals.size(); ++k) {
        const double zk = weights_[static_cast<Eigen::Index>(k)];
        for (const auto& t : constraints_->functionals[k].terms()) {
            const Vector& p = t.point.coords();
            std::vector<double> key(p.data(), p.data() + p.size());
            auto [it, inserted] = index.try_emplace(std::move(key), anchors_.size());
            if (inserted) anchors_.push_back({p, {}});
            auto& coeffs = anchors_[it->second].coefficients;
            auto c = std::find_if(coeffs.begin(), coeffs.end(), [&](const auto& e) { return e.first == t.index; });
            if (c == coeffs.end())
                coeffs.emplace_back(t.index, zk * t.weight);
            else
                c->second += zk * t.weight;
        }
    }
}

LocalJet PosteriorModel::jet(const PhasePoint& point) const {
    check_point(point);
    const Kernel& k = kernel();
    const int dim = k.dim();
    LocalJet out{0.0, Vector::Zero(dim), Matrix::Zero(dim, dim)};
    for (const auto& anchor : anchors_) {
        const KernelPairDerivatives kd(k, anchor.point.data(), point.coords().data());
        for (const auto& [alpha, c] : anchor.coefficients) {
            out.value += c * kd.partial(alpha, MultiIndex::zero());
            for (int i = 0; i < dim; ++i) {
                out.gradient[i] += c * kd.partial(alpha, MultiIndex::first(i));
                for (int j = i; j < dim; ++j) out.hessian(i, j) += c * kd.partial(alpha, MultiIndex::second(i, j));
            }
        }
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < i; ++j) out.hessian(i, j) = out.hessian(j, i);
    return out;
}

double PosteriorModel::value(const PhasePoint& point) const { return partial(MultiIndex::zero(), point); }

double PosteriorModel::partial(const MultiIndex& alpha, const PhasePoint& point) const {
    check_point(point);
    if (alpha.max_coord() >= kernel().dim()) throw DimensionError("PosteriorModel: multi-index exceeds dimension");
    double sum = 0.0;
    for (const auto& anchor : anchors_) {
        const KernelPairDerivatives kd(kernel(), anchor.point.data(), point.coords().data());
        for (const auto& [a, c] : anchor.coefficients) sum += c * kd.partial(a, alpha);
    }
    return sum;
}

Vector PosteriorModel::kernel_column(const Functional& psi) const {
    const auto n = static_cast<Eigen::Index>(constraints_->size());
    Vector b(n);
    for (Eigen::Index k = 0; k < n; ++k)
        b[k] = pair_bilinear(constraints_->functionals[static_cast<std::size_t>(k)], psi, kernel());
    return b;
}

double PosteriorModel::covariance(const Functional& psi, const Functional& phi) const {
    const double prior = pair_bilinear(psi, phi, kernel());
    if (constraints_->size() == 0) return prior;
    const Vector bpsi = kernel_column(psi);
    const Vector bphi = (&psi == &phi) ? bpsi : kernel_column(phi);
    return prior - gram_->inverse_form(bpsi, bphi);
}

double PosteriorModel::variance(const Functional& psi) const {
    const double v = covariance(psi, psi);
    return (v < 0.0 && v >= -1e-8) ? 0.0 : v;
}

double PosteriorModel::solve_residual() const {
    if (weights_.size() == 0) return 0.0;
    return gram_->residual(weights_, constraints_->rhs);
}

double PosteriorModel::constraint_residual() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < constraints_->size(); ++k)
        worst = std::max(worst, std::abs(apply(constraints_->functionals[k], *this) -
                                         constraints_->rhs[static_cast<Eigen::Index>(k)]));
    return worst;
}

PosteriorModel PosteriorModel::with_weights(Vector weights) const { return {gram_, constraints_, std::move(weights)}; }

PosteriorModel solve_posterior(std::shared_ptr<const GramSystem> gram, std::shared_ptr<const ConstraintSet> constraints) {
    if (!gram || !constraints) throw std::invalid_argument("solve_posterior: null input");
    if (gram->theta().rows() != static_cast<Eigen::Index>(constraints->size()))
        throw DimensionError("solve_posterior: Theta does not match constraint count");
    const Vector& y = constraints->rhs;
    const double tol = gram->options().consistency_tol * std::max(1.0, y.norm());
    Vector z = gram->solve(y);
    double residual = gram->residual(z, y);
    if (!(residual <= tol) && gram->options().factorization_fallback && y.size() > 0) {
        Vector alt = gram->factor_solve(y);
        const double alt_residual = gram->residual(alt, y);
        if (alt.allFinite() && alt_residual < residual) {
            z = std::move(alt);
            residual = alt_residual;
        }
    }
    if (!(residual <= tol))
        throw InconsistentConstraintsError("solve_posterior: rhs not in range of Theta (residual " +
                                           std::to_string(residual) + ", tolerance " + std::to_string(tol) + ")");
    return {std::move(gram), std::move(constraints), std::move(z)};
}

PosteriorModel train(ConstraintSet constraints, const Kernel& kernel, const GramOptions& options) {
    auto c = std::make_shared<const ConstraintSet>(std::move(constraints));
    auto g = std::make_shared<const GramSystem>(assemble_theta(*c, kernel, options));
    return solve_posterior(std::move(g), std::move(c));
}

double mean_partial(const PosteriorModel& model, const MultiIndex& alpha, const PhasePoint& point) {
    return model.partial(alpha, point);
}

double posterior_cov(const PosteriorModel& model, const Functional& psi, const Functional& phi) {
    return model.covariance(psi, phi);
}

double rkhs_norm(const PosteriorModel& model) {
    const Vector& z = model.weights();
    if (z.size() == 0) return 0.0;
    return std::sqrt(std::max(0.0, z.dot(model.gram().theta() * z)));
}

}  // namespace lgp
