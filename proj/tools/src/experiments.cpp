#include "lgp/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "lgp/observables.hpp"

namespace lgp::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

PositionMomentum split_start(const ExperimentConfig& config) {
    const int d = config.half_dim();
    return {config.start.head(d), config.start.tail(d)};
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id)
        pool.emplace_back([&, id] {
            try {
                for (std::size_t i = id; i < count; i += workers) fn(i);
            } catch (...) {
                errors[id] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

Box region(const ExperimentConfig& config) {
    return Box::cube(2 * config.half_dim(), config.region_lower, config.region_upper);
}

AnalyticLagrangian reference_lagrangian(const ExperimentConfig& config) {
    if (config.kind == ExperimentKind::Convergence1D) return harmonic_oscillator_1d();
    return coupled_oscillator(config.alpha);
}

Dataset generate_dataset(const ExperimentConfig& config, int count) {
    if (count < 0) throw ConfigError("dataset size must be nonnegative");
    const AnalyticLagrangian ref = reference_lagrangian(config);
    const SampleSet samples = halton(static_cast<std::size_t>(count), 2 * config.half_dim(), region(config));
    Dataset data;
    if (config.kind == ExperimentKind::DiscreteOscillator) {
        data.kind = ModelKind::Discrete;
        data.triples = gen_discrete_observations(ref, split_position_momentum(samples), config.step, config.substeps);
    } else {
        data.kind = ModelKind::Continuous;
        data.jets = gen_continuous_observations(ref, samples);
    }
    return data;
}

ConstraintSet build_constraints(const ExperimentConfig& config, const Dataset& data) {
    const PhasePoint base = PhasePoint::from_coords(config.resolved_base());
    if (data.kind == ModelKind::Discrete)
        return build_constraints_discrete(data.triples, base, config.resolved_momentum(), config.base_value);
    return build_constraints_continuous(data.jets, base, config.resolved_momentum(), config.base_value);
}

GramOptions gram_options(const ExperimentConfig& config) {
    GramOptions o;
    o.jitter = config.jitter;
    o.pinv_cutoff = config.pinv_cutoff;
    o.threads = config.threads;
    return o;
}

Kernel kernel(const ExperimentConfig& config) {
    return Kernel::squared_exponential(2 * config.half_dim(), config.lengthscale);
}

PosteriorModel train_model(const ExperimentConfig& config, int count) {
    return train_model(config, generate_dataset(config, count));
}

PosteriorModel train_model(const ExperimentConfig& config, const Dataset& data) {
    return train(build_constraints(config, data), kernel(config), gram_options(config));
}

TrainReport train_report(const PosteriorModel& model) {
    TrainReport r;
    r.constraints = model.constraints().size();
    r.solve_residual = model.solve_residual();
    r.constraint_residual = model.constraint_residual();
    r.rhs_norm = model.constraints().rhs.norm();
    r.rkhs_norm = rkhs_norm(model);
    r.lambda_min = model.gram().lambda_min();
    r.lambda_max = model.gram().lambda_max();
    r.rank = model.gram().rank();
    r.warnings = model.constraints().warnings;
    return r;
}

std::string format_report(const TrainReport& r) {
    std::ostringstream out;
    out.precision(6);
    out << "constraints          " << r.constraints << "\n"
        << "theta rank           " << r.rank << " (cutoff-relative)\n"
        << "theta eigenvalues    [" << r.lambda_min << ", " << r.lambda_max << "]\n"
        << "solve residual       " << r.solve_residual << "\n"
        << "constraint residual  " << r.constraint_residual << " (max over constraints)\n"
        << "rkhs norm            " << r.rkhs_norm << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    return out.str();
}

Trajectory reference_trajectory(const ExperimentConfig& config) {
    const AnalyticLagrangian ref = reference_lagrangian(config);
    if (config.kind != ExperimentKind::DiscreteOscillator)
        return integrate(ref, PhasePoint::from_coords(config.start), config.horizon, config.integrator_dt);
    Trajectory t;
    t.kind = ModelKind::Discrete;
    t.states = midpoint_snapshots(ref, split_start(config), config.step, config.substeps, config.steps + 2);
    for (std::size_t i = 0; i < t.states.size(); ++i) t.times.push_back(static_cast<double>(i));
    return t;
}

Trajectory model_trajectory(const ExperimentConfig& config, const Lagrangian& model) {
    if (model.kind() == ModelKind::Continuous) {
        const Box box = region(config);
        return integrate(model, PhasePoint::from_coords(config.start), config.horizon, config.integrator_dt, &box);
    }
    const auto seed = midpoint_snapshots(reference_lagrangian(config), split_start(config), config.step,
                                         config.substeps, 2);
    return evolve_discrete(model, seed[0], seed[1], config.steps);
}

double max_position_error(const Trajectory& a, const Trajectory& b) {
    const std::size_t n = std::min(a.states.size(), b.states.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = a.kind == ModelKind::Continuous ? a.states[i].size() / 2 : a.states[i].size();
        worst = std::max(worst, (a.states[i].head(d) - b.states[i].head(d)).lpNorm<Eigen::Infinity>());
    }
    return worst;
}

std::vector<std::pair<double, Vector>> trajectory_variance(const PosteriorModel& model, const Trajectory& trajectory,
                                                           int stride) {
    if (stride < 1) throw ConfigError("variance stride must be positive");
    const int d = model.half_dim();
    std::vector<std::size_t> picks;
    const std::size_t usable =
        model.kind() == ModelKind::Continuous ? trajectory.states.size()
                                              : (trajectory.states.size() >= 2 ? trajectory.states.size() - 2 : 0);
    for (std::size_t i = 0; i < usable; i += static_cast<std::size_t>(stride)) picks.push_back(i);
    std::vector<std::pair<double, Vector>> rows(picks.size());
    for (std::size_t r = 0; r < picks.size(); ++r) {
        const std::size_t i = picks[r];
        Vector var = Vector::Constant(d, kNaN);
        if (model.kind() == ModelKind::Continuous) {
            const PhasePoint p = PhasePoint::from_coords(trajectory.states[i]);
            try {
                const JetPoint jet{p, acceleration(model, p)};
                for (int k = 0; k < d; ++k) var[k] = model.variance(el_functional(jet, k));
            } catch (const DegenerateError&) {
            }
        } else {
            const SnapshotTriple t{trajectory.states[i], trajectory.states[i + 1], trajectory.states[i + 2]};
            for (int k = 0; k < d; ++k) var[k] = model.variance(del_functional(t, k));
        }
        rows[r] = {trajectory.times[i], var};
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& config) {
    const AnalyticLagrangian ref = reference_lagrangian(config);
    const Box box = region(config);
    const SampleSet mesh = uniform_mesh(std::vector<int>{config.eval_mesh_x, config.eval_mesh_v}, box);
    const SampleSet probe = probe_mesh(box, config.probe_resolution);
    std::vector<ConvergenceRow> rows;
    for (int m : config.convergence_sizes) {
        ConvergenceRow row;
        row.samples = m;
        row.fill_distance = fill_distance(halton(static_cast<std::size_t>(m), box.dim(), box), probe);
        const PosteriorModel model = train_model(config, m);
        for (const auto& z : mesh.points) {
            const PhasePoint p = PhasePoint::from_coords(z);
            const Vector g_ref = acceleration(ref, p);
            if (g_ref.norm() == 0.0) {
                ++row.excluded;
                continue;
            }
            try {
                const Vector g = acceleration(model, p);
                row.max_rel_error = std::max(row.max_rel_error, (g - g_ref).norm() / g_ref.norm());
            } catch (const DegenerateError&) {
                ++row.excluded;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> loglog_slopes(const std::vector<ConvergenceRow>& rows) {
    std::vector<double> slopes;
    for (std::size_t i = 1; i < rows.size(); ++i)
        slopes.push_back((std::log(rows[i].max_rel_error) - std::log(rows[i - 1].max_rel_error)) /
                         (std::log(rows[i].samples) - std::log(rows[i - 1].samples)));
    return slopes;
}

std::vector<FillRow> fill_distance_study(const ExperimentConfig& config) {
    std::vector<FillRow> rows;
    const double width = config.region_upper - config.region_lower;
    for (int dim : config.fill_dims) {
        const Box box = Box::cube(dim, config.region_lower, config.region_upper);
        const SampleSet probe = probe_mesh(box, config.probe_resolution);
        for (int m : config.fill_sizes) {
            FillRow row;
            row.dim = dim;
            row.samples = m;
            const auto per_axis = static_cast<int>(std::lround(std::pow(static_cast<double>(m), 1.0 / dim)));
            if (static_cast<long>(std::lround(std::pow(per_axis, dim))) == m) {
                row.uniform = fill_distance(uniform_mesh(per_axis, box), probe);
                // A one-point mesh sits at the centre, half a diagonal from the corners.
                row.formula = per_axis == 1 ? 0.5 * width * std::sqrt(static_cast<double>(dim))
                                            : width * uniform_mesh_fill_distance(static_cast<std::size_t>(m), dim);
            } else {
                row.uniform = kNaN;
                row.formula = kNaN;
            }
            row.halton = fill_distance(halton(static_cast<std::size_t>(m), dim, box), probe);
            rows.push_back(row);
        }
    }
    return rows;
}

Observable observable_from_string(const std::string& name) {
    if (name == "el" || name == "del") return Observable::EulerLagrange;
    if (name == "ham") return Observable::Hamiltonian;
    if (name == "momentum") return Observable::Momentum;
    throw ConfigError("unknown observable '" + name + "' (expected el, del, ham or momentum)");
}

std::pair<int, int> parse_axes(const std::string& text, int half_dim) {
    auto axis = [&](const std::string& name) {
        if (name.size() < 2) throw ConfigError("bad slice axis '" + name + "'");
        int index = -1;
        try {
            index = std::stoi(name.substr(1));
        } catch (const std::exception&) {
            throw ConfigError("bad slice axis '" + name + "'");
        }
        if (index < 0 || index >= half_dim) throw ConfigError("slice axis '" + name + "' out of range");
        if (name[0] == 'x') return index;
        if (name[0] == 'v' || name[0] == 'p') return half_dim + index;
        throw ConfigError("slice axis '" + name + "' must start with x, v or p");
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ConfigError("slice must name two axes, e.g. x0,x1");
    const int u = axis(text.substr(0, comma));
    const int v = axis(text.substr(comma + 1));
    if (u == v) throw ConfigError("slice axes must differ");
    return {u, v};
}

std::vector<GridRow> uq_grid(const ExperimentConfig& config, const PosteriorModel& model, Observable observable,
                             const SliceSpec& slice) {
    const int d = model.half_dim();
    if (slice.resolution < 2) throw ConfigError("slice resolution must be at least 2");
    if (slice.anchor.size() != 2 * d) throw ConfigError("slice anchor has the wrong dimension");
    if (model.kind() == ModelKind::Discrete && observable == Observable::Hamiltonian)
        throw ConfigError("the Hamiltonian observable needs a continuous model");
    const AnalyticLagrangian ref = reference_lagrangian(config);
    const int n = slice.resolution;
    std::vector<GridRow> rows(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));

    parallel_for(rows.size(), config.threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / n;
        const int j = static_cast<int>(idx) % n;
        GridRow& row = rows[idx];
        row.u = slice.lower + (slice.upper - slice.lower) * i / (n - 1);
        row.v = slice.lower + (slice.upper - slice.lower) * j / (n - 1);
        Vector z = slice.anchor;
        z[slice.axis_u] = row.u;
        z[slice.axis_v] = row.v;
        const PhasePoint p = PhasePoint::from_coords(z);

        if (observable == Observable::Hamiltonian) {
            const ObservableReport r = hamiltonian(model, p, true);
            row.value = r.value;
            row.variance = r.variance;
            return;
        }
        if (observable == Observable::Momentum) {
            const auto variant =
                model.kind() == ModelKind::Continuous ? MomentumVariant::Continuous : MomentumVariant::DiscreteMinus;
            const ObservableReport r = momenta(model, p, variant, true);
            row.value = r.value;
            row.variance = r.variance;
            return;
        }
        row.value = Vector::Constant(d, kNaN);
        row.variance = Vector::Constant(d, kNaN);
        if (model.kind() == ModelKind::Continuous) {
            try {
                const JetPoint jet{p, acceleration(model, p)};
                for (int k = 0; k < d; ++k) {
                    const Functional psi = el_functional(jet, k);
                    row.value[k] = apply(psi, model);
                    row.variance[k] = model.variance(psi);
                }
            } catch (const DegenerateError&) {
            }
        } else {
            const auto x = midpoint_snapshots(ref, {z.head(d), z.tail(d)}, config.step, config.substeps, 3);
            const SnapshotTriple t{x[0], x[1], x[2]};
            for (int k = 0; k < d; ++k) {
                const Functional psi = del_functional(t, k);
                row.value[k] = apply(psi, model);
                row.variance[k] = model.variance(psi);
            }
        }
    });
    return rows;
}

double median(std::vector<double> values) {
    values.erase(std::remove_if(values.begin(), values.end(), [](double v) { return !std::isfinite(v); }),
                 values.end());
    if (values.empty()) return kNaN;
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    return 0.5 * (upper + *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid)));
}

}  // namespace lgp::cli
