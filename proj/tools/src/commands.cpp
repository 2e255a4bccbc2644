#include "lgp/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "lgp/cli/config.hpp"
#include "lgp/cli/csv.hpp"
#include "lgp/cli/experiments.hpp"
#include "lgp/cli/model_io.hpp"

namespace lgp::cli {

namespace {

struct ConfigArgs {
    std::string file;
    std::vector<std::string> overrides;
    bool dump = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("-c,--config", file, "key = value configuration file");
        cmd->add_option("-s,--set", overrides, "override a configuration key (key=value), repeatable");
        cmd->add_flag("--dump-config", dump, "print the effective configuration and exit");
    }

    ExperimentConfig resolve(ExperimentKind fallback) const {
        ExperimentConfig c = file.empty() ? default_config(fallback) : load_config(file);
        apply_overrides(c, overrides);
        validate(c);
        return c;
    }
};

std::string output_path(const ExperimentConfig& c, const std::string& given, const std::string& name) {
    if (!given.empty()) return given;
    std::filesystem::create_directories(c.output_dir);
    return (std::filesystem::path(c.output_dir) / name).string();
}

ExperimentKind kind_for(ModelKind kind) {
    return kind == ModelKind::Continuous ? ExperimentKind::ContinuousOscillator : ExperimentKind::DiscreteOscillator;
}

void require_kind(const ExperimentConfig& c, std::initializer_list<ExperimentKind> allowed, const char* command) {
    for (auto k : allowed)
        if (c.kind == k) return;
    throw ConfigError(std::string(command) + ": experiment kind '" + to_string(c.kind) + "' not supported here");
}

int cmd_train(const ConfigArgs& args, const std::string& out_path, std::ostream& out) {
    const ExperimentConfig c = args.resolve(ExperimentKind::ContinuousOscillator);
    if (args.dump) {
        out << dump_config(c);
        return kExitOk;
    }
    require_kind(c, {ExperimentKind::ContinuousOscillator, ExperimentKind::DiscreteOscillator,
                     ExperimentKind::Convergence1D},
                 "train");
    if (c.samples == 0 && c.base_value == 0.0 && c.resolved_momentum().norm() == 0.0)
        throw ConfigError("train: M = 0 with zero normalisation has nothing to learn");
    const auto t0 = std::chrono::steady_clock::now();
    const PosteriorModel model = train_model(c, c.samples);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string path = output_path(c, out_path, "model.json");
    save_model(model, path, dump_config(c));
    out << "model                " << path << "\n"
        << "kind                 " << to_string(model.kind()) << ", M = " << c.samples << "\n"
        << format_report(train_report(model)) << "train time           " << seconds << " s\n";
    return kExitOk;
}

int cmd_observe(const ConfigArgs& args, const std::string& out_path, std::ostream& out) {
    const ExperimentConfig c = args.resolve(ExperimentKind::ContinuousOscillator);
    if (args.dump) {
        out << dump_config(c);
        return kExitOk;
    }
    require_kind(c, {ExperimentKind::ContinuousOscillator, ExperimentKind::DiscreteOscillator,
                     ExperimentKind::Convergence1D},
                 "observe");
    const Dataset data = generate_dataset(c, c.samples);
    const int d = c.half_dim();
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    if (data.kind == ModelKind::Continuous) {
        for (const auto& prefix : {"x", "v", "a"})
            for (const auto& name : numbered(prefix, d)) header.push_back(name);
        for (const auto& j : data.jets) {
            std::vector<double> row(j.base.coords().data(), j.base.coords().data() + 2 * d);
            row.insert(row.end(), j.accel.data(), j.accel.data() + d);
            rows.push_back(std::move(row));
        }
    } else {
        for (const auto& prefix : {"x0_", "x1_", "x2_"})
            for (const auto& name : numbered(prefix, d)) header.push_back(name);
        for (const auto& t : data.triples) {
            std::vector<double> row;
            for (const Vector* v : {&t.x0, &t.x1, &t.x2}) row.insert(row.end(), v->data(), v->data() + d);
            rows.push_back(std::move(row));
        }
    }
    const std::string path = output_path(c, out_path, "observations.csv");
    write_csv(path, header, rows);
    out << "wrote " << rows.size() << " observations to " << path << "\n";
    return kExitOk;
}

struct GridArgs {
    std::string model;
    std::string observable = "el";
    std::string slice = "x0,x1";
    std::string anchor;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<int> resolution;
};

int cmd_uq_grid(const ConfigArgs& args, const GridArgs& g, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    const ExperimentConfig preview = args.resolve(ExperimentKind::ContinuousOscillator);
    if (args.dump) {
        out << dump_config(preview);
        return kExitOk;
    }
    const PosteriorModel model = load_model(g.model, preview.threads);
    ExperimentConfig c = preview;
    if (args.file.empty() && !std::any_of(args.overrides.begin(), args.overrides.end(),
                                          [](const std::string& o) { return o.rfind("kind", 0) == 0; }))
        c = [&] {
            ExperimentConfig k = default_config(kind_for(model.kind()));
            apply_overrides(k, args.overrides);
            validate(k);
            return k;
        }();
    const int d = model.half_dim();
    SliceSpec slice;
    std::tie(slice.axis_u, slice.axis_v) = parse_axes(g.slice, d);
    slice.anchor = g.anchor.empty() ? Vector::Zero(2 * d) : parse_vector(g.anchor);
    slice.lower = g.lower.value_or(c.region_lower);
    slice.upper = g.upper.value_or(c.region_upper);
    slice.resolution = g.resolution.value_or(c.grid_resolution);
    if (slice.anchor.size() != 2 * d) throw ConfigError("uq-grid: anchor must have " + std::to_string(2 * d) + " entries");
    if (slice.upper <= slice.lower) throw ConfigError("uq-grid: upper must exceed lower");
    if (slice.lower < c.region_lower || slice.upper > c.region_upper)
        err << "warning: slice extends outside the training region\n";

    const Observable observable = observable_from_string(g.observable);
    const auto rows = uq_grid(c, model, observable, slice);
    std::vector<std::string> header{"u", "v"};
    const bool scalar = observable == Observable::Hamiltonian;
    if (scalar) {
        header.insert(header.end(), {"value", "variance"});
    } else {
        for (const auto& name : numbered("value", d)) header.push_back(name);
        for (const auto& name : numbered("variance", d)) header.push_back(name);
    }
    std::vector<std::vector<double>> table;
    std::vector<double> norms;
    for (const auto& r : rows) {
        std::vector<double> line{r.u, r.v};
        line.insert(line.end(), r.value.data(), r.value.data() + r.value.size());
        line.insert(line.end(), r.variance.data(), r.variance.data() + r.variance.size());
        table.push_back(std::move(line));
        norms.push_back(r.variance.norm());
    }
    const std::string path = output_path(c, out_path, "uq_grid.csv");
    write_csv(path, header, table);
    out << "wrote " << table.size() << " grid points to " << path << "\n"
        << "median variance norm " << median(norms) << "\n";
    return kExitOk;
}

struct TrajectoryArgs {
    std::string model;
    std::string variance_out;
    int variance_stride = 10;
};

int cmd_trajectory(const ConfigArgs& args, const TrajectoryArgs& t, const std::string& out_path, std::ostream& out) {
    const ExperimentConfig preview = args.resolve(ExperimentKind::ContinuousOscillator);
    if (args.dump) {
        out << dump_config(preview);
        return kExitOk;
    }
    const PosteriorModel model = load_model(t.model, preview.threads);
    ExperimentConfig c = preview;
    if (args.file.empty()) {
        c = default_config(kind_for(model.kind()));
        apply_overrides(c, args.overrides);
        validate(c);
    }
    if (kind_for(model.kind()) != c.kind && c.kind != ExperimentKind::Convergence1D)
        throw ConfigError("trajectory: configuration kind does not match the model kind");
    if (c.start.size() != 2 * model.half_dim())
        throw ConfigError("trajectory: start must have " + std::to_string(2 * model.half_dim()) + " entries");

    const Trajectory traj = model_trajectory(c, model);
    const Trajectory ref = reference_trajectory(c);
    const int d = model.half_dim();
    std::vector<std::string> header{model.kind() == ModelKind::Continuous ? "t" : "k"};
    for (const auto& name : numbered("x", d)) header.push_back(name);
    if (model.kind() == ModelKind::Continuous)
        for (const auto& name : numbered("v", d)) header.push_back(name);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        std::vector<double> row{traj.times[i]};
        row.insert(row.end(), traj.states[i].data(), traj.states[i].data() + traj.states[i].size());
        rows.push_back(std::move(row));
    }
    const std::string path = output_path(c, out_path, "trajectory.csv");
    write_csv(path, header, rows);
    out << "wrote " << rows.size() << " states to " << path << "\n"
        << "max position deviation from reference " << max_position_error(traj, ref) << "\n";
    if (traj.steps_outside_region > 0)
        out << "warning: " << traj.steps_outside_region << " states outside the training region\n";

    if (!t.variance_out.empty()) {
        const auto var = trajectory_variance(model, traj, t.variance_stride);
        std::vector<std::string> vh{header.front()};
        for (const auto& name : numbered(model.kind() == ModelKind::Continuous ? "el_var" : "del_var", d))
            vh.push_back(name);
        std::vector<std::vector<double>> vrows;
        for (const auto& [time, v] : var) {
            std::vector<double> row{time};
            row.insert(row.end(), v.data(), v.data() + v.size());
            vrows.push_back(std::move(row));
        }
        write_csv(t.variance_out, vh, vrows);
        out << "wrote " << vrows.size() << " variance rows to " << t.variance_out << "\n";
    }
    return kExitOk;
}

int cmd_convergence(const ConfigArgs& args, const std::string& out_path, std::ostream& out) {
    const ExperimentConfig c = args.resolve(ExperimentKind::Convergence1D);
    if (args.dump) {
        out << dump_config(c);
        return kExitOk;
    }
    require_kind(c, {ExperimentKind::Convergence1D}, "convergence");
    const auto rows = convergence_study(c);
    std::vector<std::vector<double>> table;
    for (const auto& r : rows)
        table.push_back({static_cast<double>(r.samples), r.fill_distance, r.max_rel_error});
    const std::string path = output_path(c, out_path, "convergence.csv");
    write_csv(path, {"M", "h_fill", "max_rel_accel_error"}, table);
    out << "wrote " << table.size() << " rows to " << path << "\n";
    const auto slopes = loglog_slopes(rows);
    for (std::size_t i = 0; i < slopes.size(); ++i)
        out << "log-log slope M=" << rows[i].samples << "->" << rows[i + 1].samples << ": " << slopes[i] << "\n";
    for (const auto& r : rows)
        if (r.excluded > 0) out << "M=" << r.samples << ": " << r.excluded << " evaluation points excluded\n";
    return kExitOk;
}

int cmd_fill_distance(const ConfigArgs& args, const std::string& out_path, std::ostream& out) {
    const ExperimentConfig c = args.resolve(ExperimentKind::FillDistance);
    if (args.dump) {
        out << dump_config(c);
        return kExitOk;
    }
    require_kind(c, {ExperimentKind::FillDistance}, "fill-distance");
    const auto rows = fill_distance_study(c);
    std::vector<std::vector<double>> table;
    for (const auto& r : rows)
        table.push_back({static_cast<double>(r.dim), static_cast<double>(r.samples), r.uniform, r.halton});
    const std::string path = output_path(c, out_path, "fill_distance.csv");
    write_csv(path, {"dim", "M", "h_uniform", "h_halton"}, table);
    out << "wrote " << table.size() << " rows to " << path << "\n";
    return kExitOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learn Lagrangians from motion data with Gaussian fields"};
    app.require_subcommand(1);
    std::string out_path;

    ConfigArgs train_args, observe_args, grid_config, traj_config, conv_args, fill_args;
    GridArgs grid;
    TrajectoryArgs traj;

    auto* train = app.add_subcommand("train", "train a model and write it to a model file");
    train_args.attach(train);
    train->add_option("-o,--out", out_path, "model file (default <output_dir>/model.json)");

    auto* observe = app.add_subcommand("observe", "generate an observation dataset as CSV");
    observe_args.attach(observe);
    observe->add_option("-o,--out", out_path, "CSV file (default <output_dir>/observations.csv)");

    auto* uq = app.add_subcommand("uq-grid", "posterior mean and variance of an observable over a 2-D slice");
    grid_config.attach(uq);
    uq->add_option("-m,--model", grid.model, "model file")->required();
    uq->add_option("--observable", grid.observable, "el | del | ham | momentum");
    uq->add_option("--slice", grid.slice, "two axes, e.g. x0,x1 or x0,v0 (p<i> for discrete momenta)");
    uq->add_option("--anchor", grid.anchor, "values of the fixed coordinates (default 0)");
    uq->add_option("--lower", grid.lower, "slice lower bound (default region.lower)");
    uq->add_option("--upper", grid.upper, "slice upper bound (default region.upper)");
    uq->add_option("--resolution", grid.resolution, "points per axis (default grid_resolution)");
    uq->add_option("-o,--out", out_path, "CSV file (default <output_dir>/uq_grid.csv)");

    auto* trajectory = app.add_subcommand("trajectory", "integrate a learned model from config.start");
    traj_config.attach(trajectory);
    trajectory->add_option("-m,--model", traj.model, "model file")->required();
    trajectory->add_option("--variance-out", traj.variance_out, "CSV of (D)EL variance along the trajectory");
    trajectory->add_option("--variance-stride", traj.variance_stride, "states between variance rows");
    trajectory->add_option("-o,--out", out_path, "CSV file (default <output_dir>/trajectory.csv)");

    auto* convergence = app.add_subcommand("convergence", "acceleration error against M for the 1-D oscillator");
    conv_args.attach(convergence);
    convergence->add_option("-o,--out", out_path, "CSV file (default <output_dir>/convergence.csv)");

    auto* fill = app.add_subcommand("fill-distance", "fill distance of uniform meshes and Halton sets");
    fill_args.attach(fill);
    fill->add_option("-o,--out", out_path, "CSV file (default <output_dir>/fill_distance.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*train) return cmd_train(train_args, out_path, out);
        if (*observe) return cmd_observe(observe_args, out_path, out);
        if (*uq) return cmd_uq_grid(grid_config, grid, out_path, out, err);
        if (*trajectory) return cmd_trajectory(traj_config, traj, out_path, out);
        if (*convergence) return cmd_convergence(conv_args, out_path, out);
        if (*fill) return cmd_fill_distance(fill_args, out_path, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const DimensionError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace lgp::cli
