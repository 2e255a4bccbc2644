#include "lgp/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lgp::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("config: '" + key + "' expects a finite number, got '" + text + "'");
}

int parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used == text.size() && v >= -2147483647L && v <= 2147483647L) return static_cast<int>(v);
    } catch (const std::exception&) {
    }
    throw ConfigError("config: '" + key + "' expects an integer, got '" + text + "'");
}

std::vector<int> parse_ints(const std::string& key, const std::string& text) {
    std::vector<int> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_int(key, part));
    if (out.empty()) throw ConfigError("config: '" + key + "' expects a comma-separated list");
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError("config: " + message);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::ContinuousOscillator: return "continuous-oscillator";
        case ExperimentKind::DiscreteOscillator: return "discrete-oscillator";
        case ExperimentKind::Convergence1D: return "convergence-1d";
        case ExperimentKind::FillDistance: return "fill-distance";
    }
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    for (auto k : {ExperimentKind::ContinuousOscillator, ExperimentKind::DiscreteOscillator,
                   ExperimentKind::Convergence1D, ExperimentKind::FillDistance})
        if (to_string(k) == name) return k;
    throw ConfigError("config: unknown experiment kind '" + name + "'");
}

int ExperimentConfig::half_dim() const { return kind == ExperimentKind::Convergence1D ? 1 : 2; }

Vector ExperimentConfig::resolved_base() const {
    if (base.size() > 0) return base;
    return Vector::Constant(2 * half_dim(), 0.5 * (region_lower + region_upper));
}

Vector ExperimentConfig::resolved_momentum() const {
    return base_momentum.size() > 0 ? base_momentum : Vector::Zero(half_dim());
}

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig c;
    c.kind = kind;
    switch (kind) {
        case ExperimentKind::ContinuousOscillator:
        case ExperimentKind::DiscreteOscillator:
            c.start = parse_vector("0.2,0.1,0,0");
            break;
        case ExperimentKind::Convergence1D:
            c.samples = 64;
            c.start = parse_vector("0.5,0");
            break;
        case ExperimentKind::FillDistance:
            c.region_lower = 0.0;
            c.region_upper = 1.0;
            break;
    }
    return c;
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "kind") {
        c.kind = experiment_kind_from_string(value);
    } else if (key == "M") {
        c.samples = parse_int(key, value);
    } else if (key == "alpha") {
        c.alpha = parse_double(key, value);
    } else if (key == "dt") {
        c.step = parse_double(key, value);
    } else if (key == "substeps") {
        c.substeps = parse_int(key, value);
    } else if (key == "region.lower") {
        c.region_lower = parse_double(key, value);
    } else if (key == "region.upper") {
        c.region_upper = parse_double(key, value);
    } else if (key == "xb") {
        c.base = value == "centroid" ? Vector() : parse_vector(value);
    } else if (key == "cb") {
        c.base_value = parse_double(key, value);
    } else if (key == "pb") {
        c.base_momentum = parse_vector(value);
    } else if (key == "lengthscale") {
        c.lengthscale = parse_double(key, value);
    } else if (key == "jitter") {
        c.jitter = parse_double(key, value);
    } else if (key == "pinv_cutoff") {
        c.pinv_cutoff = parse_double(key, value);
    } else if (key == "integrator.dt") {
        c.integrator_dt = parse_double(key, value);
    } else if (key == "horizon") {
        c.horizon = parse_double(key, value);
    } else if (key == "steps") {
        c.steps = parse_int(key, value);
    } else if (key == "start") {
        c.start = parse_vector(value);
    } else if (key == "convergence.M") {
        c.convergence_sizes = parse_ints(key, value);
    } else if (key == "eval_mesh.x") {
        c.eval_mesh_x = parse_int(key, value);
    } else if (key == "eval_mesh.v") {
        c.eval_mesh_v = parse_int(key, value);
    } else if (key == "fill.dims") {
        c.fill_dims = parse_ints(key, value);
    } else if (key == "fill.M") {
        c.fill_sizes = parse_ints(key, value);
    } else if (key == "probe_resolution") {
        c.probe_resolution = parse_int(key, value);
    } else if (key == "grid_resolution") {
        c.grid_resolution = parse_int(key, value);
    } else if (key == "output_dir") {
        c.output_dir = value;
    } else if (key == "threads") {
        const int t = parse_int(key, value);
        require(t >= 0, "threads must be nonnegative");
        c.threads = static_cast<unsigned>(t);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

ExperimentConfig parse_config(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not of the form key = value");
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    ExperimentConfig c;
    for (const auto& [k, v] : entries)
        if (k == "kind") c = default_config(experiment_kind_from_string(v));
    for (const auto& [k, v] : entries)
        if (k != "kind") apply_setting(c, k, v);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_overrides(ExperimentConfig& config, const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError("config: override '" + o + "' is not key=value");
        const std::string key = trim(o.substr(0, eq));
        if (key == "kind") {
            // A new kind starts from that kind's defaults.
            config = default_config(experiment_kind_from_string(trim(o.substr(eq + 1))));
        } else {
            apply_setting(config, key, o.substr(eq + 1));
        }
    }
}

void validate(const ExperimentConfig& c) {
    const int d = c.half_dim();
    require(c.region_upper > c.region_lower, "region.upper must exceed region.lower");
    require(c.lengthscale > 0.0, "lengthscale must be positive");
    require(c.jitter >= 0.0, "jitter must be nonnegative");
    require(c.pinv_cutoff >= 0.0 && c.pinv_cutoff < 1.0, "pinv_cutoff must lie in [0, 1)");
    require(c.grid_resolution >= 2, "grid_resolution must be at least 2");
    require(c.probe_resolution >= 1, "probe_resolution must be positive");
    const bool training = c.kind != ExperimentKind::FillDistance;
    if (training) {
        require(c.base.size() == 0 || c.base.size() == 2 * d, "xb must have " + std::to_string(2 * d) + " entries");
        require(c.base_momentum.size() == 0 || c.base_momentum.size() == d,
                "pb must have " + std::to_string(d) + " entries");
        const Vector pb = c.resolved_momentum();
        require(c.base_value != 0.0 || pb.norm() != 0.0,
                "(cb, pb) = (0, 0) forces the zero Lagrangian; choose a nonzero normalisation");
        require(c.samples >= 0, "M must be nonnegative");
    }
    switch (c.kind) {
        case ExperimentKind::ContinuousOscillator:
            require(c.start.size() == 2 * d, "start must have " + std::to_string(2 * d) + " entries");
            require(c.integrator_dt > 0.0 && c.horizon >= 0.0, "integrator.dt must be positive, horizon nonnegative");
            break;
        case ExperimentKind::DiscreteOscillator:
            require(c.start.size() == 2 * d, "start must have " + std::to_string(2 * d) + " entries (x, p)");
            require(c.step > 0.0 && c.substeps >= 1, "dt must be positive and substeps at least 1");
            require(c.steps >= 0, "steps must be nonnegative");
            break;
        case ExperimentKind::Convergence1D:
            require(!c.convergence_sizes.empty(), "convergence.M must list at least one size");
            for (int m : c.convergence_sizes) require(m >= 1, "convergence.M entries must be positive");
            require(c.eval_mesh_x >= 1 && c.eval_mesh_v >= 1, "eval_mesh sizes must be positive");
            break;
        case ExperimentKind::FillDistance:
            for (int dim : c.fill_dims) require(dim >= 1 && dim <= 20, "fill.dims entries must lie in 1..20");
            for (int m : c.fill_sizes) require(m >= 1, "fill.M entries must be positive");
            break;
    }
}

std::string dump_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "kind = " << to_string(c.kind) << "\n";
    out << "M = " << c.samples << "\n";
    out << "alpha = " << format_double(c.alpha) << "\n";
    out << "dt = " << format_double(c.step) << "\n";
    out << "substeps = " << c.substeps << "\n";
    out << "region.lower = " << format_double(c.region_lower) << "\n";
    out << "region.upper = " << format_double(c.region_upper) << "\n";
    out << "xb = " << (c.base.size() ? format_vector(c.base) : std::string("centroid")) << "\n";
    out << "cb = " << format_double(c.base_value) << "\n";
    out << "pb = " << format_vector(c.resolved_momentum()) << "\n";
    out << "lengthscale = " << format_double(c.lengthscale) << "\n";
    out << "jitter = " << format_double(c.jitter) << "\n";
    out << "pinv_cutoff = " << format_double(c.pinv_cutoff) << "\n";
    out << "integrator.dt = " << format_double(c.integrator_dt) << "\n";
    out << "horizon = " << format_double(c.horizon) << "\n";
    out << "steps = " << c.steps << "\n";
    out << "start = " << format_vector(c.start) << "\n";
    out << "convergence.M = " << format_ints(c.convergence_sizes) << "\n";
    out << "eval_mesh.x = " << c.eval_mesh_x << "\n";
    out << "eval_mesh.v = " << c.eval_mesh_v << "\n";
    out << "fill.dims = " << format_ints(c.fill_dims) << "\n";
    out << "fill.M = " << format_ints(c.fill_sizes) << "\n";
    out << "probe_resolution = " << c.probe_resolution << "\n";
    out << "grid_resolution = " << c.grid_resolution << "\n";
    out << "output_dir = " << c.output_dir << "\n";
    out << "threads = " << c.threads << "\n";
    return out.str();
}

Vector parse_vector(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) return {};
    const auto parts = split(t, ',');
    Vector v(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_double("vector", parts[i]);
    return v;
}

std::string format_vector(const Vector& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out;
}

}  // namespace lgp::cli
