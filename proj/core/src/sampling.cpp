#include "lgp/sampling.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace lgp {

namespace {

constexpr std::array<unsigned, 20> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

}  // namespace

Box Box::cube(int dim, double lo, double hi) {
    Box b{Vector::Constant(dim, lo), Vector::Constant(dim, hi)};
    b.validate();
    return b;
}

void Box::validate() const {
    if (lower.size() != upper.size() || lower.size() == 0) throw DimensionError("Box: bounds length mismatch");
    if (!((upper - lower).array() > 0.0).all()) throw std::invalid_argument("Box: upper must exceed lower");
}

bool Box::contains(const Vector& p, double slack) const {
    if (p.size() != lower.size()) return false;
    return ((p - lower).array() >= -slack).all() && ((upper - p).array() >= -slack).all();
}

Vector Box::from_unit(const Vector& u) const { return lower + (upper - lower).cwiseProduct(u); }

std::vector<PhasePoint> SampleSet::phase_points() const {
    std::vector<PhasePoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(PhasePoint::from_coords(p));
    return out;
}

double radical_inverse(std::uint64_t index, unsigned base) {
    const double inv_base = 1.0 / base;
    double factor = inv_base;
    double result = 0.0;
    while (index > 0) {
        result += static_cast<double>(index % base) * factor;
        index /= base;
        factor *= inv_base;
    }
    return result;
}

SampleSet halton(std::size_t n, int dim, const Box& region) {
    if (dim <= 0 || dim > static_cast<int>(kPrimes.size())) throw DimensionError("halton: dimension must be in 1..20");
    if (region.dim() != dim) throw DimensionError("halton: region dimension mismatch");
    region.validate();
    SampleSet set;
    set.generator = SampleGenerator::Halton;
    set.region = region;
    set.points.reserve(n);
    Vector u(dim);
    for (std::size_t i = 1; i <= n; ++i) {
        for (int c = 0; c < dim; ++c) u[c] = radical_inverse(i, kPrimes[static_cast<std::size_t>(c)]);
        set.points.push_back(region.from_unit(u));
    }
    return set;
}

SampleSet uniform_mesh(int per_axis, const Box& region) {
    return uniform_mesh(std::vector<int>(static_cast<std::size_t>(region.dim()), per_axis), region);
}

SampleSet uniform_mesh(const std::vector<int>& per_axis, const Box& region) {
    region.validate();
    const int dim = region.dim();
    if (static_cast<int>(per_axis.size()) != dim) throw DimensionError("uniform_mesh: per-axis count mismatch");
    std::size_t total = 1;
    for (int m : per_axis) {
        if (m < 1) throw std::invalid_argument("uniform_mesh: need at least one point per axis");
        total *= static_cast<std::size_t>(m);
    }
    SampleSet set;
    set.generator = SampleGenerator::UniformMesh;
    set.region = region;
    set.points.reserve(total);
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    Vector u(dim);
    for (std::size_t n = 0; n < total; ++n) {
        for (int c = 0; c < dim; ++c) {
            const int m = per_axis[static_cast<std::size_t>(c)];
            u[c] = m == 1 ? 0.5 : static_cast<double>(idx[static_cast<std::size_t>(c)]) / (m - 1);
        }
        set.points.push_back(region.from_unit(u));
        for (int c = 0; c < dim; ++c) {
            if (++idx[static_cast<std::size_t>(c)] < per_axis[static_cast<std::size_t>(c)]) break;
            idx[static_cast<std::size_t>(c)] = 0;
        }
    }
    return set;
}

SampleSet probe_mesh(const Box& region, int resolution) {
    if (resolution < 1) throw std::invalid_argument("probe_mesh: resolution must be positive");
    const int dim = region.dim();
    if (dim <= 2) return uniform_mesh(resolution + 1, region);

    const double budget = static_cast<double>(resolution) * resolution;
    const int per_axis = std::max(2, static_cast<int>(std::floor(std::pow(budget, 1.0 / dim))));
    SampleSet set = uniform_mesh(per_axis, region);
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector u(dim);
    for (int n = 0; n < static_cast<int>(budget); ++n) {
        for (int c = 0; c < dim; ++c) u[c] = unit(rng);
        set.points.push_back(region.from_unit(u));
    }
    set.generator = SampleGenerator::Explicit;
    return set;
}

double fill_distance(const SampleSet& samples, const SampleSet& probe) {
    if (samples.points.empty()) throw std::invalid_argument("fill_distance: empty sample set");
    double worst = 0.0;
    for (const auto& q : probe.points) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : samples.points) {
            if (p.size() != q.size()) throw DimensionError("fill_distance: dimension mismatch");
            nearest = std::min(nearest, (p - q).squaredNorm());
        }
        worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
}

double uniform_mesh_fill_distance(std::size_t count, int dim) {
    if (count < 2) throw std::invalid_argument("uniform_mesh_fill_distance: need at least two points");
    const double per_axis = std::pow(static_cast<double>(count), 1.0 / dim);
    return std::sqrt(static_cast<double>(dim)) / (2.0 * (per_axis - 1.0));
}

}  // namespace lgp
