#pragma once

#include <vector>

#include "lgp/types.hpp"

namespace lgp {

/// Axis-aligned box [lower, upper].
struct Box {
    Vector lower;
    Vector upper;

    static Box cube(int dim, double lo, double hi);

    [[nodiscard]] int dim() const { return static_cast<int>(lower.size()); }
    [[nodiscard]] Vector centroid() const { return 0.5 * (lower + upper); }
    [[nodiscard]] bool contains(const Vector& p, double slack = 0.0) const;
    /// Maps a point of the unit cube affinely into the box.
    [[nodiscard]] Vector from_unit(const Vector& u) const;
    void validate() const;
};

enum class SampleGenerator { Halton, UniformMesh, Explicit };

struct SampleSet {
    std::vector<Vector> points;
    SampleGenerator generator = SampleGenerator::Explicit;
    Box region;

    [[nodiscard]] std::size_t size() const { return points.size(); }
    [[nodiscard]] std::vector<PhasePoint> phase_points() const;
};

/// Radical inverse of index in the given base (van der Corput).
[[nodiscard]] double radical_inverse(std::uint64_t index, unsigned base);

/// First n Halton points (prime bases 2, 3, 5, ..., index starting at 1),
/// mapped into the region. dim <= 20.
[[nodiscard]] SampleSet halton(std::size_t n, int dim, const Box& region);

/// Tensor mesh with per_axis points per coordinate including the boundary.
[[nodiscard]] SampleSet uniform_mesh(int per_axis, const Box& region);

/// Tensor mesh with a different count per axis.
[[nodiscard]] SampleSet uniform_mesh(const std::vector<int>& per_axis, const Box& region);

/// Probe set for fill-distance estimates: a tensor mesh with resolution + 1
/// points per axis when dim <= 2; otherwise about resolution^2 mesh points
/// plus as many uniformly random points (fixed seed).
[[nodiscard]] SampleSet probe_mesh(const Box& region, int resolution = 100);

/// sup over the probe of the distance to the nearest sample.
[[nodiscard]] double fill_distance(const SampleSet& samples, const SampleSet& probe);

/// Closed form for a uniform mesh of M points on the unit cube of dimension d:
/// sqrt(d) / (2 (M^(1/d) - 1)).
[[nodiscard]] double uniform_mesh_fill_distance(std::size_t count, int dim);

}  // namespace lgp
