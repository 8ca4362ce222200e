#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "heisenlab/group.hpp"

namespace heisenlab {

using Complex = std::complex<double>;

// Uniform cell-centered grid on [-L, L] per axis: N cells of width h = 2L/N,
// nodes at the cell centers. Node coordinates are computed as
// (2i+1-N) * h/2 so the node set is exactly symmetric under negation.
struct SpatialGrid {
    int n = 1;           // half the spatial dimension (axes = 2n)
    double halfwidth = 1.0;
    int points = 8;      // nodes per axis, even

    SpatialGrid() = default;
    SpatialGrid(int n_, double halfwidth_, int points_)
        : n(n_), halfwidth(halfwidth_), points(points_) {
        if (n < 1) throw std::invalid_argument("SpatialGrid: n >= 1");
        if (!(halfwidth > 0)) throw std::invalid_argument("SpatialGrid: halfwidth > 0");
        if (points < 8 || points % 2 != 0)
            throw std::invalid_argument("SpatialGrid: points must be even and >= 8");
    }

    int axes() const { return 2 * n; }
    double spacing() const { return 2.0 * halfwidth / points; }
    double node(int i) const { return (2 * i + 1 - points) * (spacing() * 0.5); }
    std::int64_t size() const {
        std::int64_t s = 1;
        for (int a = 0; a < axes(); ++a) s *= points;
        return s;
    }
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < axes(); ++a) v *= spacing();
        return v;
    }
};

struct GridSpec {
    SpatialGrid spatial;
    double t_halfwidth = 1.0;
    int t_points = 8;

    GridSpec() = default;
    GridSpec(int n, double spatial_halfwidth, int spatial_points, double t_halfwidth_,
             int t_points_)
        : spatial(n, spatial_halfwidth, spatial_points),
          t_halfwidth(t_halfwidth_),
          t_points(t_points_) {
        if (!(t_halfwidth > 0)) throw std::invalid_argument("GridSpec: t_halfwidth > 0");
        if (t_points < 8 || t_points % 2 != 0)
            throw std::invalid_argument("GridSpec: t_points must be even and >= 8");
    }

    double t_spacing() const { return 2.0 * t_halfwidth / t_points; }
    double t_node(int j) const { return (2 * j + 1 - t_points) * (t_spacing() * 0.5); }
    std::int64_t size() const { return spatial.size() * t_points; }
    double cell_volume() const { return spatial.cell_volume() * t_spacing(); }
};

// Multi-index helpers for the spatial axes (row-major, axis 0 slowest).
inline std::int64_t spatial_flat(const SpatialGrid& g, std::span<const int> idx) {
    std::int64_t f = 0;
    for (int a = 0; a < g.axes(); ++a) f = f * g.points + idx[a];
    return f;
}

inline void spatial_unflat(const SpatialGrid& g, std::int64_t flat, std::span<int> idx) {
    for (int a = g.axes() - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % g.points);
        flat /= g.points;
    }
}

// Complex samples on a GridSpec; t is the innermost (fastest) axis.
class GridFunction {
public:
    explicit GridFunction(const GridSpec& spec)
        : spec_(spec), values_(static_cast<std::size_t>(spec.size()), Complex(0.0, 0.0)) {}

    using Sampler = std::function<Complex(std::span<const double>, double)>;

    static GridFunction sample(const GridSpec& spec, const Sampler& f);

    const GridSpec& spec() const { return spec_; }
    std::span<Complex> values() { return values_; }
    std::span<const Complex> values() const { return values_; }

    Complex& at(std::int64_t spatial_flat_idx, int t_idx) {
        return values_[spatial_flat_idx * spec_.t_points + t_idx];
    }
    Complex at(std::int64_t spatial_flat_idx, int t_idx) const {
        return values_[spatial_flat_idx * spec_.t_points + t_idx];
    }

    bool all_finite() const;
    bool is_real(double tol = 0.0) const;

    // Multilinear interpolation in all 2n+1 axes, zero outside the box.
    Complex interpolate(std::span<const double> x, double t) const;

private:
    GridSpec spec_;
    std::vector<Complex> values_;
};

// Complex samples on the spatial grid only (a fixed t-frequency slice).
class SliceFunction {
public:
    explicit SliceFunction(const SpatialGrid& grid)
        : grid_(grid), values_(static_cast<std::size_t>(grid.size()), Complex(0.0, 0.0)) {}

    using Sampler = std::function<Complex(std::span<const double>)>;

    static SliceFunction sample(const SpatialGrid& grid, const Sampler& f);

    const SpatialGrid& grid() const { return grid_; }
    std::span<Complex> values() { return values_; }
    std::span<const Complex> values() const { return values_; }

    bool is_real(double tol = 0.0) const;

    // Multilinear interpolation with zero extension outside the box.
    Complex interpolate(std::span<const double> x) const;

private:
    SpatialGrid grid_;
    std::vector<Complex> values_;
};

// Deterministic pairwise summation (stable across thread counts; reductions
// in this project never use atomics).
double pairwise_sum(std::span<const double> v);
Complex pairwise_sum(std::span<const Complex> v);

// Effective thread count: min(omp_get_max_threads, HEISENLAB_THREADS if set).
int effective_threads();

}  // namespace heisenlab
