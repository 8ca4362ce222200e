#include "heisenlab/grid.hpp"

#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heisenlab {

GridFunction GridFunction::sample(const GridSpec& spec, const Sampler& f) {
    GridFunction g(spec);
    const int axes = spec.spatial.axes();
    std::vector<int> idx(axes, 0);
    std::vector<double> x(axes, 0.0);
    const std::int64_t nsp = spec.spatial.size();
    for (std::int64_t s = 0; s < nsp; ++s) {
        spatial_unflat(spec.spatial, s, idx);
        for (int a = 0; a < axes; ++a) x[a] = spec.spatial.node(idx[a]);
        for (int j = 0; j < spec.t_points; ++j) g.at(s, j) = f(x, spec.t_node(j));
    }
    return g;
}

bool GridFunction::all_finite() const {
    for (const Complex& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool GridFunction::is_real(double tol) const {
    for (const Complex& v : values_)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

Complex GridFunction::interpolate(std::span<const double> x, double t) const {
    const SpatialGrid& g = spec_.spatial;
    const int axes = g.axes();
    if (axes + 1 > 9) throw std::invalid_argument("interpolate: dimension cap exceeded");
    const int N = g.points;
    const int M = spec_.t_points;
    int base[9];
    double fr[9];
    int extent[9];
    for (int a = 0; a < axes; ++a) {
        const double pos = x[a] / g.spacing() + 0.5 * (N - 1);
        const double fl = std::floor(pos);
        base[a] = static_cast<int>(fl);
        fr[a] = pos - fl;
        extent[a] = N;
        if (base[a] < -1 || base[a] > N - 1) return Complex(0.0, 0.0);
    }
    {
        const double pos = t / spec_.t_spacing() + 0.5 * (M - 1);
        const double fl = std::floor(pos);
        base[axes] = static_cast<int>(fl);
        fr[axes] = pos - fl;
        extent[axes] = M;
        if (base[axes] < -1 || base[axes] > M - 1) return Complex(0.0, 0.0);
    }
    Complex acc(0.0, 0.0);
    const int dims = axes + 1;
    const int corners = 1 << dims;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        std::int64_t flat = 0;
        bool inside = true;
        for (int a = 0; a < dims; ++a) {
            const int bit = (c >> a) & 1;
            const int idx = base[a] + bit;
            if (idx < 0 || idx >= extent[a]) {
                inside = false;
                break;
            }
            w *= bit ? fr[a] : (1.0 - fr[a]);
            flat = flat * extent[a] + idx;
        }
        if (inside && w != 0.0) acc += w * values_[flat];
    }
    return acc;
}

SliceFunction SliceFunction::sample(const SpatialGrid& grid, const Sampler& f) {
    SliceFunction g(grid);
    const int axes = grid.axes();
    std::vector<int> idx(axes, 0);
    std::vector<double> x(axes, 0.0);
    const std::int64_t nsp = grid.size();
    for (std::int64_t s = 0; s < nsp; ++s) {
        spatial_unflat(grid, s, idx);
        for (int a = 0; a < axes; ++a) x[a] = grid.node(idx[a]);
        g.values()[s] = f(x);
    }
    return g;
}

bool SliceFunction::is_real(double tol) const {
    for (const Complex& v : values_)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

Complex SliceFunction::interpolate(std::span<const double> x) const {
    const int axes = grid_.axes();
    const double h = grid_.spacing();
    const int N = grid_.points;
    // position in node units: x = (2i+1-N) h/2  =>  i = x/h + (N-1)/2
    int base[8];
    double fr[8];
    if (axes > 8) throw std::invalid_argument("interpolate: dimension cap exceeded");
    for (int a = 0; a < axes; ++a) {
        const double pos = x[a] / h + 0.5 * (N - 1);
        const double fl = std::floor(pos);
        base[a] = static_cast<int>(fl);
        fr[a] = pos - fl;
        if (base[a] < -1 || base[a] > N - 1) return Complex(0.0, 0.0);
    }
    Complex acc(0.0, 0.0);
    const int corners = 1 << axes;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        std::int64_t flat = 0;
        bool inside = true;
        for (int a = 0; a < axes; ++a) {
            const int bit = (c >> a) & 1;
            const int idx = base[a] + bit;
            if (idx < 0 || idx >= N) {
                inside = false;
                break;
            }
            w *= bit ? fr[a] : (1.0 - fr[a]);
            flat = flat * N + idx;
        }
        if (inside && w != 0.0) acc += w * values_[flat];
    }
    return acc;
}

namespace {

template <typename T>
T pairwise_sum_impl(const T* v, std::size_t n) {
    if (n <= 32) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_sum_impl(v.data(), v.size()); }
Complex pairwise_sum(std::span<const Complex> v) { return pairwise_sum_impl(v.data(), v.size()); }

int effective_threads() {
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    if (const char* cap = std::getenv("HEISENLAB_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1 && c < threads) threads = c;
    }
    return threads;
}

}  // namespace heisenlab
