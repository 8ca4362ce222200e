#include "heisenlab/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace heisenlab {

namespace {

constexpr int kMaxAxes = 8;

struct AtomPlan {
    double w = 0.0;
    double s = 0.0;
    int shift[kMaxAxes];    // floor(-y/h) per axis
    double fr[kMaxAxes];    // fractional interpolation weight per axis
    double jy[kMaxAxes];    // J y
};

std::vector<AtomPlan> plan_atoms(const GridSpec& spec, const DiscreteMeasure& m) {
    const int axes = spec.spatial.axes();
    const int n = spec.spatial.n;
    const double h = spec.spatial.spacing();
    std::vector<AtomPlan> plans;
    plans.reserve(m.atoms.size());
    for (const Atom& atom : m.atoms) {
        AtomPlan p;
        p.w = atom.w;
        p.s = atom.s;
        for (int a = 0; a < axes; ++a) {
            const double off = -atom.y[a] / h;
            const double fl = std::floor(off);
            p.shift[a] = static_cast<int>(fl);
            p.fr[a] = off - fl;
            p.jy[a] = (a < n) ? atom.y[n + a] : -atom.y[a - n];
        }
        plans.push_back(p);
    }
    return plans;
}

// Core gather loop. One thread owns each output spatial column, so the
// result does not depend on the thread count.
template <typename T>
void convolve_run(const GridSpec& spec, const T* src, T* dst,
                  const std::vector<AtomPlan>& atoms) {
    const int axes = spec.spatial.axes();
    const int N = spec.spatial.points;
    const int M = spec.t_points;
    const double ht = spec.t_spacing();
    const std::int64_t columns = spec.spatial.size();
    const int corners = 1 << axes;

    std::vector<double> unode(N);
    for (int i = 0; i < N; ++i) unode[i] = spec.spatial.node(i);

#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t col = 0; col < columns; ++col) {
        int idx[kMaxAxes];
        double u[kMaxAxes];
        {
            std::int64_t f = col;
            for (int a = axes - 1; a >= 0; --a) {
                idx[a] = static_cast<int>(f % N);
                f /= N;
            }
        }
        for (int a = 0; a < axes; ++a) u[a] = unode[idx[a]];
        T* out = dst + col * M;

        for (const AtomPlan& atom : atoms) {
            double phase_x = 0.0;
            for (int a = 0; a < axes; ++a) phase_x += u[a] * atom.jy[a];

            for (int c = 0; c < corners; ++c) {
                double wsp = atom.w;
                double phase_u = 0.0;
                std::int64_t flatc = 0;
                bool ok = true;
                for (int a = 0; a < axes; ++a) {
                    const int bit = (c >> a) & 1;
                    const int k = idx[a] + atom.shift[a] + bit;
                    if (k < 0 || k >= N) {
                        ok = false;
                        break;
                    }
                    wsp *= bit ? atom.fr[a] : (1.0 - atom.fr[a]);
                    phase_u += unode[k] * atom.jy[a];
                    flatc = flatc * N + k;
                }
                if (!ok || wsp == 0.0) continue;

                const double tau = atom.s + 0.5 * (phase_x + phase_u);
                const double offt = tau / ht;
                const double fl = std::floor(-offt);
                const double bt = -offt - fl;
                if (fl < -2.0 * M || fl > 2.0 * M) continue;  // far outside the t-box
                const int ct = static_cast<int>(fl);
                const T* colsrc = src + flatc * M;
                const double w0 = wsp * (1.0 - bt);
                const double w1 = wsp * bt;

                const int jlo = std::max(0, -ct);
                const int jhi = std::min(M, M - 1 - ct);
                for (int j = jlo; j < jhi; ++j)
                    out[j] += w0 * colsrc[j + ct] + w1 * colsrc[j + ct + 1];
                int je = -ct - 1;
                if (je >= 0 && je < M) out[je] += w1 * colsrc[0];
                je = M - 1 - ct;
                if (je >= 0 && je < M) out[je] += w0 * colsrc[M - 1];
            }
        }
    }
}

template <typename T, typename F>
T pairwise_map_sum(std::int64_t lo, std::int64_t hi, F&& f) {
    if (hi - lo <= 32) {
        T s{};
        for (std::int64_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    const std::int64_t mid = lo + (hi - lo) / 2;
    return pairwise_map_sum<T>(lo, mid, f) + pairwise_map_sum<T>(mid, hi, f);
}

double norm_from_values(std::span<const Complex> v, double p, double cellvol) {
    if (p == p_infinity) {
        double m = 0.0;
        for (const Complex& c : v) m = std::max(m, std::abs(c));
        return m;
    }
    const double s = pairwise_map_sum<double>(
        0, static_cast<std::int64_t>(v.size()),
        [&](std::int64_t i) { return std::pow(std::abs(v[i]), p); });
    return std::pow(cellvol * s, 1.0 / p);
}

}  // namespace

GridFunction convolve_measure(const GridFunction& f, const DiscreteMeasure& m) {
    const GridSpec& spec = f.spec();
    if (m.n != spec.spatial.n) throw std::invalid_argument("convolve_measure: dimension mismatch");
    if (spec.spatial.axes() > kMaxAxes)
        throw std::invalid_argument("convolve_measure: dimension cap exceeded");
    const std::vector<AtomPlan> plans = plan_atoms(spec, m);
    GridFunction out(spec);

    if (f.is_real()) {
        const std::int64_t sz = spec.size();
        std::vector<double> src(sz), dst(sz, 0.0);
        for (std::int64_t i = 0; i < sz; ++i) src[i] = f.values()[i].real();
        convolve_run<double>(spec, src.data(), dst.data(), plans);
        for (std::int64_t i = 0; i < sz; ++i) out.values()[i] = dst[i];
    } else {
        convolve_run<Complex>(spec, f.values().data(), out.values().data(), plans);
    }
    return out;
}

SliceFunction oscillatory_factor(const SymmetricCoefficientMatrix& a, double lambda,
                                 const SpatialGrid& grid) {
    if (a.n() != grid.n) throw std::invalid_argument("oscillatory_factor: dimension mismatch");
    return SliceFunction::sample(grid, [&](std::span<const double> x) {
        return std::polar(1.0, lambda * phi(a, std::vector<double>(x.begin(), x.end())));
    });
}

SliceFunction partial_fourier_t(const GridFunction& f, double lambda) {
    const GridSpec& spec = f.spec();
    SliceFunction out(spec.spatial);
    const int M = spec.t_points;
    const double ht = spec.t_spacing();
    std::vector<Complex> phase(M);
    for (int j = 0; j < M; ++j) phase[j] = std::polar(ht, -lambda * spec.t_node(j));
    const std::int64_t cols = spec.spatial.size();
    for (std::int64_t s = 0; s < cols; ++s) {
        Complex acc(0.0, 0.0);
        const Complex* row = f.values().data() + s * M;
        for (int j = 0; j < M; ++j) acc += row[j] * phase[j];
        out.values()[s] = acc;
    }
    return out;
}

Complex fourier_spatial(const SliceFunction& f, std::span<const double> xi) {
    const SpatialGrid& g = f.grid();
    const int axes = g.axes();
    if (static_cast<int>(xi.size()) != axes)
        throw std::invalid_argument("fourier_spatial: frequency dimension mismatch");
    const int N = g.points;
    std::vector<Complex> axis_phase(static_cast<std::size_t>(axes) * N);
    for (int a = 0; a < axes; ++a)
        for (int i = 0; i < N; ++i)
            axis_phase[a * N + i] = std::polar(1.0, -xi[a] * g.node(i));
    std::vector<int> idx(axes, 0);
    const std::int64_t total = g.size();
    const Complex s = pairwise_map_sum<Complex>(0, total, [&](std::int64_t flat) {
        std::int64_t rem = flat;
        Complex ph(1.0, 0.0);
        for (int a = axes - 1; a >= 0; --a) {
            ph *= axis_phase[a * N + static_cast<int>(rem % N)];
            rem /= N;
        }
        return f.values()[flat] * ph;
    });
    return s * g.cell_volume();
}

double lp_norm(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    return norm_from_values(f.values(), p, f.spec().cell_volume());
}

double lp_norm(const SliceFunction& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    return norm_from_values(f.values(), p, f.grid().cell_volume());
}

Complex inner_product(const GridFunction& f, const GridFunction& g) {
    if (f.spec().size() != g.spec().size())
        throw std::invalid_argument("inner_product: size mismatch");
    const Complex s =
        pairwise_map_sum<Complex>(0, f.spec().size(), [&](std::int64_t i) {
            return std::conj(f.values()[i]) * g.values()[i];
        });
    return s * f.spec().cell_volume();
}

Complex inner_product(const SliceFunction& f, const SliceFunction& g) {
    if (f.grid().size() != g.grid().size())
        throw std::invalid_argument("inner_product: size mismatch");
    const Complex s = pairwise_map_sum<Complex>(0, f.grid().size(), [&](std::int64_t i) {
        return std::conj(f.values()[i]) * g.values()[i];
    });
    return s * f.grid().cell_volume();
}

GridFunction dilate_function(const GridFunction& f, DilationFactor delta, const GridSpec& target) {
    const GridSpec& src = f.spec();
    const double d = delta.delta;
    GridFunction out(target);

    const bool aligned = src.spatial.n == target.spatial.n &&
                         src.spatial.spacing() == d * target.spatial.spacing() &&
                         src.t_spacing() == d * d * target.t_spacing() &&
                         src.spatial.points >= target.spatial.points &&
                         src.t_points >= target.t_points &&
                         (src.spatial.points - target.spatial.points) % 2 == 0 &&
                         (src.t_points - target.t_points) % 2 == 0;

    const int axes = target.spatial.axes();
    if (aligned) {
        const int offs = (src.spatial.points - target.spatial.points) / 2;
        const int offt = (src.t_points - target.t_points) / 2;
        std::vector<int> idx(axes, 0);
        const std::int64_t cols = target.spatial.size();
        for (std::int64_t col = 0; col < cols; ++col) {
            spatial_unflat(target.spatial, col, idx);
            std::int64_t srccol = 0;
            for (int a = 0; a < axes; ++a) srccol = srccol * src.spatial.points + (idx[a] + offs);
            for (int j = 0; j < target.t_points; ++j)
                out.at(col, j) = f.at(srccol, j + offt);
        }
        return out;
    }

    std::vector<int> idx(axes, 0);
    std::vector<double> x(axes, 0.0);
    const std::int64_t cols = target.spatial.size();
    for (std::int64_t col = 0; col < cols; ++col) {
        spatial_unflat(target.spatial, col, idx);
        for (int a = 0; a < axes; ++a) x[a] = d * target.spatial.node(idx[a]);
        for (int j = 0; j < target.t_points; ++j)
            out.at(col, j) = f.interpolate(x, d * d * target.t_node(j));
    }
    return out;
}

}  // namespace heisenlab
