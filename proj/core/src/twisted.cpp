#include "heisenlab/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heisenlab {

namespace {

// Difference-lattice interpolant: Fbar[k] = f~(k h) for integer offsets
// k in [-(N-1), N-1]^{2n}. With cell-centered nodes every lattice difference
// falls midway between nodes, so the interpolant is the plain corner average.
struct DiffLattice {
    int W = 0;  // 2N-1 per axis
    bool real = true;
    std::vector<double> re;
    std::vector<double> im;
    // per-axis support hull: offsets outside [klo[a], khi[a]] carry only
    // values below 1e-16 of the peak and are skipped
    std::vector<int> klo, khi;
};

DiffLattice build_diff_lattice(const SliceFunction& f) {
    const SpatialGrid& g = f.grid();
    const int axes = g.axes();
    const int N = g.points;
    const int W = 2 * N - 1;
    double cells = 1.0;
    for (int a = 0; a < axes; ++a) cells *= W;
    if (cells > 4.0e7)
        throw std::invalid_argument("twisted_convolve: grid too large for the difference lattice");

    DiffLattice lat;
    lat.W = W;
    lat.real = f.is_real();
    const std::int64_t total = static_cast<std::int64_t>(cells);
    lat.re.assign(total, 0.0);
    if (!lat.real) lat.im.assign(total, 0.0);

    const double scale = std::ldexp(1.0, -axes);  // 2^{-axes} corner average
    std::vector<int> k(axes, 0);
    double peak = 0.0;
    std::vector<std::vector<double>> axis_max(axes, std::vector<double>(W, 0.0));
    for (std::int64_t flat = 0; flat < total; ++flat) {
        {
            std::int64_t rem = flat;
            for (int a = axes - 1; a >= 0; --a) {
                k[a] = static_cast<int>(rem % W) - (N - 1);
                rem /= W;
            }
        }
        Complex acc(0.0, 0.0);
        const int corners = 1 << axes;
        for (int c = 0; c < corners; ++c) {
            std::int64_t src = 0;
            bool inside = true;
            for (int a = 0; a < axes; ++a) {
                const int bit = (c >> a) & 1;
                const int m = k[a] - 1 + N / 2 + bit;
                if (m < 0 || m >= N) {
                    inside = false;
                    break;
                }
                src = src * N + m;
            }
            if (inside) acc += f.values()[src];
        }
        acc *= scale;
        lat.re[flat] = acc.real();
        if (!lat.real) lat.im[flat] = acc.imag();
        const double mag = std::abs(acc);
        peak = std::max(peak, mag);
        for (int a = 0; a < axes; ++a)
            axis_max[a][k[a] + N - 1] = std::max(axis_max[a][k[a] + N - 1], mag);
    }
    const double cut = 1e-16 * peak;
    lat.klo.assign(axes, -(N - 1));
    lat.khi.assign(axes, N - 1);
    for (int a = 0; a < axes; ++a) {
        int lo = 0, hi = W - 1;
        while (lo < hi && axis_max[a][lo] <= cut) ++lo;
        while (hi > lo && axis_max[a][hi] <= cut) --hi;
        lat.klo[a] = lo - (N - 1);
        lat.khi[a] = hi - (N - 1);
    }
    return lat;
}

bool mirror_symmetric(std::span<const Complex> v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < (n + 1) / 2; ++i)
        if (v[i] != v[n - 1 - i]) return false;
    return true;
}

// Extended node coordinate: the cell-center formula for any integer index.
inline double ext_node(const SpatialGrid& g, int j) {
    return (2 * j + 1 - g.points) * (0.5 * g.spacing());
}

// ---------------------------------------------------------------------------
// Generic twisted convolution with a sampled g on the shared box.
// ---------------------------------------------------------------------------

// Pair-phase table P[a][b] = exp(-i lambda u_a u_b). The full twist phase is
// the product over axis pairs: prod_a P[i_a][j_{n+a}] conj(P[i_{n+a}][j_a]).
struct PhaseTable {
    std::vector<double> re;
    std::vector<double> im;
};

PhaseTable build_phase_table(const SpatialGrid& g, double lambda) {
    const int N = g.points;
    PhaseTable t;
    t.re.resize(static_cast<std::size_t>(N) * N);
    t.im.resize(static_cast<std::size_t>(N) * N);
    for (int a = 0; a < N; ++a) {
        const double ua = g.node(a);
        for (int b = 0; b < N; ++b) {
            const double ph = -lambda * ua * g.node(b);
            t.re[static_cast<std::size_t>(a) * N + b] = std::cos(ph);
            t.im[static_cast<std::size_t>(a) * N + b] = std::sin(ph);
        }
    }
    return t;
}

// n = 1 kernel: out[i1][i2] = h^2 sum_{j1,j2} Fbar[i1-j1][i2-j2] g[j1][j2]
//                              P[i1][j2] conj(P[i2][j1]).
// Fbar rows are stored with the second axis reversed so the inner loop is a
// contiguous forward dot product.
SliceFunction twisted_n1(const SliceFunction& f, const SliceFunction& g, double lambda) {
    const SpatialGrid& grid = f.grid();
    const int N = grid.points;
    const double h2 = grid.cell_volume();

    const DiffLattice lat = build_diff_lattice(f);
    const PhaseTable P = build_phase_table(grid, lambda);
    const int W = lat.W;

    // reversed second axis for contiguous inner access
    std::vector<double> fre(static_cast<std::size_t>(W) * W), fim;
    for (int r = 0; r < W; ++r)
        for (int c = 0; c < W; ++c)
            fre[static_cast<std::size_t>(r) * W + c] = lat.re[static_cast<std::size_t>(r) * W + (W - 1 - c)];
    if (!lat.real) {
        fim.resize(static_cast<std::size_t>(W) * W);
        for (int r = 0; r < W; ++r)
            for (int c = 0; c < W; ++c)
                fim[static_cast<std::size_t>(r) * W + c] =
                    lat.im[static_cast<std::size_t>(r) * W + (W - 1 - c)];
    }

    const bool even = mirror_symmetric(f.values()) && mirror_symmetric(g.values());

    SliceFunction out(grid);
    Complex* dst = out.values().data();
    const Complex* gv = g.values().data();
    const int i1_hi = even ? N / 2 : N;

#pragma omp parallel
    {
        std::vector<double> g1re(static_cast<std::size_t>(N) * N);
        std::vector<double> g1im(static_cast<std::size_t>(N) * N);
        std::vector<double> accre(N), accim(N);

#pragma omp for schedule(dynamic, 1)
        for (int i1 = 0; i1 < i1_hi; ++i1) {
            const double* __restrict__ pre = P.re.data() + static_cast<std::size_t>(i1) * N;
            const double* __restrict__ pim = P.im.data() + static_cast<std::size_t>(i1) * N;
            for (int j1 = 0; j1 < N; ++j1) {
                const Complex* grow = gv + static_cast<std::size_t>(j1) * N;
                double* __restrict__ g1r = g1re.data() + static_cast<std::size_t>(j1) * N;
                double* __restrict__ g1i = g1im.data() + static_cast<std::size_t>(j1) * N;
                for (int j2 = 0; j2 < N; ++j2) {
                    const double gr = grow[j2].real(), gi = grow[j2].imag();
                    g1r[j2] = gr * pre[j2] - gi * pim[j2];
                    g1i[j2] = gr * pim[j2] + gi * pre[j2];
                }
            }
            std::fill(accre.begin(), accre.end(), 0.0);
            std::fill(accim.begin(), accim.end(), 0.0);
            for (int j1 = 0; j1 < N; ++j1) {
                const std::size_t row = static_cast<std::size_t>(i1 - j1 + N - 1) * W;
                const double* __restrict__ frow = fre.data() + row;
                const double* __restrict__ firow = lat.real ? nullptr : fim.data() + row;
                const double* __restrict__ g1r = g1re.data() + static_cast<std::size_t>(j1) * N;
                const double* __restrict__ g1i = g1im.data() + static_cast<std::size_t>(j1) * N;
                for (int i2 = 0; i2 < N; ++i2) {
                    // reversed column base: Fbar[.][i2-j2] = fre[.][N-1-i2+j2]
                    const double* __restrict__ fr = frow + (N - 1 - i2);
                    double sre = 0.0, sim = 0.0;
                    if (!firow) {
                        for (int j2 = 0; j2 < N; ++j2) {
                            sre += fr[j2] * g1r[j2];
                            sim += fr[j2] * g1i[j2];
                        }
                    } else {
                        const double* __restrict__ fi = firow + (N - 1 - i2);
                        for (int j2 = 0; j2 < N; ++j2) {
                            sre += fr[j2] * g1r[j2] - fi[j2] * g1i[j2];
                            sim += fr[j2] * g1i[j2] + fi[j2] * g1r[j2];
                        }
                    }
                    const double qre = P.re[static_cast<std::size_t>(i2) * N + j1];
                    const double qim = -P.im[static_cast<std::size_t>(i2) * N + j1];
                    accre[i2] += sre * qre + sim * qim;
                    accim[i2] += sim * qre - sre * qim;
                }
            }
            for (int i2 = 0; i2 < N; ++i2)
                dst[static_cast<std::size_t>(i1) * N + i2] = h2 * Complex(accre[i2], accim[i2]);
        }
    }

    if (even) {
        const std::int64_t total = grid.size();
        for (std::int64_t s = static_cast<std::int64_t>(i1_hi) * N; s < total; ++s)
            dst[s] = dst[total - 1 - s];
    }
    return out;
}

// Generic-dimension path; used for n >= 2 at desk scale.
SliceFunction twisted_generic(const SliceFunction& f, const SliceFunction& g, double lambda) {
    const SpatialGrid& grid = f.grid();
    const int axes = grid.axes();
    const int n = grid.n;
    const int N = grid.points;

    const DiffLattice lat = build_diff_lattice(f);
    const PhaseTable P = build_phase_table(grid, lambda);
    const int W = lat.W;

    SliceFunction out(grid);
    const std::int64_t total = grid.size();
    std::vector<int> iv(axes), jv(axes);

#pragma omp parallel for schedule(dynamic, 1) firstprivate(iv, jv)
    for (std::int64_t i = 0; i < total; ++i) {
        spatial_unflat(grid, i, iv);
        double acc_re = 0.0, acc_im = 0.0;
        for (std::int64_t j = 0; j < total; ++j) {
            spatial_unflat(grid, j, jv);
            std::int64_t dflat = 0;
            for (int a = 0; a < axes; ++a) dflat = dflat * W + (iv[a] - jv[a] + N - 1);
            const double fre = lat.re[dflat];
            const double fim = lat.real ? 0.0 : lat.im[dflat];
            if (fre == 0.0 && fim == 0.0) continue;
            double pre = 1.0, pim = 0.0;
            for (int a = 0; a < n; ++a) {
                {
                    const std::size_t t1 = static_cast<std::size_t>(iv[a]) * N + jv[n + a];
                    const double r = pre * P.re[t1] - pim * P.im[t1];
                    pim = pre * P.im[t1] + pim * P.re[t1];
                    pre = r;
                }
                {
                    const std::size_t t2 = static_cast<std::size_t>(iv[n + a]) * N + jv[a];
                    const double r = pre * P.re[t2] + pim * P.im[t2];
                    pim = -pre * P.im[t2] + pim * P.re[t2];
                    pre = r;
                }
            }
            const Complex gj = g.values()[j];
            const double tre = fre * gj.real() - fim * gj.imag();
            const double tim = fre * gj.imag() + fim * gj.real();
            acc_re += tre * pre - tim * pim;
            acc_im += tre * pim + tim * pre;
        }
        out.values()[i] = grid.cell_volume() * Complex(acc_re, acc_im);
    }
    return out;
}

void check_same_grid(const SliceFunction& f, const SliceFunction& g) {
    const SpatialGrid& a = f.grid();
    const SpatialGrid& b = g.grid();
    if (a.n != b.n || a.points != b.points || a.halfwidth != b.halfwidth)
        throw std::invalid_argument("twisted_convolve: spatial grids must match");
}

// ---------------------------------------------------------------------------
// Chirp-specific twisted convolution for the identity checks. The chirp
// e_{lambda A} is evaluated in closed form on the extended lattice covering
// the whole support of f~(x - .), so the quadrature has no box-truncation
// term and the residual is governed by the O(h^2) interpolation error.
// ---------------------------------------------------------------------------

SliceFunction chirp_twisted_n1(const SliceFunction& f, const SymmetricCoefficientMatrix& a,
                               double lambda) {
    const SpatialGrid& grid = f.grid();
    const int N = grid.points;
    const double h2 = grid.cell_volume();
    const Matrix& A = a.matrix();

    const DiffLattice lat = build_diff_lattice(f);
    const int W = lat.W;
    const int klo1 = lat.klo[0], khi1 = lat.khi[0];
    const int klo2 = lat.klo[1], khi2 = lat.khi[1];
    const int ext2 = khi2 - klo2 + 1;

    // extended j-ranges: j = i - k with i in [0, N), k in [klo, khi]
    const int j1lo = 0 - khi1, j1hi = (N - 1) - klo1;
    const int j2lo = 0 - khi2, j2hi = (N - 1) - klo2;
    const int nj1 = j1hi - j1lo + 1, nj2 = j2hi - j2lo + 1;

    // Fbar with the second axis reversed and trimmed:
    // fbr[r][c] = Fbar[klo1 + r][khi2 - c], r < ext1, c < ext2
    const int ext1 = khi1 - klo1 + 1;
    std::vector<double> fbr(static_cast<std::size_t>(ext1) * ext2), fbi;
    auto src_at = [&](int k1, int k2) {
        return static_cast<std::size_t>(k1 + N - 1) * W + (k2 + N - 1);
    };
    for (int r = 0; r < ext1; ++r)
        for (int c = 0; c < ext2; ++c)
            fbr[static_cast<std::size_t>(r) * ext2 + c] = lat.re[src_at(klo1 + r, khi2 - c)];
    if (!lat.real) {
        fbi.resize(static_cast<std::size_t>(ext1) * ext2);
        for (int r = 0; r < ext1; ++r)
            for (int c = 0; c < ext2; ++c)
                fbi[static_cast<std::size_t>(r) * ext2 + c] = lat.im[src_at(klo1 + r, khi2 - c)];
    }

    // chirp on the extended lattice
    std::vector<double> chre(static_cast<std::size_t>(nj1) * nj2),
        chim(static_cast<std::size_t>(nj1) * nj2);
    for (int j1 = j1lo; j1 <= j1hi; ++j1) {
        const double y1 = ext_node(grid, j1);
        for (int j2 = j2lo; j2 <= j2hi; ++j2) {
            const double y2 = ext_node(grid, j2);
            const double q = A(0, 0) * y1 * y1 + 2.0 * A(0, 1) * y1 * y2 + A(1, 1) * y2 * y2;
            const std::size_t at =
                static_cast<std::size_t>(j1 - j1lo) * nj2 + (j2 - j2lo);
            chre[at] = std::cos(lambda * q);
            chim[at] = std::sin(lambda * q);
        }
    }

    // pair phases over [0,N) x extended
    std::vector<double> p1re(static_cast<std::size_t>(N) * nj2), p1im(p1re.size());
    for (int i = 0; i < N; ++i) {
        const double u = grid.node(i);
        for (int j2 = j2lo; j2 <= j2hi; ++j2) {
            const double ph = -lambda * u * ext_node(grid, j2);
            p1re[static_cast<std::size_t>(i) * nj2 + (j2 - j2lo)] = std::cos(ph);
            p1im[static_cast<std::size_t>(i) * nj2 + (j2 - j2lo)] = std::sin(ph);
        }
    }
    // transposed pair phases: p2re[j1][i2]
    std::vector<double> p2re(static_cast<std::size_t>(nj1) * N), p2im(p2re.size());
    for (int j1 = j1lo; j1 <= j1hi; ++j1) {
        const double y1 = ext_node(grid, j1);
        for (int i = 0; i < N; ++i) {
            const double ph = -lambda * grid.node(i) * y1;
            p2re[static_cast<std::size_t>(j1 - j1lo) * N + i] = std::cos(ph);
            p2im[static_cast<std::size_t>(j1 - j1lo) * N + i] = std::sin(ph);
        }
    }

    const bool even = mirror_symmetric(f.values());

    SliceFunction out(grid);
    Complex* dst = out.values().data();
    const int i1_hi = even ? N / 2 : N;

#pragma omp parallel
    {
        std::vector<double> g1re(static_cast<std::size_t>(ext1) * nj2);
        std::vector<double> g1im(static_cast<std::size_t>(ext1) * nj2);
        std::vector<double> accre(N), accim(N);

#pragma omp for schedule(dynamic, 1)
        for (int i1 = 0; i1 < i1_hi; ++i1) {
            // fold the i1 phase row into the chirp over this i1's j1 window
            const double* __restrict__ pre = p1re.data() + static_cast<std::size_t>(i1) * nj2;
            const double* __restrict__ pim = p1im.data() + static_cast<std::size_t>(i1) * nj2;
            const int j1base = i1 - khi1;  // j1 = j1base + r, r in [0, ext1)
            for (int r = 0; r < ext1; ++r) {
                const std::size_t crow = static_cast<std::size_t>(j1base + r - j1lo) * nj2;
                double* __restrict__ g1r = g1re.data() + static_cast<std::size_t>(r) * nj2;
                double* __restrict__ g1i = g1im.data() + static_cast<std::size_t>(r) * nj2;
                for (int c = 0; c < nj2; ++c) {
                    const double gr = chre[crow + c], gi = chim[crow + c];
                    g1r[c] = gr * pre[c] - gi * pim[c];
                    g1i[c] = gr * pim[c] + gi * pre[c];
                }
            }
            std::fill(accre.begin(), accre.end(), 0.0);
            std::fill(accim.begin(), accim.end(), 0.0);
            // j1 outer, i2 inner: the fbr row and the g1 row windows stay hot
            for (int r = 0; r < ext1; ++r) {
                const int j1 = j1base + r;
                // k1 = i1 - j1 = khi1 - r; fbr rows are indexed by k1 - klo1
                const std::size_t frow = static_cast<std::size_t>(ext1 - 1 - r) * ext2;
                const double* __restrict__ fre2 = fbr.data() + frow;
                const double* __restrict__ fi2 = lat.real ? nullptr : fbi.data() + frow;
                const double* __restrict__ g1rbase =
                    g1re.data() + static_cast<std::size_t>(r) * nj2;
                const double* __restrict__ g1ibase =
                    g1im.data() + static_cast<std::size_t>(r) * nj2;
                const double* __restrict__ q2r =
                    p2re.data() + static_cast<std::size_t>(j1 - j1lo) * N;
                const double* __restrict__ q2i =
                    p2im.data() + static_cast<std::size_t>(j1 - j1lo) * N;
                for (int i2 = 0; i2 < N; ++i2) {
                    const int goff = (i2 - khi2) - j2lo;
                    const double* __restrict__ g1r = g1rbase + goff;
                    const double* __restrict__ g1i = g1ibase + goff;
                    double sre = 0.0, sim = 0.0;
                    if (!fi2) {
                        for (int c = 0; c < ext2; ++c) {
                            sre += fre2[c] * g1r[c];
                            sim += fre2[c] * g1i[c];
                        }
                    } else {
                        for (int c = 0; c < ext2; ++c) {
                            sre += fre2[c] * g1r[c] - fi2[c] * g1i[c];
                            sim += fre2[c] * g1i[c] + fi2[c] * g1r[c];
                        }
                    }
                    // accumulate conj(P2[j1][i2]) * S
                    accre[i2] += sre * q2r[i2] + sim * q2i[i2];
                    accim[i2] += sim * q2r[i2] - sre * q2i[i2];
                }
            }
            for (int i2 = 0; i2 < N; ++i2)
                dst[static_cast<std::size_t>(i1) * N + i2] = h2 * Complex(accre[i2], accim[i2]);
        }
    }

    if (even) {
        const std::int64_t total = grid.size();
        for (std::int64_t s = static_cast<std::int64_t>(i1_hi) * N; s < total; ++s)
            dst[s] = dst[total - 1 - s];
    }
    return out;
}

// Generic-n extended sum; small grids only.
SliceFunction chirp_twisted_generic(const SliceFunction& f, const SymmetricCoefficientMatrix& a,
                                    double lambda) {
    const SpatialGrid& grid = f.grid();
    const int axes = grid.axes();
    const int n = grid.n;
    const int N = grid.points;
    const DiffLattice lat = build_diff_lattice(f);
    const int W = lat.W;

    SliceFunction out(grid);
    const std::int64_t total = grid.size();
    std::vector<int> iv(axes), kv(axes);
    std::vector<double> y(axes);

#pragma omp parallel for schedule(dynamic, 1) firstprivate(iv, kv, y)
    for (std::int64_t i = 0; i < total; ++i) {
        spatial_unflat(grid, i, iv);
        Complex acc(0.0, 0.0);
        // enumerate the trimmed difference hull
        std::int64_t hull = 1;
        for (int ax = 0; ax < axes; ++ax) hull *= lat.khi[ax] - lat.klo[ax] + 1;
        for (std::int64_t c = 0; c < hull; ++c) {
            std::int64_t rem = c;
            for (int ax = axes - 1; ax >= 0; --ax) {
                const int width = lat.khi[ax] - lat.klo[ax] + 1;
                kv[ax] = lat.klo[ax] + static_cast<int>(rem % width);
                rem /= width;
            }
            std::int64_t dflat = 0;
            for (int ax = 0; ax < axes; ++ax) dflat = dflat * W + (kv[ax] + N - 1);
            const double fre = lat.re[dflat];
            const double fim = lat.real ? 0.0 : lat.im[dflat];
            if (fre == 0.0 && fim == 0.0) continue;
            double q = 0.0, tw = 0.0;
            for (int ax = 0; ax < axes; ++ax) y[ax] = ext_node(grid, iv[ax] - kv[ax]);
            for (int r = 0; r < axes; ++r) {
                double row = 0.0;
                for (int s = 0; s < axes; ++s) row += a.matrix()(r, s) * y[s];
                q += y[r] * row;
            }
            for (int ax = 0; ax < n; ++ax)
                tw += grid.node(iv[ax]) * y[n + ax] - grid.node(iv[n + ax]) * y[ax];
            acc += Complex(fre, fim) * std::polar(1.0, lambda * q - lambda * tw);
        }
        out.values()[i] = grid.cell_volume() * acc;
    }
    return out;
}

SliceFunction chirp_twisted(const SliceFunction& f, const SymmetricCoefficientMatrix& a,
                            double lambda) {
    if (f.grid().n == 1) return chirp_twisted_n1(f, a, lambda);
    return chirp_twisted_generic(f, a, lambda);
}

}  // namespace

SliceFunction twisted_convolve(const SliceFunction& f, const SliceFunction& g, double lambda) {
    check_same_grid(f, g);
    if (f.grid().n == 1) return twisted_n1(f, g, lambda);
    return twisted_generic(f, g, lambda);
}

PointwiseIdentityReport pointwise_twisted_identity_residual(
    const SliceFunction& f, const SymmetricCoefficientMatrix& a, double lambda,
    const std::vector<std::vector<double>>& sample_points) {
    if (lambda == 0.0)
        throw std::invalid_argument("pointwise_twisted_identity_residual: lambda must be nonzero");
    const SpatialGrid& grid = f.grid();
    const int axes = grid.axes();
    const int N = grid.points;
    if (a.n() != grid.n) throw std::invalid_argument("dimension mismatch");

    // g = e_{lambda A} f for the Fourier side
    const SliceFunction chirp = oscillatory_factor(a, lambda, grid);
    SliceFunction g(grid);
    for (std::int64_t i = 0; i < grid.size(); ++i)
        g.values()[i] = chirp.values()[i] * f.values()[i];

    Matrix twoaj = a.matrix();
    twoaj *= 2.0;
    {
        const Matrix j = make_j(HeisenbergDim(grid.n));
        twoaj += j;
    }

    PointwiseIdentityReport rep;
    std::vector<int> jv(axes);
    std::vector<double> y(axes), diff(axes);
    for (const auto& x : sample_points) {
        if (static_cast<int>(x.size()) != axes)
            throw std::invalid_argument("sample point dimension mismatch");
        // lhs: direct quadrature over the extended lattice covering supp f~
        Complex lhs(0.0, 0.0);
        std::int64_t ext_total = 1;
        std::vector<int> jlo(axes), width(axes);
        for (int ax = 0; ax < axes; ++ax) {
            // x - y within the box requires y in [x - L, x + L]
            const double h = grid.spacing();
            jlo[ax] = static_cast<int>(std::floor((x[ax] - grid.halfwidth) / h + 0.5 * (N - 1)));
            const int hi = static_cast<int>(std::ceil((x[ax] + grid.halfwidth) / h + 0.5 * (N + 1)));
            width[ax] = hi - jlo[ax] + 1;
            ext_total *= width[ax];
        }
        for (std::int64_t flat = 0; flat < ext_total; ++flat) {
            std::int64_t rem = flat;
            for (int ax = axes - 1; ax >= 0; --ax) {
                jv[ax] = jlo[ax] + static_cast<int>(rem % width[ax]);
                rem /= width[ax];
            }
            for (int ax = 0; ax < axes; ++ax) {
                y[ax] = ext_node(grid, jv[ax]);
                diff[ax] = x[ax] - y[ax];
            }
            const Complex fd = f.interpolate(diff);
            if (fd == Complex(0.0, 0.0)) continue;
            const double q = phi(a, y);
            const double tw = symplectic(x, y);
            lhs += fd * std::polar(1.0, lambda * (q - tw));
        }
        lhs *= grid.cell_volume();

        // rhs: e_{lambda A}(x) ghat(lambda (2A+J) x)
        std::vector<double> xi = mat_vec(twoaj, x);
        for (double& c : xi) c *= lambda;
        const Complex rhs = std::polar(1.0, lambda * phi(a, x)) * fourier_spatial(g, xi);

        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        const double denom = std::max(std::abs(rhs), 1e-300);
        rep.max_rel_residual = std::max(rep.max_rel_residual, std::abs(lhs - rhs) / denom);
    }
    return rep;
}

TwistedNormReport twisted_identity_residual(const SliceFunction& f,
                                            const SymmetricCoefficientMatrix& a, double lambda) {
    if (lambda == 0.0)
        throw std::invalid_argument("twisted_identity_residual: lambda must be nonzero");
    if (!is_nondegenerate(a))
        throw std::domain_error("twisted_identity_residual: det(2A+J) vanishes");
    const SpatialGrid& grid = f.grid();
    if (a.n() != grid.n) throw std::invalid_argument("dimension mismatch");

    const SliceFunction conv = chirp_twisted(f, a, lambda);

    TwistedNormReport rep;
    rep.lhs = lp_norm(conv, 2.0);
    const double det = det_perturbed(a, PerturbationSign::plus);
    const int n = grid.n;
    rep.rhs = std::pow(2.0 * std::numbers::pi, n) * std::pow(std::abs(lambda), -n) /
              std::sqrt(std::abs(det)) * lp_norm(f, 2.0);
    rep.rel_err = std::abs(rep.lhs - rep.rhs) / rep.rhs;
    return rep;
}

SliceFunction chirp_twisted_convolve(const SliceFunction& f, const SymmetricCoefficientMatrix& a,
                                     double lambda) {
    if (a.n() != f.grid().n) throw std::invalid_argument("dimension mismatch");
    return chirp_twisted(f, a, lambda);
}

}  // namespace heisenlab
