#include "heisenlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace heisenlab::norms {

namespace {

double vec_lp_norm(const std::vector<Complex>& v, double p, double cellvol) {
    if (p == p_infinity) {
        double m = 0.0;
        for (const Complex& c : v) m = std::max(m, std::abs(c));
        return m;
    }
    std::vector<double> pw(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) pw[i] = std::pow(std::abs(v[i]), p);
    return std::pow(cellvol * pairwise_sum(pw), 1.0 / p);
}

// J_r(g) = |g|^{r-1} g/|g|
void duality_map(std::vector<Complex>& v, double r) {
    for (Complex& c : v) {
        const double m = std::abs(c);
        c = (m == 0.0) ? Complex(0.0, 0.0) : std::pow(m, r - 2.0) * c;
    }
}

void normalize(std::vector<Complex>& v, double p, double cellvol) {
    const double n = vec_lp_norm(v, p, cellvol);
    if (n == 0.0) return;
    const double inv = 1.0 / n;
    for (Complex& c : v) c *= inv;
}

std::vector<Complex> make_seed(int which, std::int64_t size, std::uint64_t rng_seed) {
    std::vector<Complex> v(size, Complex(0.0, 0.0));
    switch (which) {
        case 0:  // flat
            for (auto& c : v) c = 1.0;
            break;
        case 1:  // single center cell
            v[size / 2] = 1.0;
            break;
        default: {  // nonnegative random, then sign-mixed random
            std::mt19937_64 rng(rng_seed * 0x9e3779b97f4a7c15ULL + which);
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            if (which == 2) {
                for (auto& c : v) c = uni(rng);
            } else {
                for (auto& c : v) c = 2.0 * uni(rng) - 1.0;
            }
            break;
        }
    }
    return v;
}

}  // namespace

OperatorHandle make_convolution_operator(const GridSpec& spec, const DiscreteMeasure& m) {
    OperatorHandle op;
    op.size = spec.size();
    op.cell_volume = spec.cell_volume();
    op.descriptor = "convolution:" + m.description;
    const auto reflected = std::make_shared<DiscreteMeasure>(reflect_measure(m));
    const auto measure = std::make_shared<DiscreteMeasure>(m);
    op.forward = [spec, measure](const std::vector<Complex>& v) {
        GridFunction f(spec);
        std::copy(v.begin(), v.end(), f.values().begin());
        GridFunction out = convolve_measure(f, *measure);
        return std::vector<Complex>(out.values().begin(), out.values().end());
    };
    op.adjoint = [spec, reflected](const std::vector<Complex>& v) {
        GridFunction f(spec);
        std::copy(v.begin(), v.end(), f.values().begin());
        GridFunction out = convolve_measure(f, *reflected);
        return std::vector<Complex>(out.values().begin(), out.values().end());
    };
    return op;
}

OperatorHandle make_matrix_operator(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("make_matrix_operator: square only");
    OperatorHandle op;
    op.size = static_cast<std::int64_t>(m.rows());
    op.cell_volume = 1.0;
    op.descriptor = "matrix";
    const auto mat = std::make_shared<Matrix>(m);
    op.forward = [mat](const std::vector<Complex>& v) {
        std::vector<Complex> out(mat->rows(), Complex(0.0, 0.0));
        for (std::size_t i = 0; i < mat->rows(); ++i)
            for (std::size_t j = 0; j < mat->cols(); ++j) out[i] += (*mat)(i, j) * v[j];
        return out;
    };
    op.adjoint = [mat](const std::vector<Complex>& v) {
        std::vector<Complex> out(mat->cols(), Complex(0.0, 0.0));
        for (std::size_t i = 0; i < mat->rows(); ++i)
            for (std::size_t j = 0; j < mat->cols(); ++j) out[j] += (*mat)(i, j) * v[i];
        return out;
    };
    return op;
}

ResolutionEntry estimate_norm_pq(const OperatorHandle& op, double p, double q,
                                 const PowerIterationOptions& opts) {
    if (!(p > 1.0) || p == p_infinity || !(q > 1.0) || q == p_infinity)
        throw std::invalid_argument(
            "estimate_norm_pq: exponents must satisfy 1 < p, q < infinity (endpoints are "
            "handled by exact bounds)");
    if (opts.seeds < 1) throw std::invalid_argument("estimate_norm_pq: seeds >= 1");

    const double pd = p / (p - 1.0);  // dual exponent p'
    ResolutionEntry entry;

    for (int seed = 0; seed < opts.seeds; ++seed) {
        std::vector<Complex> f = make_seed(seed, op.size, opts.rng_seed);
        normalize(f, p, op.cell_volume);
        double prev = 0.0;
        int stable = 0;
        for (int it = 1; it <= opts.max_iter; ++it) {
            std::vector<Complex> u = op.forward(f);
            const double ratio = vec_lp_norm(u, q, op.cell_volume);
            if (ratio == 0.0) break;
            if (ratio > entry.estimate) entry.estimate = ratio;

            const double rel = std::abs(ratio - prev) / std::max(ratio, 1e-300);
            stable = (rel <= opts.tol) ? stable + 1 : 0;
            if (stable >= 2) {
                entry.converged = true;
                entry.iterations = std::max(entry.iterations, it);
                break;
            }
            prev = ratio;

            const double inv = 1.0 / ratio;
            for (Complex& c : u) c *= inv;
            duality_map(u, q);
            std::vector<Complex> w = op.adjoint(u);
            duality_map(w, pd);
            normalize(w, p, op.cell_volume);
            f = std::move(w);
            entry.iterations = std::max(entry.iterations, it);
        }
    }
    return entry;
}

double bound_11(const DiscreteMeasure& m) { return m.total_mass(); }

std::string to_string(Classification c) {
    switch (c) {
        case Classification::bounded: return "bounded";
        case Classification::unbounded: return "unbounded";
        default: return "inconclusive";
    }
}

NormEstimate refine_and_classify(const std::vector<std::pair<double, OperatorHandle>>& levels,
                                 double p, double q, const PowerIterationOptions& opts) {
    if (levels.size() < 3)
        throw std::invalid_argument("refine_and_classify: at least 3 resolutions");
    NormEstimate est;
    est.p = p;
    est.q = q;
    bool all_converged = true;
    for (const auto& [h, op] : levels) {
        ResolutionEntry e = estimate_norm_pq(op, p, q, opts);
        e.h = h;
        all_converged = all_converged && e.converged && e.estimate > 0.0;
        est.per_resolution.push_back(e);
    }
    // least squares of log(estimate) on log(1/h)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(est.per_resolution.size());
    for (const auto& e : est.per_resolution) {
        const double x = std::log(1.0 / e.h);
        const double y = std::log(std::max(e.estimate, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    est.growth_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    if (!all_converged)
        est.classification = Classification::inconclusive;
    else if (est.growth_slope <= kBoundedSlope)
        est.classification = Classification::bounded;
    else if (est.growth_slope >= kUnboundedSlope)
        est.classification = Classification::unbounded;
    else
        est.classification = Classification::inconclusive;
    return est;
}

ScanResult scan_typeset(const exponents::RegionSpec& region, const SymmetricCoefficientMatrix& a,
                        const std::vector<exponents::ExponentPoint>& points,
                        const ScanSettings& settings) {
    if (settings.resolutions.size() < 3)
        throw std::invalid_argument("scan_typeset: at least 3 resolutions");
    const double gamma_f = static_cast<double>(region.gamma);
    const CutoffSpec cutoff;

    // One operator family shared by every exponent point.
    std::vector<std::pair<double, OperatorHandle>> levels;
    for (int N : settings.resolutions) {
        GridSpec spec(region.n, settings.spatial_halfwidth, N, settings.t_halfwidth, N);
        DiscreteMeasure nu =
            discretize_nu(a, FractionalOrder(gamma_f, region.n), spec.spatial, cutoff);
        levels.emplace_back(spec.spatial.spacing(), make_convolution_operator(spec, nu));
    }

    ScanResult result;
    for (const auto& pt : points) {
        const double invp = static_cast<double>(pt.inv_p);
        const double invq = static_cast<double>(pt.inv_q);
        ScanSample sample{pt, refine_and_classify(levels, 1.0 / invp, 1.0 / invq, settings.power),
                          exponents::necessary_region(region, pt), false};
        sample.agrees =
            (sample.estimate.classification == Classification::bounded && sample.theory_member) ||
            (sample.estimate.classification == Classification::unbounded && !sample.theory_member);
        if (sample.agrees) ++result.agreement_count;
        result.samples.push_back(std::move(sample));
    }
    result.agreement_rate =
        points.empty() ? 0.0
                       : static_cast<double>(result.agreement_count) / points.size();
    return result;
}

}  // namespace heisenlab::norms
