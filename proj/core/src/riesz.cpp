#include "heisenlab/riesz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heisenlab/measures.hpp"

namespace heisenlab::riesz {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_nonpositive_integer(Complex z) {
    if (z.imag() != 0.0) return false;
    const double r = z.real();
    return r <= 0.0 && std::abs(r - std::round(r)) < 1e-14;
}

}  // namespace

Complex gamma_fn(Complex z) {
    if (near_nonpositive_integer(z)) throw std::domain_error("gamma_fn: pole");
    // Lanczos, g = 7, 9 terms.
    static const double coeff[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        return kPi / (std::sin(kPi * z) * gamma_fn(1.0 - z));
    }
    const Complex zm1 = z - 1.0;
    Complex x = coeff[0];
    for (int i = 1; i < 9; ++i) x += coeff[i] / (zm1 + static_cast<double>(i));
    const Complex t = zm1 + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * x;
}

Complex riesz_normalizer(Complex z) {
    return std::exp(-0.5 * z * std::log(2.0)) / gamma_fn(0.5 * z);
}

Complex riesz_kernel(const ComplexOrder& order, double s) {
    if (!order.function_regime())
        throw std::domain_error("riesz_kernel: Re(z) must be positive (function regime)");
    if (s == 0.0) throw std::invalid_argument("riesz_kernel: s = 0");
    const Complex z = order.z;
    return riesz_normalizer(z) * std::exp((z - 1.0) * std::log(std::abs(s)));
}

Complex endpoint_sup_kernel(const SymmetricCoefficientMatrix& a, EndpointParameter b,
                            std::span<const double> x, double t) {
    const double s = t - phi(a, std::vector<double>(x.begin(), x.end()));
    if (s == 0.0)
        throw std::invalid_argument("endpoint_sup_kernel: point lies on the graph");
    return riesz_kernel(ComplexOrder(Complex(1.0, b.b)), s);
}

double endpoint_modulus(EndpointParameter b) {
    return std::abs(riesz_normalizer(Complex(1.0, b.b)));
}

namespace {

// FT of I_z truncated by eta(s/R), at frequency xi > 0. The singular part
// |s| <= s0 integrates by the even Taylor series of exp(-i xi s); the tail is
// a midpoint rule on the smooth integrand.
Complex truncated_ft(Complex z, double xi, double radius, double spacing, double s0) {
    // inner: 2 sum_{m even} ((-i xi)^m / m!) s0^{z+m} / (z+m)
    Complex inner(0.0, 0.0);
    Complex term_pow(1.0, 0.0);  // (-i xi s0)^m / m!
    const Complex mixs0 = Complex(0.0, -xi) * s0;
    const Complex s0z = std::exp(z * std::log(s0));
    for (int m = 0; m < 400; ++m) {
        if (m % 2 == 0) {
            const Complex term = term_pow * s0z / (z + static_cast<double>(m));
            inner += term;
            if (std::abs(term) < 1e-18 * std::abs(inner) && m > 8) break;
        }
        term_pow *= mixs0 / static_cast<double>(m + 1);
    }
    inner *= 2.0;

    // outer: 2 integral_{s0}^{2R} s^{Re z -1 + i Im z} eta(s/R) cos(xi s) ds
    const CutoffSpec cutoff;
    const double hi = 2.0 * radius;
    const auto cells = static_cast<std::int64_t>(std::ceil((hi - s0) / spacing));
    const double h = (hi - s0) / static_cast<double>(cells);
    std::vector<Complex> vals(cells);
    for (std::int64_t i = 0; i < cells; ++i) {
        const double s = s0 + (static_cast<double>(i) + 0.5) * h;
        const double cut = eta_radial(cutoff, s / radius);
        if (cut == 0.0) {
            vals[i] = 0.0;
            continue;
        }
        vals[i] = std::exp((z - 1.0) * std::log(s)) * (cut * std::cos(xi * s));
    }
    const Complex outer = 2.0 * h * pairwise_sum(vals);
    return riesz_normalizer(z) * (inner + outer);
}

}  // namespace

CalibrationReport calibrate_c(const std::vector<Complex>& z_samples,
                              const CalibrationOptions& opts) {
    CalibrationReport rep;
    if (z_samples.empty()) throw std::invalid_argument("calibrate_c: no samples");
    for (Complex z : z_samples)
        if (!(z.real() > 0.0 && z.real() < 1.0))
            throw std::invalid_argument("calibrate_c: need 0 < Re z < 1");

    std::vector<Complex> ratios_small;
    for (Complex z : z_samples) {
        for (double xi : opts.frequencies) {
            const Complex target = riesz_kernel(ComplexOrder(1.0 - z), xi);
            const Complex ft_large =
                truncated_ft(z, xi, opts.radius_large, opts.spacing, opts.inner_cut);
            const Complex ft_small =
                truncated_ft(z, xi, opts.radius_small, opts.spacing, opts.inner_cut);
            rep.samples.push_back({z, xi, ft_large / target});
            ratios_small.push_back(ft_small / target);
        }
    }
    Complex mean(0.0, 0.0);
    for (const auto& s : rep.samples) mean += s.ratio;
    mean /= static_cast<double>(rep.samples.size());
    rep.c = mean;
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        rep.rel_spread =
            std::max(rep.rel_spread, std::abs(rep.samples[i].ratio - mean) / std::abs(mean));
        rep.truncation_check = std::max(
            rep.truncation_check, std::abs(rep.samples[i].ratio - ratios_small[i]) / std::abs(mean));
    }
    rep.imag_rel = std::abs(mean.imag()) / std::abs(mean);
    rep.well_conditioned = rep.rel_spread <= opts.condition_threshold &&
                           rep.truncation_check <= opts.condition_threshold;
    return rep;
}

Complex apply_to_test_function(Complex z, const std::function<double(double)>& testfn, double S,
                               int cells) {
    if (cells % 2 == 0) ++cells;  // keep one cell centered on the singularity
    const double h = 2.0 * S / cells;
    const int half = cells / 2;
    Complex acc(0.0, 0.0);
    for (int k = -half; k <= half; ++k) {
        const double s = k * h;
        if (k == 0) continue;
        acc += std::exp((z - 1.0) * std::log(std::abs(s))) * (testfn(s) * h);
    }
    // singular cell [-h/2, h/2]: closed form 2 (h/2)^z / z against testfn(0)
    acc += 2.0 * std::exp(z * std::log(0.5 * h)) / z * testfn(0.0);
    return riesz_normalizer(z) * acc;
}

EndpointConstancyReport l2_endpoint_constancy(const GridFunction& f,
                                              const SymmetricCoefficientMatrix& a,
                                              const std::vector<double>& lambdas) {
    if (!is_nondegenerate(a))
        throw std::domain_error("l2_endpoint_constancy: det(2A+J) vanishes");
    const int n = f.spec().spatial.n;
    EndpointConstancyReport rep;
    rep.predicted = std::pow(2.0 * kPi, n) /
                    std::sqrt(std::abs(det_perturbed(a, PerturbationSign::plus)));
    for (double lambda : lambdas) {
        if (lambda == 0.0) throw std::invalid_argument("l2_endpoint_constancy: lambda = 0");
        const SliceFunction slice = partial_fourier_t(f, lambda);
        const double denom = lp_norm(slice, 2.0);
        if (denom == 0.0)
            throw std::domain_error("l2_endpoint_constancy: f^lambda vanishes");
        const SliceFunction conv = chirp_twisted_convolve(slice, a, lambda);
        rep.lambdas.push_back(lambda);
        rep.q.push_back(std::pow(std::abs(lambda), n) * lp_norm(conv, 2.0) / denom);
    }
    double mean = 0.0;
    for (double q : rep.q) mean += q;
    mean /= static_cast<double>(rep.q.size());
    for (double q : rep.q) {
        rep.spread = std::max(rep.spread, std::abs(q - mean) / mean);
        rep.max_dev_from_predicted =
            std::max(rep.max_dev_from_predicted, std::abs(q - rep.predicted) / rep.predicted);
    }
    return rep;
}

}  // namespace heisenlab::riesz
