#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "heisenlab/convolution.hpp"
#include "heisenlab/grid.hpp"
#include "heisenlab/group.hpp"

namespace heisenlab::riesz {

using Complex = heisenlab::Complex;

// Lanczos approximation of the Gamma function for complex arguments,
// reflection formula on the left half-plane. Poles at the nonpositive
// integers are rejected.
Complex gamma_fn(Complex z);

struct ComplexOrder {
    Complex z;
    explicit ComplexOrder(Complex z_) : z(z_) {}
    bool function_regime() const { return z.real() > 0.0; }
};

struct EndpointParameter {
    double b = 0.0;
};

// I_z(s) = 2^{-z/2} / Gamma(z/2) |s|^{z-1}, valid in the function regime.
Complex riesz_kernel(const ComplexOrder& z, double s);

// Normalization constant 2^{-z/2} / Gamma(z/2).
Complex riesz_normalizer(Complex z);

// Kernel of the sup-norm endpoint: I_{1+ib}(t - phi(x)). Its modulus is a
// constant independent of (x,t).
Complex endpoint_sup_kernel(const SymmetricCoefficientMatrix& a, EndpointParameter b,
                            std::span<const double> x, double t);
double endpoint_modulus(EndpointParameter b);

struct CalibrationSample {
    Complex z;
    double xi;
    Complex ratio;  // FT of truncated I_z at xi, divided by I_{1-z}(xi)
};

struct CalibrationReport {
    Complex c = 0.0;            // fitted constant (mean ratio at the larger R)
    double rel_spread = 0.0;    // max |ratio - c| / |c| across samples
    double imag_rel = 0.0;      // |Im c| / |c|
    double truncation_check = 0.0;  // max relative shift between the two R values
    bool well_conditioned = false;
    std::vector<CalibrationSample> samples;
};

struct CalibrationOptions {
    std::vector<double> frequencies = {0.5, 1.0, 2.0};
    double radius_small = 20.0;
    double radius_large = 40.0;
    double spacing = 0.005;
    double inner_cut = 0.5;
    double condition_threshold = 0.05;
};

// Numerically fits the reflection constant in FT(I_z) = c I_{1-z} on the
// strip 0 < Re z < 1: smooth truncation at two radii, exact power-series
// integration across the |s|^{z-1} singularity.
CalibrationReport calibrate_c(const std::vector<Complex>& z_samples,
                              const CalibrationOptions& opts = {});

// Quadrature of integral I_z(s) testfn(s) ds on [-S, S] with the closed-form
// singular cell; the z -> 0 limit recovers testfn(0).
Complex apply_to_test_function(Complex z, const std::function<double(double)>& testfn, double S,
                               int cells);

struct EndpointConstancyReport {
    std::vector<double> lambdas;
    std::vector<double> q;      // |lambda|^n ||f^lambda x_lambda e||_2 / ||f^lambda||_2
    double predicted = 0.0;     // (2pi)^n |det(2A+J)|^{-1/2}
    double spread = 0.0;        // max |q - mean| / mean
    double max_dev_from_predicted = 0.0;
};

// The L2 endpoint cancellation: the |lambda|^{-n} of the twisted norm
// identity is exactly offset by the |lambda|^n of the reflected kernel, so q
// is constant in lambda and equal to the predicted value.
EndpointConstancyReport l2_endpoint_constancy(const GridFunction& f,
                                              const SymmetricCoefficientMatrix& a,
                                              const std::vector<double>& lambdas);

}  // namespace heisenlab::riesz
