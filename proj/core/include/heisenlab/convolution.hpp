#pragma once

#include <limits>
#include <span>
#include <vector>

#include "heisenlab/grid.hpp"
#include "heisenlab/measures.hpp"

namespace heisenlab {

// Right convolution by a discrete measure:
//   (f * m)(x,t) = sum_a w_a f~(x - y_a, t - s_a - x^t J y_a),
// with f~ the multilinear interpolant of f, zero outside the box. The
// temporal interpolation offset is evaluated with the midpoint phase
// (x + u)^t J y_a / 2 at each spatial stencil corner u; since y^t J y = 0
// this agrees with x^t J y at the interpolation point, reproduces exact
// shifts at aligned arguments, and makes convolution by the reflected
// measure the exact transpose of the forward map.
GridFunction convolve_measure(const GridFunction& f, const DiscreteMeasure& m);

// e_{lambda A}(x) = exp(i lambda x^t A x) sampled on the spatial grid.
SliceFunction oscillatory_factor(const SymmetricCoefficientMatrix& a, double lambda,
                                 const SpatialGrid& grid);

// (f x_lambda g)(x) = h^{2n} sum_y f~(x-y) g(y) exp(-i lambda x^t J y).
SliceFunction twisted_convolve(const SliceFunction& f, const SliceFunction& g, double lambda);

// f x_lambda e_{lambda A} with the chirp evaluated in closed form over the
// whole support of f~(x - .). Backbone of the identity checks: the sampled-g
// quadrature would truncate the unimodular chirp at the box edge and leave a
// resolution-independent boundary term.
SliceFunction chirp_twisted_convolve(const SliceFunction& f, const SymmetricCoefficientMatrix& a,
                                     double lambda);

// f^lambda(x) = integral of f(x,t) exp(-i lambda t) dt (midpoint rule in t).
SliceFunction partial_fourier_t(const GridFunction& f, double lambda);

// Direct quadrature of the 2n-dimensional Fourier integral at one frequency.
Complex fourier_spatial(const SliceFunction& f, std::span<const double> xi);

constexpr double p_infinity = std::numeric_limits<double>::infinity();

double lp_norm(const GridFunction& f, double p);
double lp_norm(const SliceFunction& f, double p);

// L2 pairing <f, g> = cellvol * sum conj(f) g.
Complex inner_product(const GridFunction& f, const GridFunction& g);
Complex inner_product(const SliceFunction& f, const SliceFunction& g);

// f_delta(x,t) = f(delta x, delta^2 t) sampled on the target grid. When the
// target spacings satisfy h_src = delta h_tgt and ht_src = delta^2 ht_tgt
// the resampling is an exact index map; otherwise multilinear interpolation.
GridFunction dilate_function(const GridFunction& f, DilationFactor delta, const GridSpec& target);

struct PointwiseIdentityReport {
    double max_rel_residual = 0.0;
    std::vector<Complex> lhs;
    std::vector<Complex> rhs;
};

// Checks (f x_lambda e_{lambda A})(x) = e_{lambda A}(x) g^(lambda (2A+J) x),
// g = e_{lambda A} f, both sides by independent quadratures, at the given
// sample points.
PointwiseIdentityReport pointwise_twisted_identity_residual(
    const SliceFunction& f, const SymmetricCoefficientMatrix& a, double lambda,
    const std::vector<std::vector<double>>& sample_points);

struct TwistedNormReport {
    double lhs = 0.0;      // || f x_lambda e_{lambda A} ||_2, direct quadrature
    double rhs = 0.0;      // (2pi)^n |lambda|^{-n} |det(2A+J)|^{-1/2} ||f||_2
    double rel_err = 0.0;
};

TwistedNormReport twisted_identity_residual(const SliceFunction& f,
                                            const SymmetricCoefficientMatrix& a, double lambda);

}  // namespace heisenlab
