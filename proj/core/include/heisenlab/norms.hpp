#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heisenlab/convolution.hpp"
#include "heisenlab/exponents.hpp"
#include "heisenlab/grid.hpp"
#include "heisenlab/measures.hpp"

namespace heisenlab::norms {

// An abstract bounded operator on a weighted l^p space: forward/adjoint act
// on flat complex vectors, cell_volume fixes the quadrature weight of every
// norm. adjoint must be the exact conjugate transpose of forward.
struct OperatorHandle {
    std::function<std::vector<Complex>(const std::vector<Complex>&)> forward;
    std::function<std::vector<Complex>(const std::vector<Complex>&)> adjoint;
    std::int64_t size = 0;
    double cell_volume = 1.0;
    std::string descriptor;
};

// Convolution by the measure; adjoint is convolution by the reflected one.
OperatorHandle make_convolution_operator(const GridSpec& spec, const DiscreteMeasure& m);

// Dense matrix operator (tests and small oracles).
OperatorHandle make_matrix_operator(const Matrix& m);

struct PowerIterationOptions {
    int seeds = 3;
    int max_iter = 30;
    double tol = 2e-3;
    std::uint64_t rng_seed = 1;
};

struct ResolutionEntry {
    double h = 0.0;
    double estimate = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Nonlinear power iteration for ||T||_{p->q} through the duality maps
// J_r(g) = |g|^{r-1} sign(g):  f <- normalize_p(J_{p'}(T*(J_q(T f)))).
// Requires 1 < p, q < infinity. Returns the largest ratio ||Tf||_q / ||f||_p
// seen across seeds; h is left to the caller.
ResolutionEntry estimate_norm_pq(const OperatorHandle& op, double p, double q,
                                 const PowerIterationOptions& opts);

// Total mass: exact upper bound for the L1 -> L1 operator norm.
double bound_11(const DiscreteMeasure& m);

enum class Classification { bounded, unbounded, inconclusive };
std::string to_string(Classification c);

// Declared slope thresholds of the growth classification.
inline constexpr double kBoundedSlope = 0.1;
inline constexpr double kUnboundedSlope = 0.4;

struct NormEstimate {
    double p = 0.0, q = 0.0;
    std::vector<ResolutionEntry> per_resolution;
    double growth_slope = 0.0;
    Classification classification = Classification::inconclusive;
};

// Least-squares slope of log(estimate) against log(1/h) over >= 3
// resolutions; bounded below kBoundedSlope, unbounded above kUnboundedSlope.
// A non-converged entry makes the result inconclusive.
NormEstimate refine_and_classify(const std::vector<std::pair<double, OperatorHandle>>& levels,
                                 double p, double q, const PowerIterationOptions& opts);

struct ScanSample {
    exponents::ExponentPoint point;
    NormEstimate estimate;
    bool theory_member = false;
    bool agrees = false;
};

struct ScanResult {
    std::vector<ScanSample> samples;
    int agreement_count = 0;
    double agreement_rate = 0.0;
};

struct ScanSettings {
    std::vector<int> resolutions = {8, 16, 32};  // per-axis counts, each halving h
    double spatial_halfwidth = 2.0;
    double t_halfwidth = 4.0;
    double support_radius = 2.0;  // forwarded to the measure cutoff box
    PowerIterationOptions power;
};

// Classifies each exponent point for the operator of convolution by
// nu_gamma and compares with the necessary-condition region.
ScanResult scan_typeset(const exponents::RegionSpec& region, const SymmetricCoefficientMatrix& a,
                        const std::vector<exponents::ExponentPoint>& points,
                        const ScanSettings& settings);

}  // namespace heisenlab::norms
