#pragma once

#include <span>
#include <string>
#include <vector>

#include "heisenlab/grid.hpp"
#include "heisenlab/group.hpp"

namespace heisenlab {

// Smooth radial cutoff: 1 on |y| <= inner_radius, 0 on |y| >= outer_radius.
// The transition is the standard bump quotient g(2-r) / (g(2-r) + g(r-1))
// with g(u) = exp(-1/u) for u > 0, so the profile is C^infinity.
struct CutoffSpec {
    double inner_radius = 1.0;
    double outer_radius = 2.0;
};

double eta(const CutoffSpec& spec, std::span<const double> y);
double eta_radial(const CutoffSpec& spec, double r);

struct FractionalOrder {
    double gamma;
    FractionalOrder(double g, int n) : gamma(g) {
        if (!(g >= 0.0) || !(g < 2.0 * n))
            throw std::invalid_argument("FractionalOrder: gamma must lie in [0, 2n)");
    }
};

struct Atom {
    std::vector<double> y;  // length 2n
    double s;               // = phi(A, y) for graph measures
    double w;               // nonnegative weight
};

struct DiscreteMeasure {
    int n = 1;
    std::string description;
    std::vector<Atom> atoms;

    double total_mass() const;
};

// Midpoint discretization of the graph measure: one atom per spatial node
// with |y| <= support_radius, weight h^{2n}.
DiscreteMeasure discretize_mu(const SymmetricCoefficientMatrix& a, const SpatialGrid& grid,
                              double support_radius);

// Fractional version with the cutoff and |y|^{-gamma} density. For gamma > 0
// the half-open cell containing the origin (node at +h/2 in every axis) is
// dropped; its mass is O(h^{2n-gamma}).
DiscreteMeasure discretize_nu(const SymmetricCoefficientMatrix& a, const FractionalOrder& gamma,
                              const SpatialGrid& grid, const CutoffSpec& spec);

// Restriction of discretize_nu to the dyadic annulus 2^{-k} < |y| <= 2^{-k+1}.
// Requires 2^{-k} >= 2 h so the shell is resolvable.
DiscreteMeasure annulus_measure(const SymmetricCoefficientMatrix& a, const FractionalOrder& gamma,
                                int k, const SpatialGrid& grid, const CutoffSpec& spec);

// Atoms of discretize_nu with |y| <= 2^{-k_max}: the leftover inner ball of
// the dyadic decomposition, so annuli 0..k_max plus this remainder partition
// the atom set exactly.
DiscreteMeasure inner_remainder(const SymmetricCoefficientMatrix& a, const FractionalOrder& gamma,
                                int k_max, const SpatialGrid& grid, const CutoffSpec& spec);

// sqrt(1 + |grad phi|^2) = sqrt(1 + |2Ay|^2), the density of the surface
// measure relative to the projected Lebesgue measure.
double surface_density(const SymmetricCoefficientMatrix& a, std::span<const double> y);

// Pushforward under group inversion: (y, s, w) -> (-y, -s, w).
DiscreteMeasure reflect_measure(const DiscreteMeasure& m);

}  // namespace heisenlab
