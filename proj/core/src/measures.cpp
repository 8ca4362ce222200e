#include "heisenlab/measures.hpp"

#include <cmath>

namespace heisenlab {

namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

double radius(std::span<const double> y) {
    double s = 0.0;
    for (double c : y) s += c * c;
    return std::sqrt(s);
}

// Enumerates the spatial nodes, handing each (index vector, coordinates, |y|)
// to the callback.
template <typename F>
void for_each_node(const SpatialGrid& grid, F&& f) {
    const int axes = grid.axes();
    std::vector<int> idx(axes, 0);
    std::vector<double> y(axes, 0.0);
    const std::int64_t total = grid.size();
    for (std::int64_t s = 0; s < total; ++s) {
        spatial_unflat(grid, s, idx);
        for (int a = 0; a < axes; ++a) y[a] = grid.node(idx[a]);
        f(idx, y, radius(y));
    }
}

bool is_origin_cell(std::span<const int> idx, int points) {
    for (int v : idx)
        if (v != points / 2) return false;
    return true;
}

}  // namespace

double eta_radial(const CutoffSpec& spec, double r) {
    if (r <= spec.inner_radius) return 1.0;
    if (r >= spec.outer_radius) return 0.0;
    const double a = bump(spec.outer_radius - r);
    const double b = bump(r - spec.inner_radius);
    return a / (a + b);
}

double eta(const CutoffSpec& spec, std::span<const double> y) {
    return eta_radial(spec, radius(y));
}

double DiscreteMeasure::total_mass() const {
    std::vector<double> w(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) w[i] = atoms[i].w;
    return pairwise_sum(w);
}

DiscreteMeasure discretize_mu(const SymmetricCoefficientMatrix& a, const SpatialGrid& grid,
                              double support_radius) {
    if (a.n() != grid.n) throw std::invalid_argument("discretize_mu: dimension mismatch");
    if (support_radius > grid.halfwidth)
        throw std::invalid_argument("discretize_mu: support exceeds the grid box");
    DiscreteMeasure m;
    m.n = grid.n;
    m.description = "mu_A";
    const double w = grid.cell_volume();
    for_each_node(grid, [&](std::span<const int>, const std::vector<double>& y, double r) {
        if (r <= support_radius) m.atoms.push_back({y, phi(a, y), w});
    });
    return m;
}

DiscreteMeasure discretize_nu(const SymmetricCoefficientMatrix& a, const FractionalOrder& gamma,
                              const SpatialGrid& grid, const CutoffSpec& spec) {
    if (a.n() != grid.n) throw std::invalid_argument("discretize_nu: dimension mismatch");
    if (grid.halfwidth < spec.outer_radius)
        throw std::invalid_argument("discretize_nu: grid box must contain the cutoff support");
    DiscreteMeasure m;
    m.n = grid.n;
    m.description = "nu_gamma";
    const double cell = grid.cell_volume();
    const double g = gamma.gamma;
    for_each_node(grid, [&](std::span<const int> idx, const std::vector<double>& y, double r) {
        if (g > 0.0 && is_origin_cell(idx, grid.points)) return;
        const double cut = eta_radial(spec, r);
        if (cut == 0.0) return;
        const double w = cut * (g > 0.0 ? std::pow(r, -g) : 1.0) * cell;
        if (w > 0.0) m.atoms.push_back({y, phi(a, y), w});
    });
    return m;
}

namespace {

DiscreteMeasure nu_restricted(const SymmetricCoefficientMatrix& a, const FractionalOrder& gamma,
                              const SpatialGrid& grid, const CutoffSpec& spec, double r_lo,
                              double r_hi, const std::string& tag) {
    DiscreteMeasure full = discretize_nu(a, gamma, grid, spec);
    DiscreteMeasure m;
    m.n = full.n;
    m.description = tag;
    for (auto& atom : full.atoms) {
        const double r = radius(atom.y);
        if (r > r_lo && r <= r_hi) m.atoms.push_back(std::move(atom));
    }
    return m;
}

}  // namespace

DiscreteMeasure annulus_measure(const SymmetricCoefficientMatrix& a, const FractionalOrder& gamma,
                                int k, const SpatialGrid& grid, const CutoffSpec& spec) {
    if (k < 0) throw std::invalid_argument("annulus_measure: k must be >= 0");
    const double r_lo = std::ldexp(1.0, -k);
    if (r_lo < 2.0 * grid.spacing())
        throw std::invalid_argument("annulus_measure: annulus unresolvable, refine the grid");
    return nu_restricted(a, gamma, grid, spec, r_lo, 2.0 * r_lo,
                         "nu_gamma_k:" + std::to_string(k));
}

DiscreteMeasure inner_remainder(const SymmetricCoefficientMatrix& a, const FractionalOrder& gamma,
                                int k_max, const SpatialGrid& grid, const CutoffSpec& spec) {
    return nu_restricted(a, gamma, grid, spec, -1.0, std::ldexp(1.0, -k_max),
                         "nu_gamma_rem:" + std::to_string(k_max));
}

double surface_density(const SymmetricCoefficientMatrix& a, std::span<const double> y) {
    std::vector<double> grad = mat_vec(a.matrix(), std::vector<double>(y.begin(), y.end()));
    double s = 0.0;
    for (double g : grad) s += 4.0 * g * g;  // grad phi = 2 A y
    return std::sqrt(1.0 + s);
}

DiscreteMeasure reflect_measure(const DiscreteMeasure& m) {
    DiscreteMeasure r;
    r.n = m.n;
    r.description = "reflected:" + m.description;
    r.atoms.reserve(m.atoms.size());
    for (const Atom& atom : m.atoms) {
        Atom b = atom;
        for (double& c : b.y) c = -c;
        b.s = -atom.s;
        r.atoms.push_back(std::move(b));
    }
    return r;
}

}  // namespace heisenlab
