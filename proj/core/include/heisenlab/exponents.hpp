#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace heisenlab::exponents {

using Rational = boost::multiprecision::cpp_rational;

// Parses "a/b", "a", or a decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

// A point (1/p, 1/q) of the unit square, exact.
struct ExponentPoint {
    Rational inv_p;
    Rational inv_q;

    ExponentPoint(Rational p, Rational q) : inv_p(std::move(p)), inv_q(std::move(q)) {
        if (inv_p < 0 || inv_p > 1 || inv_q < 0 || inv_q > 1)
            throw std::invalid_argument("ExponentPoint: coordinates must lie in [0,1]");
    }

    bool operator==(const ExponentPoint& o) const {
        return inv_p == o.inv_p && inv_q == o.inv_q;
    }
};

struct RegionSpec {
    int n;
    Rational gamma;

    RegionSpec(int n_, Rational g) : n(n_), gamma(std::move(g)) {
        if (n < 1) throw std::invalid_argument("RegionSpec: n must be >= 1");
        if (gamma < 0 || gamma >= 2 * n)
            throw std::invalid_argument("RegionSpec: gamma must lie in [0, 2n)");
    }
};

// Necessary conditions for membership in the type set, evaluated exactly.
// With strict=false the closed region; with strict=true the interior of the
// same constraint system (every inequality strict, including 1/q < 1/p on
// the diagonal edge).
bool necessary_region(const RegionSpec& r, const ExponentPoint& pt, bool strict = false);

// The intersection vertex of the two lower constraint lines.
ExponentPoint vertex_D(const RegionSpec& r);

// Reflection of D across the axis 1/q = 1 - 1/p.
ExponentPoint vertex_Dprime(const RegionSpec& r);
ExponentPoint reflect_dual(const ExponentPoint& pt);

// Convex combination (1-theta) P0 + theta P1.
ExponentPoint riesz_interpolate(const ExponentPoint& p0, const ExponentPoint& p1,
                                const Rational& theta);

// (2n - gamma) / 2n
Rational theta_star(const RegionSpec& r);

// k gamma (1-theta) - k (2n-gamma) theta, the exponent balanced by theta_star.
Rational annulus_balance(const RegionSpec& r, long k, const Rational& theta);

// 1/q == 1/p - 2n/(2n+2), exactly.
bool scaling_line(int n, const ExponentPoint& pt);

// Dyadic exponents of the per-annulus operator bounds:
// first = -k(2n-gamma) for the (1,1) bound, second = +k gamma at the vertex pair.
std::pair<Rational, Rational> predicted_annulus_exponents(const RegionSpec& r, long k);

}  // namespace heisenlab::exponents
