#include "heisenlab/exponents.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace heisenlab::exponents {

using boost::multiprecision::cpp_int;

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        cpp_int num(s.substr(0, slash));
        cpp_int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(cpp_int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    // "-0.25" -> -25 / 100
    cpp_int num(digits);
    cpp_int den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

bool necessary_region(const RegionSpec& r, const ExponentPoint& pt, bool strict) {
    const Rational& x = pt.inv_p;  // 1/p
    const Rational& y = pt.inv_q;  // 1/q
    const int n = r.n;
    const Rational lhs1 = x - y;                                   // 1/q <= 1/p
    const Rational lhs2 = y - ((2 * n + 1) * x - 2 * n);           // 1/q >= (2n+1)/p - 2n
    const Rational lhs3 = y - x / (2 * n + 1);                     // 1/q >= 1/((2n+1)p)
    const Rational lhs4 = y - (x - (2 * n - r.gamma) / Rational(2 * n + 2));
    if (strict) return lhs1 > 0 && lhs2 > 0 && lhs3 > 0 && lhs4 > 0;
    return lhs1 >= 0 && lhs2 >= 0 && lhs3 >= 0 && lhs4 >= 0;
}

ExponentPoint vertex_D(const RegionSpec& r) {
    const int n = r.n;
    const Rational den = Rational(2 * n) * (2 * n + 2);
    return ExponentPoint((4 * n * n + 2 * n + r.gamma) / den,
                         (2 * n + (2 * n + 1) * r.gamma) / den);
}

ExponentPoint reflect_dual(const ExponentPoint& pt) {
    return ExponentPoint(1 - pt.inv_q, 1 - pt.inv_p);
}

ExponentPoint vertex_Dprime(const RegionSpec& r) { return reflect_dual(vertex_D(r)); }

ExponentPoint riesz_interpolate(const ExponentPoint& p0, const ExponentPoint& p1,
                                const Rational& theta) {
    if (theta < 0 || theta > 1)
        throw std::invalid_argument("riesz_interpolate: theta must lie in [0,1]");
    const Rational omt = 1 - theta;
    return ExponentPoint(omt * p0.inv_p + theta * p1.inv_p,
                         omt * p0.inv_q + theta * p1.inv_q);
}

Rational theta_star(const RegionSpec& r) {
    return Rational(2 * r.n - r.gamma) / (2 * r.n);
}

Rational annulus_balance(const RegionSpec& r, long k, const Rational& theta) {
    return k * r.gamma * (1 - theta) - k * (2 * r.n - r.gamma) * theta;
}

bool scaling_line(int n, const ExponentPoint& pt) {
    return pt.inv_q == pt.inv_p - Rational(2 * n, 2 * n + 2);
}

std::pair<Rational, Rational> predicted_annulus_exponents(const RegionSpec& r, long k) {
    return {-k * (2 * r.n - r.gamma), k * r.gamma};
}

}  // namespace heisenlab::exponents
