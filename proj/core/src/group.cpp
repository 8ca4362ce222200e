#include "heisenlab/group.hpp"

#include <cmath>

namespace heisenlab {

std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& x) {
    if (x.size() != m.cols()) throw std::invalid_argument("mat_vec: size mismatch");
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double determinant(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square matrix required");
    const std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m(piv, j), m(k, j));
            det = -det;
        }
        det *= m(k, k);
        const double inv = 1.0 / m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m(i, k) * inv;
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

double spectral_norm_symmetric(const Matrix& a) {
    // ||A v_k|| -> max |eigenvalue| for symmetric A and generic start.
    const std::size_t n = a.rows();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.013 * double(i + 1);
    double lam = 0.0;
    for (int it = 0; it < 300; ++it) {
        std::vector<double> w = mat_vec(a, v);
        lam = norm2(w);
        if (lam == 0.0) return 0.0;
        for (auto& c : w) c /= lam;
        v = std::move(w);
    }
    return lam;
}

Matrix make_j(HeisenbergDim dim) {
    const int n = dim.n;
    Matrix j(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return j;
}

double symplectic(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() % 2 != 0)
        throw std::invalid_argument("symplectic: vectors must share even length");
    const std::size_t n = x.size() / 2;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[n + i] - x[n + i] * y[i];
    return s;
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
    if (a.x.size() != b.x.size()) throw std::invalid_argument("group_mul: dimension mismatch");
    GroupElement r;
    r.x.resize(a.x.size());
    for (std::size_t i = 0; i < a.x.size(); ++i) r.x[i] = a.x[i] + b.x[i];
    r.t = a.t + b.t + symplectic(a.x, b.x);
    return r;
}

GroupElement group_inv(const GroupElement& g) {
    GroupElement r = g;
    for (auto& c : r.x) c = -c;
    r.t = -g.t;
    return r;
}

GroupElement dilate(DilationFactor delta, const GroupElement& g) {
    GroupElement r = g;
    for (auto& c : r.x) c *= delta.delta;
    r.t = g.t * delta.delta * delta.delta;
    return r;
}

double phi(const SymmetricCoefficientMatrix& a, const std::vector<double>& y) {
    if (y.size() != a.matrix().rows()) throw std::invalid_argument("phi: dimension mismatch");
    const Matrix& m = a.matrix();
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) row += m(i, j) * y[j];
        s += y[i] * row;
    }
    return s;
}

double det_perturbed(const SymmetricCoefficientMatrix& a, PerturbationSign sign) {
    const int n = a.n();
    Matrix m = a.matrix();
    m *= 2.0;
    const double sg = (sign == PerturbationSign::plus) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
        m(i, n + i) += sg;
        m(n + i, i) -= sg;
    }
    return determinant(m);
}

double lemma1_diagonal(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0)
        throw std::invalid_argument("lemma1_diagonal: need 2n x 2n");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j && a(i, j) != 0.0)
                throw std::invalid_argument("lemma1_diagonal: matrix must be diagonal");
    const std::size_t n = a.rows() / 2;
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) p *= a(i, i) * a(n + i, n + i) + 1.0;
    return p;
}

bool is_nondegenerate(const SymmetricCoefficientMatrix& a, double tol) {
    if (tol < 0.0) throw std::invalid_argument("is_nondegenerate: tol must be >= 0");
    return std::abs(det_perturbed(a, PerturbationSign::plus)) > tol;
}

}  // namespace heisenlab
