#pragma once

#include <stdexcept>
#include <vector>

#include "heisenlab/linalg.hpp"

namespace heisenlab {

// Half the spatial dimension: points live in R^{2n} x R.
struct HeisenbergDim {
    int n;
    explicit HeisenbergDim(int n_) : n(n_) {
        if (n < 1) throw std::invalid_argument("HeisenbergDim: n must be >= 1");
    }
    int spatial() const { return 2 * n; }
    int ambient() const { return 2 * n + 1; }
};

struct GroupElement {
    std::vector<double> x;  // length 2n
    double t = 0.0;

    GroupElement() = default;
    GroupElement(std::vector<double> x_, double t_) : x(std::move(x_)), t(t_) {}
};

struct DilationFactor {
    double delta;
    explicit DilationFactor(double d) : delta(d) {
        if (!(d > 0.0)) throw std::invalid_argument("DilationFactor: delta must be > 0");
    }
};

// Real symmetric coefficient matrix of the quadratic form. Construction
// symmetrizes as (A + A^t)/2, which leaves y^t A y unchanged.
class SymmetricCoefficientMatrix {
public:
    explicit SymmetricCoefficientMatrix(const Matrix& a) {
        if (a.rows() != a.cols() || a.rows() == 0 || a.rows() % 2 != 0)
            throw std::invalid_argument("SymmetricCoefficientMatrix: need 2n x 2n");
        m_ = Matrix(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                m_(i, j) = 0.5 * (a(i, j) + a(j, i));
    }

    static SymmetricCoefficientMatrix identity(HeisenbergDim dim) {
        return SymmetricCoefficientMatrix(Matrix::identity(2 * dim.n));
    }
    static SymmetricCoefficientMatrix zero(HeisenbergDim dim) {
        return SymmetricCoefficientMatrix(Matrix(2 * dim.n, 2 * dim.n));
    }
    static SymmetricCoefficientMatrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return SymmetricCoefficientMatrix(m);
    }

    const Matrix& matrix() const { return m_; }
    int n() const { return static_cast<int>(m_.rows()) / 2; }

private:
    Matrix m_;
};

// The standard skew-symmetric block matrix [[0, I],[-I, 0]].
Matrix make_j(HeisenbergDim dim);

// x^t J y
double symplectic(const std::vector<double>& x, const std::vector<double>& y);

// (x+y, t+s+<x,y>)
GroupElement group_mul(const GroupElement& a, const GroupElement& b);

// (-x, -t)
GroupElement group_inv(const GroupElement& g);

// (delta x, delta^2 t)
GroupElement dilate(DilationFactor delta, const GroupElement& g);

// phi(y) = y^t A y
double phi(const SymmetricCoefficientMatrix& a, const std::vector<double>& y);

enum class PerturbationSign { plus, minus };

// det(2A + J) or det(2A - J), via partial-pivoting elimination.
double det_perturbed(const SymmetricCoefficientMatrix& a, PerturbationSign sign);

// Closed-form det(A +- J) for diagonal A: the product of
// (a_{ii} a_{(n+i)(n+i)} + 1) over i = 1..n.
double lemma1_diagonal(const Matrix& a);

// |det(2A + J)| > tol
bool is_nondegenerate(const SymmetricCoefficientMatrix& a, double tol = 1e-9);

}  // namespace heisenlab
