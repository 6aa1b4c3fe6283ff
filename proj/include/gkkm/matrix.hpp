#ifndef GKKM_MATRIX_HPP
#define GKKM_MATRIX_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gkkm {

/// Small dense real matrix (row-major), sized for representation dimensions
/// of a few dozen.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static Matrix identity(int dim) {
        Matrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix transpose() const {
        Matrix t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double max_abs() const {
        double m = 0;
        for (double v : a) m = std::max(m, std::fabs(v));
        return m;
    }
};

inline void check_dims(const Matrix& x, const Matrix& y) {
    if (x.n != y.n) throw std::invalid_argument("matrix dimension mismatch");
}

inline Matrix operator+(const Matrix& x, const Matrix& y) {
    check_dims(x, y);
    Matrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

inline Matrix operator-(const Matrix& x, const Matrix& y) {
    check_dims(x, y);
    Matrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

inline Matrix operator*(double s, const Matrix& x) {
    Matrix r = x;
    for (double& v : r.a) v *= s;
    return r;
}

inline Matrix operator*(const Matrix& x, const Matrix& y) {
    check_dims(x, y);
    Matrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const double xik = x(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

inline Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }
inline Matrix anticommutator(const Matrix& x, const Matrix& y) { return x * y + y * x; }

/// Operator 2-norm via power iteration on M^T M (50 iterations, tol 1e-12).
double norm2(const Matrix& m);

} // namespace gkkm

#endif
