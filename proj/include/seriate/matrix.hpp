#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace seriate {

// Dense row-major matrix. Small and dumb on purpose; everything in this
// library is O(n^2) storage anyway.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<double> col(std::size_t j) const {
        std::vector<double> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = a_[i * cols_ + j];
        return v;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Symmetric matrix with full storage. set() writes both triangles so the
// exact equality entries(i,j) == entries(j,i) holds bitwise; from_raw()
// symmetrizes arbitrary input as (M + M^T)/2 and rejects non-finite entries.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    static SymMatrix from_raw(const Matrix& m) {
        if (m.rows() != m.cols()) throw std::invalid_argument("SymMatrix: input not square");
        SymMatrix s(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = i; j < m.rows(); ++j) {
                double v = 0.5 * (m(i, j) + m(j, i));
                if (!std::isfinite(v)) throw std::invalid_argument("SymMatrix: non-finite entry");
                s.set(i, j, v);
            }
        return s;
    }

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }

    const double* row(std::size_t i) const { return a_.data() + i * n_; }

    std::vector<double> apply(const std::vector<double>& v) const {
        if (v.size() != n_) throw std::invalid_argument("SymMatrix::apply: size mismatch");
        std::vector<double> out(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            const double* r = row(i);
            double acc = 0.0;
            for (std::size_t j = 0; j < n_; ++j) acc += r[j] * v[j];
            out[i] = acc;
        }
        return out;
    }

    SymMatrix scaled(double c) const {
        SymMatrix s(n_);
        for (std::size_t i = 0; i < n_ * n_; ++i) s.a_[i] = c * a_[i];
        return s;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

} // namespace seriate
