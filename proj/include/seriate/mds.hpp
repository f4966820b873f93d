#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "seriate/matrix.hpp"
#include "seriate/spectral.hpp"

namespace seriate {

struct Embedding {
    Matrix coords;                        // n x k_used, column j scaled by sqrt(lambda_j)
    std::vector<double> used_eigenvalues; // positive, descending
    double dropped_negative_mass = 0.0;   // sum of |negative eigenvalues| of the Gram
    std::vector<double> spectrum;         // full Gram spectrum, descending
    double max_center_rowsum = 0.0;       // worst |row sum| of the centered Gram
    bool truncated = false;               // fewer positive eigenvalues than requested
};

// Dissimilarities to coordinates: optionally square entrywise, double center,
// keep the top positive eigenpairs. Negative eigenvalue mass is reported,
// never embedded; asking for more columns than there are positive eigenvalues
// truncates and sets the flag.
inline Embedding classical_mds(const SymMatrix& d, std::size_t k, bool square_first) {
    const std::size_t n = d.size();
    if (n == 0) throw std::invalid_argument("classical_mds: empty input");
    if (k < 1 || k > n) throw std::invalid_argument("classical_mds: k must be in 1..n");
    for (std::size_t i = 0; i < n; ++i) {
        if (d(i, i) != 0.0)
            throw std::invalid_argument("classical_mds: dissimilarity diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j)
            if (d(i, j) < 0.0)
                throw std::invalid_argument("classical_mds: negative dissimilarity entry");
    }

    SymMatrix d2(n);
    if (square_first) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) d2.set(i, j, d(i, j) * d(i, j));
    } else {
        d2 = d;
    }

    const SymMatrix gram = double_center(d2);
    const EigenDecomposition eig = eigendecompose(gram);

    Embedding e;
    e.spectrum = eig.values;
    for (std::size_t i = 0; i < n; ++i) {
        double rs = 0.0;
        for (std::size_t j = 0; j < n; ++j) rs += gram(i, j);
        e.max_center_rowsum = std::max(e.max_center_rowsum, std::abs(rs));
    }

    const double top = eig.values.front();
    if (top <= 0.0)
        throw std::runtime_error("classical_mds: no positive eigenvalues, nothing to embed");
    const double positive_floor = 1e-12 * static_cast<double>(n) * top;
    std::size_t positive = 0;
    while (positive < n && eig.values[positive] > positive_floor) ++positive;

    const std::size_t used = std::min(k, positive);
    e.truncated = used < k;
    e.used_eigenvalues.assign(eig.values.begin(), eig.values.begin() + used);
    e.coords = Matrix(n, used);
    for (std::size_t j = 0; j < used; ++j) {
        const double scale = std::sqrt(eig.values[j]);
        for (std::size_t i = 0; i < n; ++i) e.coords(i, j) = scale * eig.vectors(i, j);
    }
    for (double lam : eig.values)
        if (lam < 0.0) e.dropped_negative_mass += -lam;
    return e;
}

inline SymMatrix reconstructed_distances(const Embedding& e) {
    const std::size_t n = e.coords.rows();
    const std::size_t k = e.coords.cols();
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                const double diff = e.coords(i, c) - e.coords(j, c);
                s += diff * diff;
            }
            out.set(i, j, std::sqrt(s));
        }
    return out;
}

// Sum over all pairs of D2[i][j] - ||y_i - y_j||^2, the quantity the
// embedding minimizes at fixed rank. Plain differences, not magnitudes:
// exact Euclidean input at full rank gives 0.
inline double strain(const SymMatrix& d2, const Embedding& e) {
    const std::size_t n = d2.size();
    if (e.coords.rows() != n) throw std::invalid_argument("strain: dimension mismatch");
    const std::size_t k = e.coords.cols();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                const double diff = e.coords(i, c) - e.coords(j, c);
                s += diff * diff;
            }
            total += d2(i, j) - s;
        }
    return total;
}

} // namespace seriate
