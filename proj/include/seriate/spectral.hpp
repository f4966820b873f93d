#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "seriate/matrix.hpp"

namespace seriate {

struct EigenDecomposition {
    std::vector<double> values; // descending
    Matrix vectors;             // column j pairs with values[j]
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double off_norm)
        : std::runtime_error(what), off_norm(off_norm) {}
    double off_norm;
};

namespace detail {

inline double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace detail

// Cyclic-sweep two-sided Jacobi rotations on the full symmetric matrix.
// Stops when the off-diagonal Frobenius norm falls below 1e-12 * ||M||_F,
// hard cap of 100 sweeps. Fixed sweep order keeps the result deterministic.
// Eigenvalues are sorted descending; each eigenvector's largest-magnitude
// entry is made nonnegative (lowest index wins ties).
inline EigenDecomposition eigendecompose(const SymMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("eigendecompose: empty matrix");

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const double threshold = 1e-12 * m.frobenius();
    bool converged = detail::offdiag_frobenius(a) <= threshold;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                // smaller-in-magnitude tangent root, the numerically stable choice
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(p, i) = a(i, p);
                    a(i, q) = s * aip + c * aiq;
                    a(q, i) = a(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
        converged = detail::offdiag_frobenius(a) <= threshold;
    }
    if (!converged)
        throw ConvergenceError("eigendecompose: Jacobi sweeps did not converge",
                               detail::offdiag_frobenius(a));

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = idx[j];
        out.values[j] = a(k, k);
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(v(i, k));
            if (mag > best) { best = mag; arg = i; }
        }
        const double sign = v(arg, k) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * v(i, k);
    }
    return out;
}

// -1/2 * H * M * H with H = I - (1/n) 11^T, written out with row/column/grand
// means so the output is exactly symmetric.
inline SymMatrix double_center(const SymMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("double_center: empty matrix");
    std::vector<double> mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j);
        mean[i] = s / static_cast<double>(n);
        grand += s;
    }
    grand /= static_cast<double>(n) * static_cast<double>(n);
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            out.set(i, j, -0.5 * (m(i, j) - mean[i] - mean[j] + grand));
    return out;
}

// Squared distances induced by a Gram matrix: D2(i,j) = S(i,i) + S(j,j) - 2 S(i,j).
inline SymMatrix gram_to_sqdist(const SymMatrix& s) {
    const std::size_t n = s.size();
    SymMatrix d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d.set(i, j, s(i, i) + s(j, j) - 2.0 * s(i, j));
    return d;
}

// True when M commutes with the counterdiagonal permutation K, i.e. the
// entries satisfy M(i,j) = M(n-1-i, n-1-j) up to tol (max-norm of MK - KM).
inline bool is_centrosymmetric(const SymMatrix& m, double tol) {
    const std::size_t n = m.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(m(i, n - 1 - j) - m(n - 1 - i, j)));
    return worst <= tol;
}

// Indices of the eigenvalue cluster containing values[k]: everything within
// 1e-8 of values[k] relative to the spectral radius.
inline std::vector<std::size_t> eigenvalue_cluster(const std::vector<double>& values,
                                                   std::size_t k,
                                                   double rel_tol = 1e-8) {
    if (k >= values.size())
        throw std::invalid_argument("eigenvalue_cluster: index out of range");
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    const double tol = rel_tol * scale;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (std::abs(values[i] - values[k]) <= tol) out.push_back(i);
    return out;
}

struct PerturbationCertificate {
    double lambda_near = 0.0;          // eigenvalue of M closest to the input lambda
    double gap_to_input = 0.0;         // |lambda_near - lambda|, always <= residual
    double separation = 0.0;           // distance from lambda_near's cluster to the rest
    double residual = 0.0;             // ||M f - lambda f||_2 for unit f
    std::optional<double> eigenvector_distance; // set only when separation > residual
};

// Residual certificate for an approximate eigenpair: the residual bounds the
// distance to the nearest true eigenvalue, and when that eigenvalue's cluster
// is separated from the rest by more than the residual, it also bounds the
// angle to its eigenspace via eps/(s - eps).
inline PerturbationCertificate certify_near_eigenpair(const SymMatrix& m,
                                                      std::vector<double> f,
                                                      double lambda) {
    if (f.size() != m.size()) throw std::invalid_argument("certify_near_eigenpair: size mismatch");
    const double nf = norm2(f);
    if (nf == 0.0) throw std::invalid_argument("certify_near_eigenpair: zero vector");
    if (std::abs(nf - 1.0) > 1e-12)
        for (double& x : f) x /= nf;

    std::vector<double> mf = m.apply(f);
    double eps2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = mf[i] - lambda * f[i];
        eps2 += r * r;
    }
    const double eps = std::sqrt(eps2);

    const EigenDecomposition eig = eigendecompose(m);
    std::size_t k = 0;
    for (std::size_t i = 1; i < eig.values.size(); ++i)
        if (std::abs(eig.values[i] - lambda) < std::abs(eig.values[k] - lambda)) k = i;

    PerturbationCertificate cert;
    cert.lambda_near = eig.values[k];
    cert.gap_to_input = std::abs(eig.values[k] - lambda);
    cert.residual = eps;
    const double slack = 1e-12 * (1.0 + m.frobenius());
    if (cert.gap_to_input > eps + slack)
        throw std::logic_error("certify_near_eigenpair: residual bound violated");

    const std::vector<std::size_t> cluster = eigenvalue_cluster(eig.values, k);
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        if (std::find(cluster.begin(), cluster.end(), i) != cluster.end()) continue;
        sep = std::min(sep, std::abs(eig.values[i] - eig.values[k]));
    }
    cert.separation = sep;

    if (sep > eps) {
        // distance from f to the span of the cluster's eigenvectors
        double proj2 = 0.0;
        for (std::size_t ci : cluster) {
            const double c = dot(f, eig.vectors.col(ci));
            proj2 += c * c;
        }
        cert.eigenvector_distance = std::sqrt(std::max(0.0, 1.0 - proj2));
        if (std::isfinite(sep) && *cert.eigenvector_distance > eps / (sep - eps) + slack)
            throw std::logic_error("certify_near_eigenpair: eigenvector distance bound violated");
    }
    return cert;
}

} // namespace seriate
