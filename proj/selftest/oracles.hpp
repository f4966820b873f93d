#pragma once

// Independent numerical oracles for the test and verify suites. These are
// deliberately different algorithms from the library paths they check:
// quadrature instead of closed forms, Sturm bisection instead of rotation
// sweeps. Slow and simple is the point.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "seriate/matrix.hpp"

namespace oracles {

// Composite Simpson with `panels` subintervals (even).
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      int panels) {
    if (hi <= lo) return 0.0;
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("simpson: panels must be even and >= 2");
    const double h = (hi - lo) / panels;
    double s = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Integral of f over [0,1] when f has a kink at c: integrate each smooth
// piece separately so Simpson keeps its full order.
inline double integrate_with_kink(const std::function<double(double)>& f, double c,
                                  int panels = 1 << 14) {
    if (!(c >= 0.0 && c <= 1.0))
        throw std::invalid_argument("integrate_with_kink: kink outside [0,1]");
    return simpson(f, 0.0, c, panels) + simpson(f, c, 1.0, panels);
}

namespace detail {

// Householder tridiagonalization applied to a dense copy; O(n^3) with no
// cleverness, returns diagonal d and subdiagonal e (e[0] unused).
inline void tridiagonalize(std::vector<std::vector<double>> a, std::vector<double>& d,
                           std::vector<double>& e) {
    const std::size_t n = a.size();
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm2 += a[i][k] * a[i][k];
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const double alpha = a[k + 1][k] >= 0.0 ? -norm : norm;

        std::vector<double> v(n, 0.0);
        v[k + 1] = a[k + 1][k] - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = a[i][k];
        double vn = 0.0;
        for (double x : v) vn += x * x;
        vn = std::sqrt(vn);
        if (vn == 0.0) continue;
        for (double& x : v) x /= vn;

        // a <- (I - 2vv^T) a (I - 2vv^T)
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
            w[i] = s;
        }
        double vw = 0.0;
        for (std::size_t i = 0; i < n; ++i) vw += v[i] * w[i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a[i][j] += -2.0 * v[i] * w[j] - 2.0 * w[i] * v[j] + 4.0 * vw * v[i] * v[j];
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
    for (std::size_t i = 1; i < n; ++i) e[i] = a[i][i - 1];
}

// Number of eigenvalues strictly below x, via the LDL^T sign count.
inline int count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double off = i == 0 ? 0.0 : e[i] * e[i];
        q = d[i] - x - off / q;
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

} // namespace detail

// All eigenvalues, ascending, each located by bisection on the Sturm count
// within the Gershgorin interval.
inline std::vector<double> sturm_eigenvalues(const seriate::SymMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("sturm_eigenvalues: empty matrix");
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    std::vector<double> d, e;
    detail::tridiagonalize(std::move(a), d, e);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(e[i]) : 0.0) + (i + 1 < n ? std::abs(e[i + 1]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const double pad = 1e-10 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    lo -= pad;
    hi += pad;

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double a0 = lo, b0 = hi;
        for (int iter = 0; iter < 200 && b0 - a0 > 1e-14 * std::max(1.0, std::abs(b0)); ++iter) {
            const double mid = 0.5 * (a0 + b0);
            if (mid <= a0 || mid >= b0) break;
            if (detail::count_below(d, e, mid) >= static_cast<int>(k) + 1) b0 = mid;
            else a0 = mid;
        }
        out[k] = 0.5 * (a0 + b0);
    }
    return out;
}

} // namespace oracles
