#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seriate/kernel.hpp"
#include "seriate/spectral.hpp"

namespace seriate {

// Eigenvalue families of the exponential kernel on the unit interval. Each
// family is cut out by a transcendental equation in a, with eigenvalue
// lambda = 1/(1+a^2):
//   cos_centered    tan(a/2) = a/(2+3a^2)       brackets (2k*pi, 2k*pi + 1/(3k*pi)), k >= 1
//   sin_family      a*cot(a/2) = -1             brackets ((2k+1)*pi, (2k+1)*pi + 1/(k*pi + pi/2)), k >= 0
//   cos_uncentered  a*tan(a/2) = 1              brackets (2k*pi, (2k+1)*pi), k >= 0
enum class RootFamily { cos_centered, sin_family, cos_uncentered };

struct TranscendentalRoot {
    RootFamily family;
    int branch;    // k in the bracket construction above
    double a;
    double lambda; // 1/(1 + a^2)
};

namespace detail {

inline double defining_equation(RootFamily family, double a) {
    switch (family) {
    case RootFamily::cos_centered:
        return std::tan(0.5 * a) - a / (2.0 + 3.0 * a * a);
    case RootFamily::sin_family:
        return a * std::cos(0.5 * a) / std::sin(0.5 * a) + 1.0;
    case RootFamily::cos_uncentered:
        return a * std::tan(0.5 * a) - 1.0;
    }
    return 0.0;
}

// Plain bisection. Endpoints are never evaluated: the bracket construction
// fixes the sign at the left end, and the right end of a cos_uncentered
// bracket sits on a pole of tan.
inline double bisect_root(RootFamily family, double lo, double hi, bool left_negative) {
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double g = defining_equation(family, mid);
        if (g == 0.0) return mid;
        if ((g < 0.0) == left_negative) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

inline std::vector<TranscendentalRoot> solve_roots(RootFamily family, int count) {
    if (count < 1) throw std::invalid_argument("solve_roots: count must be positive");
    constexpr double pi = 3.14159265358979323846;
    std::vector<TranscendentalRoot> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int idx = 0; idx < count; ++idx) {
        double lo = 0.0, hi = 0.0;
        int branch = idx;
        bool left_negative = true;
        switch (family) {
        case RootFamily::cos_centered:
            branch = idx + 1;
            lo = 2.0 * pi * branch;
            hi = lo + 1.0 / (3.0 * pi * branch);
            break;
        case RootFamily::sin_family:
            lo = (2.0 * branch + 1.0) * pi;
            hi = lo + 1.0 / (branch * pi + 0.5 * pi);
            left_negative = false;
            break;
        case RootFamily::cos_uncentered:
            lo = 2.0 * pi * branch;
            hi = lo + pi;
            break;
        }
        const double a = detail::bisect_root(family, lo, hi, left_negative);
        out.push_back({family, branch, a, 1.0 / (1.0 + a * a)});
    }
    return out;
}

struct ApproxEigenfunction {
    TranscendentalRoot root;
    std::vector<double> samples; // index i-1 holds the value at x_i = i/n
    bool normalized = false;
};

// Closed-form samples on the grid x_i = i/n:
//   cos_centered    cos(a(i/n - 1/2)) - (2/a) sin(a/2)
//   sin_family      sin(a(i/n - 1/2))
//   cos_uncentered  cos(a(i/n - 1/2))
// The argument is computed from the integer numerator 2i-n so that samples
// at grid points mirrored about 1/2 (i and n-i) negate each other bitwise.
inline ApproxEigenfunction eigenfunction_samples(const TranscendentalRoot& root, int n) {
    if (n < 2) throw std::invalid_argument("eigenfunction_samples: n must be at least 2");
    ApproxEigenfunction out{root, std::vector<double>(static_cast<std::size_t>(n)), false};
    const double a = root.a;
    const double offset =
        root.family == RootFamily::cos_centered ? (2.0 / a) * std::sin(0.5 * a) : 0.0;
    for (int i = 1; i <= n; ++i) {
        const double arg = a * (static_cast<double>(2 * i - n) / (2.0 * n));
        out.samples[static_cast<std::size_t>(i - 1)] =
            root.family == RootFamily::sin_family ? std::sin(arg) : std::cos(arg) - offset;
    }
    return out;
}

namespace detail {

inline KernelVariant default_variant(RootFamily family) {
    return family == RootFamily::cos_uncentered ? KernelVariant::uncentered
                                                : KernelVariant::centered_scaled;
}

// The residual and gap bounds carry a family- and matrix-dependent constant:
// (a+4) for the centered cosine on the centered matrix, (a+2) for the sine
// on the centered matrix, (a+1) for either family on the uncentered matrix.
inline double bound_constant(RootFamily family, KernelVariant variant) {
    const bool centered = variant == KernelVariant::centered_scaled;
    if (centered && family == RootFamily::cos_centered) return 4.0;
    if (centered && family == RootFamily::sin_family) return 2.0;
    if (variant == KernelVariant::uncentered &&
        (family == RootFamily::cos_uncentered || family == RootFamily::sin_family))
        return 1.0;
    throw std::invalid_argument("eigenfunction family does not pair with this kernel variant");
}

} // namespace detail

struct ResidualReport {
    double max_residual = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// Max-entry residual of the closed-form eigenfunction against the kernel
// matrix, compared with the (a+c)/(2n) bound for the family/matrix pair.
inline ResidualReport residual_bound_check(int n, const TranscendentalRoot& root,
                                           std::optional<KernelVariant> variant = {}) {
    const KernelVariant v = variant.value_or(detail::default_variant(root.family));
    const double c = detail::bound_constant(root.family, v);
    const SymMatrix m = build_kernel(n, v);
    const std::vector<double> f = eigenfunction_samples(root, n).samples;
    const std::vector<double> mf = m.apply(f);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(mf[i] - root.lambda * f[i]));
    const double bound = (root.a + c) / (2.0 * n);
    return {worst, bound, worst <= bound};
}

struct GapReport {
    double nearest_eigenvalue = 0.0;
    double gap = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// Distance from 1/(1+a^2) to a precomputed spectrum, against (a+c)/sqrt(n).
inline GapReport eigenvalue_gap_check(const std::vector<double>& spectrum, int n,
                                      const TranscendentalRoot& root, KernelVariant variant) {
    const double c = detail::bound_constant(root.family, variant);
    if (spectrum.empty()) throw std::invalid_argument("eigenvalue_gap_check: empty spectrum");
    double gap = std::numeric_limits<double>::infinity();
    double nearest = spectrum.front();
    for (double lam : spectrum) {
        const double d = std::abs(lam - root.lambda);
        if (d < gap) { gap = d; nearest = lam; }
    }
    const double bound = (root.a + c) / std::sqrt(static_cast<double>(n));
    return {nearest, gap, bound, gap <= bound};
}

inline GapReport eigenvalue_gap_check(int n, const TranscendentalRoot& root,
                                      std::optional<KernelVariant> variant = {}) {
    const KernelVariant v = variant.value_or(detail::default_variant(root.family));
    detail::bound_constant(root.family, v); // validate the pairing before the expensive build
    const EigenDecomposition eig = eigendecompose(build_kernel(n, v));
    return eigenvalue_gap_check(eig.values, n, root, v);
}

// Closed-form approximate eigenfunctions of the two-population matrix
// -(1/2n) * build_kernel(n, twin), each of length 2n:
//   separator     (u, -u) with u the first cos_uncentered eigenfunction
//   first_block   (g, 0)  with g the first sin_family eigenfunction
//   second_block  (0, g)
// first_block and second_block share one eigenvalue; the separator's sits
// near 0.37. The mirrored halves of the separator are bitwise negations, so
// its inner product with the constant vector is exactly zero.
struct TwinEigenfunctions {
    int n = 0;
    std::vector<double> separator;
    std::vector<double> first_block;
    std::vector<double> second_block;
    double separator_lambda = 0.0;
    double block_lambda = 0.0;
};

inline TwinEigenfunctions twin_theory(int n) {
    if (n < 2) throw std::invalid_argument("twin_theory: n must be at least 2");
    const TranscendentalRoot cu = solve_roots(RootFamily::cos_uncentered, 1).front();
    const TranscendentalRoot sf = solve_roots(RootFamily::sin_family, 1).front();
    const std::vector<double> u = eigenfunction_samples(cu, n).samples;
    const std::vector<double> g = eigenfunction_samples(sf, n).samples;
    const std::size_t un = static_cast<std::size_t>(n);

    TwinEigenfunctions t;
    t.n = n;
    t.separator.resize(2 * un);
    t.first_block.assign(2 * un, 0.0);
    t.second_block.assign(2 * un, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
        t.separator[i] = u[i];
        t.separator[un + i] = -u[i];
        t.first_block[i] = g[i];
        t.second_block[un + i] = g[i];
    }
    t.separator_lambda = cu.lambda;
    t.block_lambda = sf.lambda;
    return t;
}

} // namespace seriate
