#pragma once

#include <cmath>
#include <stdexcept>

#include "seriate/matrix.hpp"

namespace seriate {

enum class KernelVariant { proximity, uncentered, centered_scaled, twin };

// Saturating proximity of two points on the unit interval, mapped to a
// continuous kernel on [0,1]^2 by centering against the uniform measure.
// The additive terms are grouped commutatively so that K(x,y) == K(y,x)
// holds bitwise, and K(x,y) == K(1-x,1-y) holds bitwise whenever 1-x and
// 1-y are exact (dyadic arguments).
inline double continuous_kernel(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0))
        throw std::domain_error("continuous_kernel: arguments must lie in [0,1]");
    const double left_decay = std::exp(-x) + std::exp(-y);
    const double right_decay = std::exp(-(1.0 - x)) + std::exp(-(1.0 - y));
    return 0.5 * (std::exp(-std::abs(x - y)) + left_decay + right_decay)
           + (std::exp(-1.0) - 2.0);
}

// Kernel matrices on the grid x_i = i/n, i = 1..n.
//   proximity        P(i,j)  = 1 - e^{-|i-j|/n}
//   uncentered       A(i,j)  = (1/2n) e^{-|i-j|/n}
//   centered_scaled  S(i,j)  = (1/n) K(i/n, j/n), written out explicitly
//   twin             2n x 2n, P on the diagonal blocks, ones elsewhere
inline SymMatrix build_kernel(int n, KernelVariant variant) {
    if (n < 2) throw std::invalid_argument("build_kernel: n must be at least 2");
    const std::size_t un = static_cast<std::size_t>(n);

    auto prox = [&](std::size_t i, std::size_t j) {
        const double d = static_cast<double>(i > j ? i - j : j - i);
        return 1.0 - std::exp(-d / n);
    };

    switch (variant) {
    case KernelVariant::proximity: {
        SymMatrix m(un);
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = i; j < un; ++j) m.set(i, j, prox(i, j));
        return m;
    }
    case KernelVariant::uncentered: {
        SymMatrix m(un);
        const double scale = 0.5 / n;
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = i; j < un; ++j) {
                const double d = static_cast<double>(j - i);
                m.set(i, j, scale * std::exp(-d / n));
            }
        return m;
    }
    case KernelVariant::centered_scaled: {
        SymMatrix m(un);
        const double scale = 0.5 / n;
        const double tail = 2.0 * std::exp(-1.0) - 4.0;
        for (std::size_t i = 0; i < un; ++i) {
            const double xi = static_cast<double>(i + 1) / n;
            for (std::size_t j = i; j < un; ++j) {
                const double xj = static_cast<double>(j + 1) / n;
                const double d = static_cast<double>(j - i);
                const double sum = std::exp(-d / n)
                                 + (std::exp(-xi) + std::exp(-xj))
                                 + (std::exp(-(1.0 - xi)) + std::exp(-(1.0 - xj)))
                                 + tail;
                m.set(i, j, scale * sum);
            }
        }
        return m;
    }
    case KernelVariant::twin: {
        SymMatrix m(2 * un);
        for (std::size_t i = 0; i < 2 * un; ++i)
            for (std::size_t j = i; j < 2 * un; ++j) {
                const bool same_block = (i < un) == (j < un);
                m.set(i, j, same_block ? prox(i % un, j % un) : 1.0);
            }
        return m;
    }
    }
    throw std::logic_error("build_kernel: unreachable");
}

enum class TrigMode { cos, sin };

// Closed form of the integral over [0,1] of e^{-|x-c|} * trig(a(x - 1/2)) dx.
inline double trig_exp_integral(double a, double c, TrigMode mode) {
    if (a == 0.0) throw std::invalid_argument("trig_exp_integral: a must be nonzero");
    if (!(c >= 0.0 && c <= 1.0))
        throw std::domain_error("trig_exp_integral: c must lie in [0,1]");
    const double denom = 1.0 + a * a;
    const double half = 0.5 * a;
    if (mode == TrigMode::cos) {
        return (2.0 * std::cos(a * (c - 0.5))
                + (std::exp(-c) + std::exp(c - 1.0)) * (a * std::sin(half) - std::cos(half)))
               / denom;
    }
    return (2.0 * std::sin(a * (c - 0.5))
            + (std::exp(-c) - std::exp(c - 1.0)) * (a * std::cos(half) + std::sin(half)))
           / denom;
}

} // namespace seriate
