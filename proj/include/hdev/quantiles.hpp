#pragma once

// Quantile functions for the normal and Student t distributions.

#include <cmath>
#include <limits>
#include <numbers>

#include "hdev/error.hpp"

namespace hdev {

/// Standard normal quantile, Acklam's rational approximation followed by one
/// Halley step against erfc. Relative error is near machine precision.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

/// Student t quantile for `df` degrees of freedom (df >= 1, non-integer allowed).
/// Hill's algorithm 396 (CACM 1970); exact for df = 1 and 2, absolute error well
/// under 1e-4 elsewhere.
inline double t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("t_quantile: p must lie in (0, 1)");
    if (!(df >= 1.0)) throw DomainError("t_quantile: degrees of freedom must be >= 1");
    if (p == 0.5) return 0.0;

    // Hill works with the two-tailed probability of |T| > t.
    const bool upper = p > 0.5;
    const double two_tail = 2.0 * (upper ? 1.0 - p : p);
    const double n = df;
    double t;

    if (n == 1.0) {
        const double angle = two_tail * std::numbers::pi / 2.0;
        t = std::cos(angle) / std::sin(angle);
    } else if (n == 2.0) {
        t = std::sqrt(2.0 / (two_tail * (2.0 - two_tail)) - 2.0);
    } else {
        const double a = 1.0 / (n - 0.5);
        const double b = 48.0 / (a * a);
        double c = ((20700.0 * a / b - 98.0) * a - 16.0) * a + 96.36;
        const double d = ((94.5 / (b + c) - 3.0) / b + 1.0) * std::sqrt(a * std::numbers::pi / 2.0) * n;
        double x = d * two_tail;
        double y = std::pow(x, 2.0 / n);
        if (y > 0.05 + a) {
            // asymptotic inverse expansion about the normal deviate
            x = normal_quantile(0.5 * two_tail);
            y = x * x;
            if (n < 5.0) c += 0.3 * (n - 4.5) * (x + 0.6);
            c = (((0.05 * d * x - 5.0) * x - 7.0) * x - 2.0) * x + b + c;
            y = (((((0.4 * y + 6.3) * y + 36.0) * y + 94.5) / c - y - 3.0) / b + 1.0) * x;
            y = a * y * y;
            y = y > 0.002 ? std::expm1(y) : 0.5 * y * y + y;
        } else {
            y = ((1.0 / (((n + 6.0) / (n * y) - 0.089 * d - 0.822) * (n + 2.0) * 3.0) + 0.5 / (n + 4.0)) * y -
                 1.0) *
                    (n + 1.0) / (n + 2.0) +
                1.0 / y;
        }
        t = std::sqrt(n * y);
    }
    return upper ? t : -t;
}

}  // namespace hdev
