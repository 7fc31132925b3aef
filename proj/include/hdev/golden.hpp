#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "hdev/error.hpp"

namespace hdev {

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Golden-section search for a minimum of `f` on [lo, hi], stopping once the
/// bracket is narrower than `tol`. `f` is assumed unimodal on the interval.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
    if (!(lo <= hi)) throw DomainError("golden_section_minimize: empty interval");
    constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    ScalarMinimum out;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    out.evaluations = 2;
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++out.evaluations;
        // the bracket cannot shrink below the spacing of representable doubles
        if (c >= d) break;
    }
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    ++out.evaluations;
    out.x = mid;
    out.value = fm;
    if (fc < out.value) out = {c, fc, out.evaluations};
    if (fd < out.value) out = {d, fd, out.evaluations};
    return out;
}

/// Evaluates `f` on `points` equally spaced nodes over [lo, hi] and polishes the best
/// node with golden-section search inside its neighbouring cells. Guards against the
/// local minima a bare bracket search could settle into.
template <class F>
ScalarMinimum grid_then_golden(F&& f, double lo, double hi, std::size_t points, double tol) {
    if (points < 2) throw DomainError("grid_then_golden: need at least 2 grid points");
    if (!(lo < hi)) throw DomainError("grid_then_golden: lower bound must be below upper bound");
    const double step = (hi - lo) / static_cast<double>(points - 1);
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points; ++i) {
        const double x = i + 1 == points ? hi : lo + step * static_cast<double>(i);
        const double v = f(x);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    const double left = best == 0 ? lo : lo + step * static_cast<double>(best - 1);
    const double right = best + 1 >= points ? hi : lo + step * static_cast<double>(best + 1);
    auto refined = golden_section_minimize(f, left, right, tol);
    refined.evaluations += points;
    if (best_value < refined.value) {
        const double x = best + 1 == points ? hi : lo + step * static_cast<double>(best);
        refined.x = x;
        refined.value = best_value;
    }
    return refined;
}

}  // namespace hdev
