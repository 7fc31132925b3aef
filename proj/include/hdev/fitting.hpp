#pragma once

// Least-squares fits of the three power-law models for h across a population:
//
//   Hirsch            h = a * C^(1/e)
//   Egghe-Rousseau    h = a * P^(1/e)
//   Glanzel-Schubert  h = a * P^(1/(e+1)) * (C/P)^(e/(e+1))
//
// The fit minimises chi2 = sum (h_i - a f_i)^2 on the linear scale. For a fixed
// exponent e the optimal amplitude is a* = sum h_i f_i / sum f_i^2, so only e is
// searched numerically (coarse grid, then golden section).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdev/error.hpp"
#include "hdev/golden.hpp"
#include "hdev/quantiles.hpp"

namespace hdev {

enum class ModelFamily { Hirsch, EggheRousseau, GlanzelSchubert };

inline std::string_view to_string(ModelFamily f) {
    switch (f) {
        case ModelFamily::Hirsch: return "hirsch";
        case ModelFamily::EggheRousseau: return "egghe-rousseau";
        case ModelFamily::GlanzelSchubert: return "glanzel-schubert";
    }
    return "unknown";
}

/// Accepts the short CLI spellings (hirsch, er, gs) and the long names.
inline std::optional<ModelFamily> parse_family(std::string_view s) {
    if (s == "hirsch" || s == "h") return ModelFamily::Hirsch;
    if (s == "er" || s == "egghe-rousseau") return ModelFamily::EggheRousseau;
    if (s == "gs" || s == "glanzel-schubert") return ModelFamily::GlanzelSchubert;
    return std::nullopt;
}

/// One researcher as seen by the models. `h` is real so h_m populations fit too.
struct FitPoint {
    double P = 0.0;
    double C = 0.0;
    double h = 0.0;
};

struct ExponentBounds {
    double lo = 0.0;
    double hi = 0.0;
};

inline ExponentBounds default_bounds(ModelFamily f) {
    return f == ModelFamily::GlanzelSchubert ? ExponentBounds{0.05, 10.0} : ExponentBounds{1.01, 10.0};
}

/// Model shape f(P, C; e) without the amplitude.
inline double predictor(ModelFamily family, double P, double C, double exponent) {
    switch (family) {
        case ModelFamily::Hirsch: return std::pow(C, 1.0 / exponent);
        case ModelFamily::EggheRousseau: return std::pow(P, 1.0 / exponent);
        case ModelFamily::GlanzelSchubert:
            return std::pow(P, 1.0 / (exponent + 1.0)) * std::pow(C / P, exponent / (exponent + 1.0));
    }
    return 0.0;
}

inline double predictor(ModelFamily family, const FitPoint& pt, double exponent) {
    return predictor(family, pt.P, pt.C, exponent);
}

/// d f / d e, used for the linearised design of the prediction interval.
inline double predictor_slope(ModelFamily family, double P, double C, double exponent) {
    const double f = predictor(family, P, C, exponent);
    switch (family) {
        case ModelFamily::Hirsch: return -f * std::log(C) / (exponent * exponent);
        case ModelFamily::EggheRousseau: return -f * std::log(P) / (exponent * exponent);
        case ModelFamily::GlanzelSchubert: {
            const double s = exponent + 1.0;
            return f * (std::log(C / P) - std::log(P)) / (s * s);
        }
    }
    return 0.0;
}

/// Glanzel-Schubert rewritten as h ∝ P^x C^y; returns {x, y}.
inline std::pair<double, double> gs_equivalent_exponents(double exponent) {
    const double s = exponent + 1.0;
    return {(1.0 - exponent) / s, exponent / s};
}

struct FitResult {
    ModelFamily family = ModelFamily::EggheRousseau;
    double amplitude = 0.0;
    double exponent = 0.0;
    double chi2 = 0.0;
    double r_loglog = std::numeric_limits<double>::quiet_NaN();  // NaN when log variance vanishes
    std::size_t n = 0;
    double residual_sd = 0.0;
    bool degenerate = false;

    double predict(double P, double C = 1.0) const { return amplitude * predictor(family, P, C, exponent); }
};

struct AmplitudeFit {
    double amplitude = 0.0;
    double chi2 = 0.0;
};

/// Closed-form optimal amplitude at a fixed exponent, with the chi2 it attains.
/// Sums run in input order so results do not depend on any scheduling.
inline AmplitudeFit optimal_amplitude(std::span<const FitPoint> points, ModelFamily family, double exponent) {
    double shf = 0.0, sff = 0.0;
    for (const auto& pt : points) {
        const double f = predictor(family, pt, exponent);
        shf += pt.h * f;
        sff += f * f;
    }
    AmplitudeFit out;
    out.amplitude = sff > 0.0 ? shf / sff : 0.0;
    for (const auto& pt : points) {
        const double r = pt.h - out.amplitude * predictor(family, pt, exponent);
        out.chi2 += r * r;
    }
    return out;
}

inline double chi2_at(std::span<const FitPoint> points, ModelFamily family, double amplitude, double exponent) {
    double chi2 = 0.0;
    for (const auto& pt : points) {
        const double r = pt.h - amplitude * predictor(family, pt, exponent);
        chi2 += r * r;
    }
    return chi2;
}

namespace detail {

inline void check_points(std::span<const FitPoint> points, std::size_t min_n, const char* who) {
    if (points.size() < min_n)
        throw DomainError(std::string(who) + ": need at least " + std::to_string(min_n) + " points");
    for (const auto& pt : points) {
        if (!(pt.P >= 1.0) || !(pt.C >= 1.0))
            throw DomainError(std::string(who) + ": P and C must be at least 1");
        if (!(pt.h > 0.0)) throw DomainError(std::string(who) + ": h must be positive");
    }
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    // relative guard: constant inputs leave rounding-level variance behind
    const double scale_x = std::max(1.0, mx * mx) * n;
    const double scale_y = std::max(1.0, my * my) * n;
    if (sxx <= 1e-24 * scale_x || syy <= 1e-24 * scale_y)
        throw DomainError("loglog_correlation: zero variance in a coordinate");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace detail

/// Pearson correlation of ln f(P, C; e) against ln h.
inline double loglog_correlation(std::span<const FitPoint> points, ModelFamily family, double exponent) {
    if (points.size() < 2) throw DomainError("loglog_correlation: need at least 2 points");
    std::vector<double> lx, ly;
    lx.reserve(points.size());
    ly.reserve(points.size());
    for (const auto& pt : points) {
        const double f = predictor(family, pt, exponent);
        if (!(f > 0.0) || !(pt.h > 0.0)) throw DomainError("loglog_correlation: values must be positive");
        lx.push_back(std::log(f));
        ly.push_back(std::log(pt.h));
    }
    return detail::pearson(lx, ly);
}

inline double loglog_correlation(std::span<const FitPoint> points, const FitResult& fit) {
    return loglog_correlation(points, fit.family, fit.exponent);
}

struct FitOptions {
    std::size_t grid_points = 64;
    double tolerance = 1e-10;
};

inline FitResult fit(std::span<const FitPoint> points, ModelFamily family, ExponentBounds bounds,
                     const FitOptions& options = {}) {
    detail::check_points(points, 3, "fit");
    if (!(bounds.lo > 0.0) || !(bounds.lo < bounds.hi))
        throw DomainError("fit: exponent bounds must satisfy 0 < lo < hi");

    auto objective = [&](double e) { return optimal_amplitude(points, family, e).chi2; };
    const auto best = grid_then_golden(objective, bounds.lo, bounds.hi, options.grid_points, options.tolerance);

    FitResult out;
    out.family = family;
    out.exponent = best.x;
    const auto amp = optimal_amplitude(points, family, best.x);
    out.amplitude = amp.amplitude;
    out.chi2 = amp.chi2;
    out.n = points.size();
    out.residual_sd = std::sqrt(out.chi2 / static_cast<double>(out.n - 2));

    const bool all_equal = std::all_of(points.begin(), points.end(),
                                       [&](const FitPoint& p) { return p.h == points.front().h; });
    const double edge = std::max(options.tolerance, 1e-9) * 10.0;
    const bool pinned = best.x - bounds.lo <= edge || bounds.hi - best.x <= edge;
    out.degenerate = all_equal && pinned;

    try {
        out.r_loglog = loglog_correlation(points, family, out.exponent);
    } catch (const DomainError&) {
        out.r_loglog = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

inline FitResult fit(std::span<const FitPoint> points, ModelFamily family, const FitOptions& options = {}) {
    return fit(points, family, default_bounds(family), options);
}

struct ProfilePoint {
    double exponent = 0.0;
    double chi2 = 0.0;
};

/// chi2 with the optimal amplitude at each exponent of `grid`.
inline std::vector<ProfilePoint> chi2_profile(std::span<const FitPoint> points, ModelFamily family,
                                              std::span<const double> grid) {
    detail::check_points(points, 3, "chi2_profile");
    if (grid.empty()) throw DomainError("chi2_profile: empty exponent grid");
    std::vector<ProfilePoint> out;
    out.reserve(grid.size());
    for (double e : grid) {
        if (!(e > 0.0)) throw DomainError("chi2_profile: grid exponents must be positive");
        out.push_back({e, optimal_amplitude(points, family, e).chi2});
    }
    return out;
}

/// Half-width of the two-sided prediction interval for a new observation at
/// (at.P, at.C); at.h is ignored:
///
///   t_{(1+level)/2, n-2} * s * sqrt(1 + 1/n + g0' (J'J)^-1 g0)
///
/// where J is the Jacobian of the model in (amplitude, exponent) at the fitted
/// optimum over `points`, g0 its row at the query, and s the residual sd.
inline double prediction_halfwidth(const FitResult& fit, std::span<const FitPoint> points, const FitPoint& at,
                                   double level = 0.95) {
    const double P0 = at.P, C0 = at.C;
    if (points.size() <= 2) throw DomainError("prediction_halfwidth: need more than 2 points");
    if (!(P0 >= 1.0) || !(C0 >= 1.0)) throw DomainError("prediction_halfwidth: query P and C must be at least 1");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("prediction_halfwidth: level must lie in (0, 1)");
    if (fit.residual_sd == 0.0) return 0.0;

    const double a = fit.amplitude, e = fit.exponent;
    double m11 = 0.0, m12 = 0.0, m22 = 0.0;
    for (const auto& pt : points) {
        const double ja = predictor(fit.family, pt.P, pt.C, e);
        const double je = a * predictor_slope(fit.family, pt.P, pt.C, e);
        m11 += ja * ja;
        m12 += ja * je;
        m22 += je * je;
    }
    const double det = m11 * m22 - m12 * m12;
    if (!(det > 1e-12 * m11 * m22))
        throw DomainError("prediction_halfwidth: singular design (all points share one predictor value?)");
    const double ga = predictor(fit.family, P0, C0, e);
    const double ge = a * predictor_slope(fit.family, P0, C0, e);
    const double leverage = (m22 * ga * ga - 2.0 * m12 * ga * ge + m11 * ge * ge) / det;

    const auto n = static_cast<double>(points.size());
    const double t = t_quantile(0.5 * (1.0 + level), n - 2.0);
    return t * fit.residual_sd * std::sqrt(1.0 + 1.0 / n + leverage);
}

/// Convenience overload for models whose predictor depends on P only.
inline double prediction_halfwidth(const FitResult& fit, std::span<const FitPoint> points, double P0,
                                   double level = 0.95) {
    if (fit.family != ModelFamily::EggheRousseau)
        throw DomainError("prediction_halfwidth: this family needs C at the query point");
    return prediction_halfwidth(fit, points, FitPoint{P0, 1.0, 0.0}, level);
}

}  // namespace hdev
