#pragma once

// Signed deviation of a researcher's h (or h_m) from an Egghe-Rousseau reference
// curve, in units of the prediction-interval half-width:
//
//   delta = (h - a * P^(1/e)) / halfwidth(P)
//
// A researcher is flagged when delta > 1, i.e. above the upper band.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hdev/error.hpp"
#include "hdev/fitting.hpp"
#include "hdev/indices.hpp"
#include "hdev/records.hpp"

namespace hdev {

enum class IndexKind { H, Hm };

struct ConstantHalfwidth {
    double value = 0.0;
};

/// `below` for P <= threshold, `above` otherwise.
struct PiecewiseHalfwidth {
    double threshold = 1000.0;
    double below = 0.0;
    double above = 0.0;
};

/// Live prediction-interval half-width from a population fit.
struct FittedHalfwidth {
    FitResult fit;
    std::shared_ptr<const std::vector<FitPoint>> points;
    double level = 0.95;
};

using HalfwidthRule = std::variant<ConstantHalfwidth, PiecewiseHalfwidth, FittedHalfwidth>;

inline constexpr double kPiecewiseThreshold = 1000.0;

/// Published half-widths: 16 (h) / 10 (h_m) up to P = 1000, 19 / 12 beyond.
inline double piecewise_halfwidth(double P, IndexKind kind) {
    if (!(P >= 1.0)) throw DomainError("piecewise_halfwidth: P must be at least 1");
    const bool large = P > kPiecewiseThreshold;
    if (kind == IndexKind::H) return large ? 19.0 : 16.0;
    return large ? 12.0 : 10.0;
}

struct ReferenceCurve {
    double amplitude = 0.0;
    double exponent = 0.0;
    HalfwidthRule halfwidth_rule = ConstantHalfwidth{1.0};

    double reference(double P) const { return amplitude * std::pow(P, 1.0 / exponent); }

    double halfwidth(double P) const {
        return std::visit(
            [P](const auto& rule) -> double {
                using T = std::decay_t<decltype(rule)>;
                if constexpr (std::is_same_v<T, ConstantHalfwidth>) {
                    return rule.value;
                } else if constexpr (std::is_same_v<T, PiecewiseHalfwidth>) {
                    return P > rule.threshold ? rule.above : rule.below;
                } else {
                    return prediction_halfwidth(rule.fit, *rule.points, P, rule.level);
                }
            },
            halfwidth_rule);
    }
};

/// h_ER(P) = 3.1 P^(1/2.20), half-widths 16 / 19.
inline ReferenceCurve published_h_curve() {
    return {3.1, 2.20, PiecewiseHalfwidth{kPiecewiseThreshold, 16.0, 19.0}};
}

/// h_m,ER(P) = 1.05 P^(1/1.95), half-widths 10 / 12.
inline ReferenceCurve published_hm_curve() {
    return {1.05, 1.95, PiecewiseHalfwidth{kPiecewiseThreshold, 10.0, 12.0}};
}

/// Egghe-Rousseau curve fitted to `points` with a live prediction-interval half-width.
inline ReferenceCurve fitted_curve(std::vector<FitPoint> points, double level = 0.95,
                                   const FitOptions& options = {}) {
    auto shared = std::make_shared<const std::vector<FitPoint>>(std::move(points));
    const auto result = fit(*shared, ModelFamily::EggheRousseau, options);
    return {result.amplitude, result.exponent, FittedHalfwidth{result, shared, level}};
}

inline double deviation(double value, double P, const ReferenceCurve& curve) {
    if (!(P >= 1.0)) throw DomainError("deviation: P must be at least 1");
    const double width = curve.halfwidth(P);
    if (!(width > 0.0)) throw DomainError("deviation: half-width must be positive");
    return (value - curve.reference(P)) / width;
}

inline double delta_h(int h, double P, const ReferenceCurve& curve) { return deviation(h, P, curve); }

inline double delta_h_m(double h_m, double P, const ReferenceCurve& curve) { return deviation(h_m, P, curve); }

struct DeviationReport {
    std::string researcher_id;
    std::size_t P = 0;
    std::int64_t C = 0;
    int h = 0;
    double h_m = 0.0;
    double delta_h = 0.0;
    double delta_h_m = 0.0;
    bool outside_interval_h = false;
    bool outside_interval_h_m = false;
};

/// One report per profile, ordered by delta_h descending and then researcher_id.
/// Profiles must be non-empty (run apply_exclusions first).
inline std::vector<DeviationReport> deviation_report(const Corpus& corpus, const ReferenceCurve& curve_h,
                                                     const ReferenceCurve& curve_hm) {
    std::vector<DeviationReport> out;
    out.reserve(corpus.profiles.size());
    for (const auto& prof : corpus.profiles) {
        const auto idx = index_set(prof);
        DeviationReport r;
        r.researcher_id = idx.researcher_id;
        r.P = idx.P;
        r.C = idx.C;
        r.h = idx.h;
        r.h_m = idx.h_m;
        r.delta_h = delta_h(idx.h, static_cast<double>(idx.P), curve_h);
        r.delta_h_m = delta_h_m(idx.h_m, static_cast<double>(idx.P), curve_hm);
        r.outside_interval_h = r.delta_h > 1.0;
        r.outside_interval_h_m = r.delta_h_m > 1.0;
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const DeviationReport& a, const DeviationReport& b) {
        if (a.delta_h != b.delta_h) return a.delta_h > b.delta_h;
        return a.researcher_id < b.researcher_id;
    });
    return out;
}

}  // namespace hdev
