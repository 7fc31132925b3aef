#pragma once

// Corpus-level citation statistics: complementary cumulative distribution,
// Lorenz concentration curve, citations by age, and the expected h for a
// researcher publishing P papers drawn at random from the corpus.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hdev/error.hpp"
#include "hdev/records.hpp"

namespace hdev {

/// p(c) = fraction of items with at least c citations. Stored as the distinct
/// citation values v_k (ascending) with the number of items >= v_k; p is constant
/// on (v_{k-1}, v_k].
class CitationDistribution {
public:
    struct Step {
        std::int64_t citations = 0;
        std::int64_t at_least = 0;
    };

    static CitationDistribution from_counts(std::vector<std::int64_t> counts) {
        if (counts.empty()) throw DomainError("ccdf: empty corpus");
        for (auto c : counts)
            if (c < 0) throw DomainError("ccdf: negative citation count");
        std::sort(counts.begin(), counts.end());
        CitationDistribution d;
        d.n_items_ = static_cast<std::int64_t>(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i == 0 || counts[i] != counts[i - 1])
                d.steps_.push_back({counts[i], static_cast<std::int64_t>(counts.size() - i)});
        }
        return d;
    }

    std::int64_t n_items() const noexcept { return n_items_; }
    std::int64_t max_citations() const noexcept { return steps_.back().citations; }
    const std::vector<Step>& steps() const noexcept { return steps_; }

    /// Number of items with at least c citations.
    std::int64_t count_at_least(std::int64_t c) const {
        if (c <= 0) return n_items_;
        auto it = std::lower_bound(steps_.begin(), steps_.end(), c,
                                   [](const Step& s, std::int64_t v) { return s.citations < v; });
        return it == steps_.end() ? 0 : it->at_least;
    }

    double p(std::int64_t c) const {
        return static_cast<double>(count_at_least(c)) / static_cast<double>(n_items_);
    }

    /// (c, p(c)) at c = 0 and wherever p changes value, ending at max + 1 with p = 0.
    std::vector<std::pair<std::int64_t, double>> change_points() const {
        std::vector<std::pair<std::int64_t, double>> out;
        out.emplace_back(0, 1.0);
        for (const auto& s : steps_) out.emplace_back(s.citations + 1, p(s.citations + 1));
        return out;
    }

    /// p(c) for every c in [0, max + 1].
    std::vector<double> dense() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(max_citations() + 2));
        for (std::int64_t c = 0; c <= max_citations() + 1; ++c) out.push_back(p(c));
        return out;
    }

private:
    std::int64_t n_items_ = 0;
    std::vector<Step> steps_;
};

inline CitationDistribution ccdf(const CitationCorpus& corpus) {
    std::vector<std::int64_t> counts;
    counts.reserve(corpus.items.size());
    for (const auto& p : corpus.items) counts.push_back(p.citations);
    return CitationDistribution::from_counts(std::move(counts));
}

struct LorenzPoint {
    double paper_share = 0.0;
    double citation_share = 0.0;
};

/// Papers sorted ascending by citations; point k is (k/n, share of citations held by
/// the first k). The first point is (0, 0).
inline std::vector<LorenzPoint> lorenz(const CitationCorpus& corpus) {
    if (corpus.items.empty()) throw DomainError("lorenz: empty corpus");
    std::vector<std::int64_t> counts;
    counts.reserve(corpus.items.size());
    std::int64_t total = 0;
    for (const auto& p : corpus.items) {
        counts.push_back(p.citations);
        total += p.citations;
    }
    if (total == 0) throw DomainError("lorenz: corpus has no citations");
    std::sort(counts.begin(), counts.end());
    std::vector<LorenzPoint> out;
    out.reserve(counts.size() + 1);
    out.push_back({0.0, 0.0});
    std::int64_t running = 0;
    const auto n = static_cast<double>(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        running += counts[k];
        out.push_back({static_cast<double>(k + 1) / n, static_cast<double>(running) / static_cast<double>(total)});
    }
    return out;
}

/// Linear interpolation of the Lorenz curve at paper share `x`.
inline double lorenz_at(const std::vector<LorenzPoint>& curve, double x) {
    if (curve.empty()) throw DomainError("lorenz_at: empty curve");
    if (x <= curve.front().paper_share) return curve.front().citation_share;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (x <= curve[i].paper_share) {
            const auto& a = curve[i - 1];
            const auto& b = curve[i];
            const double w = (x - a.paper_share) / (b.paper_share - a.paper_share);
            return a.citation_share + w * (b.citation_share - a.citation_share);
        }
    }
    return curve.back().citation_share;
}

/// Gini coefficient: twice the area between the diagonal and the curve.
inline double gini(const std::vector<LorenzPoint>& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double dx = curve[i].paper_share - curve[i - 1].paper_share;
        area += dx * 0.5 * (curve[i].citation_share + curve[i - 1].citation_share);
    }
    return 1.0 - 2.0 * area;
}

struct AgePoint {
    int age = 0;
    std::int64_t citations = 0;
};

/// Total citations received k years after publication, over all items. Requires
/// per-year histories and a single publication year. With `drop_final_year`, the
/// latest citation year present in the data (usually incomplete) is left out.
inline std::vector<AgePoint> age_profile(const CitationCorpus& corpus, bool drop_final_year = false) {
    if (corpus.items.empty()) throw DomainError("age_profile: empty corpus");
    const auto year = common_year(corpus.items);
    if (!year) throw DomainError("age_profile: items have different publication years");
    if (!corpus.has_yearly_data()) throw DomainError("age_profile: per-year citation data missing");

    int final_year = *year;
    for (const auto& p : corpus.items)
        for (const auto& yc : *p.yearly_citations) final_year = std::max(final_year, yc.year);

    std::map<int, std::int64_t> by_age;
    for (const auto& p : corpus.items) {
        for (const auto& yc : *p.yearly_citations) {
            if (yc.year < *year) throw DomainError("age_profile: citation before publication");
            if (drop_final_year && yc.year == final_year) continue;
            by_age[yc.year - *year] += yc.count;
        }
    }
    std::vector<AgePoint> out;
    out.reserve(by_age.size());
    for (const auto& [age, count] : by_age) out.push_back({age, count});
    return out;
}

class UnreachableH : public DomainError {
public:
    using DomainError::DomainError;
};

/// Expected number of papers needed so that h of them have >= h citations: h / p(h).
inline double required_papers(std::int64_t h, const CitationDistribution& dist) {
    if (h < 1) throw DomainError("required_papers: h must be positive");
    const double ph = dist.p(h);
    if (ph == 0.0) throw UnreachableH("required_papers: no item has " + std::to_string(h) + " citations");
    return static_cast<double>(h) / ph;
}

struct CurvePoint {
    std::int64_t P = 0;
    std::int64_t h = 0;
};

/// Step curve h(P) = max{h : required_papers(h) <= P} for P = 1..P_max (0 if none).
inline std::vector<CurvePoint> expected_h_curve(const CitationDistribution& dist, std::int64_t P_max) {
    if (P_max < 1) throw DomainError("expected_h_curve: P_max must be at least 1");
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(P_max));
    const std::int64_t n = dist.n_items();
    std::int64_t h = 0;
    for (std::int64_t P = 1; P <= P_max; ++P) {
        // h / (count/n) <= P  <=>  h * n <= P * count, kept in integers
        while (h + 1 <= dist.max_citations()) {
            const std::int64_t next = h + 1;
            const auto count = static_cast<__int128>(dist.count_at_least(next));
            if (static_cast<__int128>(next) * n <= static_cast<__int128>(P) * count)
                h = next;
            else
                break;
        }
        out.push_back({P, h});
    }
    return out;
}

}  // namespace hdev
