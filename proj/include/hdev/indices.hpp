#pragma once

// Scalar indices for a researcher: h, the fractional multi-author h_m, P, C and
// the two normalisations h/P and C/P.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdev/error.hpp"
#include "hdev/records.hpp"

namespace hdev {

/// Largest k such that at least k of the counts are >= k. Zero for an empty list.
inline int h_index(std::span<const std::int64_t> citations) {
    std::vector<std::int64_t> sorted(citations.begin(), citations.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    int h = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= static_cast<std::int64_t>(i + 1))
            h = static_cast<int>(i + 1);
        else
            break;
    }
    return h;
}

struct AuthoredCount {
    std::int64_t citations = 0;
    int n_authors = 1;
};

inline constexpr double kRankSlack = 1e-9;  // absorbs rounding in sums of 1/n

/// Multi-author h_m: papers ranked by citations, each contributing 1/n_authors to
/// the effective rank. Returns the largest effective rank still covered by its
/// paper's citation count.
///
/// Ties in citations are ordered by n_authors descending, so the smallest rank
/// increments are consumed first.
inline double hm_index(std::span<const AuthoredCount> papers) {
    std::vector<AuthoredCount> sorted(papers.begin(), papers.end());
    for (const auto& p : sorted)
        if (p.n_authors < 1) throw DomainError("hm_index: n_authors must be at least 1");
    std::sort(sorted.begin(), sorted.end(), [](const AuthoredCount& a, const AuthoredCount& b) {
        if (a.citations != b.citations) return a.citations > b.citations;
        return a.n_authors > b.n_authors;
    });
    double rank = 0.0;
    double best = 0.0;
    for (const auto& p : sorted) {
        rank += 1.0 / p.n_authors;
        // citations are non-increasing and rank grows, so the first failure is final
        if (static_cast<double>(p.citations) < rank - kRankSlack) break;
        best = rank;
    }
    return best;
}

struct IndexSet {
    std::string researcher_id;
    std::size_t P = 0;
    std::int64_t C = 0;
    int h = 0;
    double h_m = 0.0;
    double h_n = 0.0;
    double mean_citations = 0.0;
};

inline IndexSet index_set(const ResearcherProfile& profile) {
    if (profile.papers.empty())
        throw DomainError("empty profile: '" + profile.researcher_id + "' has no papers");
    IndexSet out;
    out.researcher_id = profile.researcher_id;
    out.P = profile.papers.size();
    out.C = profile.total_citations();
    const auto counts = profile.citation_counts();
    out.h = h_index(counts);
    std::vector<AuthoredCount> authored;
    authored.reserve(profile.papers.size());
    for (const auto& p : profile.papers) authored.push_back({p.citations, p.n_authors});
    out.h_m = hm_index(authored);
    out.h_n = static_cast<double>(out.h) / static_cast<double>(out.P);
    out.mean_citations = static_cast<double>(out.C) / static_cast<double>(out.P);
    return out;
}

}  // namespace hdev
