#pragma once

// Core bibliographic records: papers, researcher profiles, and corpora.
//
// All record types are plain values. Once built they are never mutated by the
// library, so sharing them across threads needs no synchronisation.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hdev {

inline constexpr int kMinYear = 1800;
inline constexpr int kMaxYear = 2100;

struct YearCount {
    int year = 0;
    std::int64_t count = 0;

    friend bool operator==(const YearCount&, const YearCount&) = default;
};

/// One citable item.
struct PaperRecord {
    std::string paper_id;
    int year = 0;
    std::int64_t citations = 0;
    int n_authors = 1;
    std::optional<std::vector<YearCount>> yearly_citations;

    friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct ResearcherProfile {
    std::string researcher_id;
    std::optional<std::string> display_name;
    std::vector<PaperRecord> papers;

    std::size_t paper_count() const noexcept { return papers.size(); }

    std::int64_t total_citations() const noexcept {
        return std::accumulate(papers.begin(), papers.end(), std::int64_t{0},
                               [](std::int64_t acc, const PaperRecord& p) { return acc + p.citations; });
    }

    std::vector<std::int64_t> citation_counts() const {
        std::vector<std::int64_t> out;
        out.reserve(papers.size());
        for (const auto& p : papers) out.push_back(p.citations);
        return out;
    }

    friend bool operator==(const ResearcherProfile&, const ResearcherProfile&) = default;
};

struct Corpus {
    std::vector<ResearcherProfile> profiles;
    std::string provenance;

    friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// Paper population used for citation statistics; researcher identity is irrelevant.
struct CitationCorpus {
    std::vector<PaperRecord> items;
    std::optional<int> publication_year;  // set when every item shares one year

    bool has_yearly_data() const noexcept {
        if (items.empty()) return false;
        for (const auto& p : items)
            if (!p.yearly_citations) return false;
        return true;
    }
};

/// Returns the common publication year of `items`, or nullopt if they differ or are empty.
inline std::optional<int> common_year(const std::vector<PaperRecord>& items) {
    if (items.empty()) return std::nullopt;
    const int y = items.front().year;
    for (const auto& p : items)
        if (p.year != y) return std::nullopt;
    return y;
}

inline CitationCorpus make_citation_corpus(std::vector<PaperRecord> items) {
    CitationCorpus c;
    c.publication_year = common_year(items);
    c.items = std::move(items);
    return c;
}

/// Checks the field invariants of a paper. Returns the offending field name and a
/// message, or nullopt when the record is valid.
inline std::optional<std::pair<std::string, std::string>> check_paper(const PaperRecord& p) {
    if (p.paper_id.empty()) return std::pair{std::string("paper_id"), std::string("must not be empty")};
    if (p.year < kMinYear || p.year > kMaxYear)
        return std::pair{std::string("year"), "out of range [1800, 2100]: " + std::to_string(p.year)};
    if (p.citations < 0)
        return std::pair{std::string("citations"), "must be non-negative: " + std::to_string(p.citations)};
    if (p.n_authors < 1)
        return std::pair{std::string("n_authors"), "must be at least 1: " + std::to_string(p.n_authors)};
    if (p.yearly_citations) {
        std::int64_t sum = 0;
        for (const auto& yc : *p.yearly_citations) {
            if (yc.count < 0)
                return std::pair{std::string("yearly_citations"),
                                 "negative count in year " + std::to_string(yc.year)};
            if (yc.year < p.year)
                return std::pair{std::string("yearly_citations"),
                                 "citation year " + std::to_string(yc.year) + " precedes publication year " +
                                     std::to_string(p.year)};
            sum += yc.count;
        }
        if (sum != p.citations)
            return std::pair{std::string("yearly_citations"), "counts sum to " + std::to_string(sum) +
                                                                  " but citations is " +
                                                                  std::to_string(p.citations)};
    }
    return std::nullopt;
}

}  // namespace hdev
