#pragma once

// Profile and citation-corpus ingestion, serialisation, and the profile
// exclusion rules applied before any population analysis.
//
// Profile CSV:      researcher_id,display_name,paper_id,year,citations,n_authors
// Profile JSON:     [{researcher_id, display_name, papers: [{paper_id, year, citations,
//                    n_authors, yearly_citations?: [[year, count], ...]}]}]
// Citation CSV:     paper_id,year,citations
// Per-year CSV:     paper_id,cite_year,count   (optional companion to the citation CSV)

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hdev/detail/csv.hpp"
#include "hdev/error.hpp"
#include "hdev/indices.hpp"
#include "hdev/records.hpp"

namespace hdev {

enum class ProfileFormat { Csv, Json };

inline constexpr std::string_view kProfileCsvHeader = "researcher_id,display_name,paper_id,year,citations,n_authors";
inline constexpr std::string_view kCitationCsvHeader = "paper_id,year,citations";
inline constexpr std::string_view kYearlyCsvHeader = "paper_id,cite_year,count";

namespace detail {

inline std::vector<std::string> header_fields(std::string_view header) {
    return *split_csv_line(header);
}

/// Reads the header line and checks it against `expected`. Returns false when the
/// stream holds no non-blank line at all.
inline bool expect_header(std::istream& in, std::string_view expected, const std::string& source,
                          std::size_t& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (is_blank(line)) continue;
        auto fields = split_csv_line(line);
        if (!fields || *fields != header_fields(expected))
            throw ValidationError(source, line_no, "", "bad header, expected '" + std::string(expected) + "'");
        return true;
    }
    return false;
}

template <class Int>
Int field_int(const std::vector<std::string>& row, std::size_t idx, const char* name, const std::string& source,
              std::size_t line_no) {
    auto v = parse_int<Int>(row[idx]);
    if (!v) throw ValidationError(source, line_no, name, "not an integer: '" + row[idx] + "'");
    return *v;
}

inline void check_or_throw(const PaperRecord& p, const std::string& source, std::size_t line_no) {
    if (auto bad = check_paper(p)) throw ValidationError(source, line_no, bad->first, bad->second);
}

inline std::optional<std::string> non_empty(std::string s) {
    if (s.empty()) return std::nullopt;
    return s;
}

}  // namespace detail

/// Parses the profile CSV format. Rows for one researcher need not be contiguous;
/// profiles appear in order of first occurrence and rows keep their file order.
inline Corpus read_profiles_csv(std::istream& in, const std::string& source = "") {
    std::size_t line_no = 0;
    if (!detail::expect_header(in, kProfileCsvHeader, source, line_no))
        throw ValidationError(source, 0, "", "no records");

    Corpus corpus;
    corpus.provenance = source;
    std::unordered_map<std::string, std::size_t> slot;
    std::vector<std::unordered_set<std::string>> seen_ids;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_blank(line)) continue;
        auto row = detail::split_csv_line(line);
        if (!row) throw ValidationError(source, line_no, "", "unterminated quoted field");
        if (row->size() != 6)
            throw ValidationError(source, line_no, "", "expected 6 fields, found " + std::to_string(row->size()));
        const auto& r = *row;
        if (r[0].empty()) throw ValidationError(source, line_no, "researcher_id", "must not be empty");

        PaperRecord p;
        p.paper_id = r[2];
        p.year = detail::field_int<int>(r, 3, "year", source, line_no);
        p.citations = detail::field_int<std::int64_t>(r, 4, "citations", source, line_no);
        p.n_authors = detail::field_int<int>(r, 5, "n_authors", source, line_no);
        detail::check_or_throw(p, source, line_no);

        auto [it, inserted] = slot.try_emplace(r[0], corpus.profiles.size());
        if (inserted) {
            corpus.profiles.push_back({r[0], detail::non_empty(r[1]), {}});
            seen_ids.emplace_back();
        }
        auto& profile = corpus.profiles[it->second];
        if (!profile.display_name && !r[1].empty()) profile.display_name = r[1];
        if (!seen_ids[it->second].insert(p.paper_id).second)
            throw ValidationError(source, line_no, "paper_id",
                                  "duplicate paper_id '" + p.paper_id + "' for researcher '" + r[0] + "'");
        profile.papers.push_back(std::move(p));
    }
    if (corpus.profiles.empty()) throw ValidationError(source, 0, "", "no records");
    return corpus;
}

namespace detail {

template <class T>
T json_get(const nlohmann::json& obj, const char* key, const std::string& source, std::size_t record) {
    if (!obj.contains(key)) throw ValidationError(source, record, key, "missing");
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(source, record, key, "wrong type");
    }
}

}  // namespace detail

/// Parses the profile JSON format. Location info in errors is the 1-based index of
/// the researcher object.
inline Corpus read_profiles_json(std::istream& in, const std::string& source = "") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        // an entirely empty document is reported the same way as an empty CSV
        if (e.byte <= 1) throw ValidationError(source, 0, "", "no records");
        throw ValidationError(source, 0, "", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ValidationError(source, 0, "", "top-level value must be an array");
    if (doc.empty()) throw ValidationError(source, 0, "", "no records");

    Corpus corpus;
    corpus.provenance = source;
    std::set<std::string> researcher_ids;
    std::size_t record = 0;
    for (const auto& obj : doc) {
        ++record;
        if (!obj.is_object()) throw ValidationError(source, record, "", "researcher entry must be an object");
        ResearcherProfile profile;
        profile.researcher_id = detail::json_get<std::string>(obj, "researcher_id", source, record);
        if (profile.researcher_id.empty()) throw ValidationError(source, record, "researcher_id", "must not be empty");
        if (!researcher_ids.insert(profile.researcher_id).second)
            throw ValidationError(source, record, "researcher_id",
                                  "duplicate researcher_id '" + profile.researcher_id + "'");
        if (obj.contains("display_name") && !obj["display_name"].is_null())
            profile.display_name = detail::non_empty(detail::json_get<std::string>(obj, "display_name", source, record));

        if (!obj.contains("papers") || !obj["papers"].is_array())
            throw ValidationError(source, record, "papers", "missing or not an array");
        std::unordered_set<std::string> paper_ids;
        for (const auto& jp : obj["papers"]) {
            if (!jp.is_object()) throw ValidationError(source, record, "papers", "entry must be an object");
            PaperRecord p;
            p.paper_id = detail::json_get<std::string>(jp, "paper_id", source, record);
            p.year = detail::json_get<int>(jp, "year", source, record);
            p.citations = detail::json_get<std::int64_t>(jp, "citations", source, record);
            p.n_authors = detail::json_get<int>(jp, "n_authors", source, record);
            if (jp.contains("yearly_citations") && !jp["yearly_citations"].is_null()) {
                std::vector<YearCount> yearly;
                const auto& arr = jp["yearly_citations"];
                if (!arr.is_array()) throw ValidationError(source, record, "yearly_citations", "must be an array");
                for (const auto& pair : arr) {
                    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                        !pair[1].is_number_integer())
                        throw ValidationError(source, record, "yearly_citations",
                                              "entries must be [year, count] integer pairs");
                    yearly.push_back({pair[0].get<int>(), pair[1].get<std::int64_t>()});
                }
                p.yearly_citations = std::move(yearly);
            }
            detail::check_or_throw(p, source, record);
            if (!paper_ids.insert(p.paper_id).second)
                throw ValidationError(source, record, "paper_id",
                                      "duplicate paper_id '" + p.paper_id + "' for researcher '" +
                                          profile.researcher_id + "'");
            profile.papers.push_back(std::move(p));
        }
        corpus.profiles.push_back(std::move(profile));
    }
    return corpus;
}

inline ProfileFormat format_from_path(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".json" ? ProfileFormat::Json : ProfileFormat::Csv;
}

inline Corpus ingest_profiles(const std::filesystem::path& path, ProfileFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path.string(), 0, "", "cannot open file");
    return format == ProfileFormat::Json ? read_profiles_json(in, path.string())
                                         : read_profiles_csv(in, path.string());
}

inline Corpus ingest_profiles(const std::filesystem::path& path) {
    return ingest_profiles(path, format_from_path(path));
}

/// Writes the profile CSV. Per-year citation histories have no CSV column and are dropped.
inline void write_profiles_csv(std::ostream& out, const Corpus& corpus) {
    out << kProfileCsvHeader << '\n';
    for (const auto& prof : corpus.profiles) {
        const auto id = detail::quote_csv_field(prof.researcher_id);
        const auto name = detail::quote_csv_field(prof.display_name.value_or(""));
        for (const auto& p : prof.papers)
            out << id << ',' << name << ',' << detail::quote_csv_field(p.paper_id) << ',' << p.year << ','
                << p.citations << ',' << p.n_authors << '\n';
    }
}

inline nlohmann::json to_json(const PaperRecord& p) {
    nlohmann::json j = {{"paper_id", p.paper_id}, {"year", p.year}, {"citations", p.citations},
                        {"n_authors", p.n_authors}};
    if (p.yearly_citations) {
        auto arr = nlohmann::json::array();
        for (const auto& yc : *p.yearly_citations) arr.push_back({yc.year, yc.count});
        j["yearly_citations"] = std::move(arr);
    }
    return j;
}

inline nlohmann::json to_json(const Corpus& corpus) {
    auto arr = nlohmann::json::array();
    for (const auto& prof : corpus.profiles) {
        nlohmann::json papers = nlohmann::json::array();
        for (const auto& p : prof.papers) papers.push_back(to_json(p));
        arr.push_back({{"researcher_id", prof.researcher_id},
                       {"display_name", prof.display_name ? nlohmann::json(*prof.display_name) : nlohmann::json()},
                       {"papers", std::move(papers)}});
    }
    return arr;
}

inline void write_profiles_json(std::ostream& out, const Corpus& corpus) { out << to_json(corpus).dump(2) << '\n'; }

inline void write_profiles(std::ostream& out, const Corpus& corpus, ProfileFormat format) {
    if (format == ProfileFormat::Json)
        write_profiles_json(out, corpus);
    else
        write_profiles_csv(out, corpus);
}

// ---------------------------------------------------------------------------
// citation corpus

/// Parses a citation corpus and, if given, its per-year companion. Every item named
/// in the companion must exist; items with no companion rows get an empty history
/// (which validates only when their citation count is zero).
inline CitationCorpus read_citation_corpus_csv(std::istream& items_in, const std::string& source = "",
                                               std::istream* yearly_in = nullptr,
                                               const std::string& yearly_source = "") {
    std::size_t line_no = 0;
    if (!detail::expect_header(items_in, kCitationCsvHeader, source, line_no))
        throw ValidationError(source, 0, "", "no records");

    std::vector<PaperRecord> items;
    std::vector<std::size_t> item_lines;
    std::unordered_map<std::string, std::size_t> index;
    std::string line;
    while (std::getline(items_in, line)) {
        ++line_no;
        if (detail::is_blank(line)) continue;
        auto row = detail::split_csv_line(line);
        if (!row) throw ValidationError(source, line_no, "", "unterminated quoted field");
        if (row->size() != 3)
            throw ValidationError(source, line_no, "", "expected 3 fields, found " + std::to_string(row->size()));
        PaperRecord p;
        p.paper_id = (*row)[0];
        p.year = detail::field_int<int>(*row, 1, "year", source, line_no);
        p.citations = detail::field_int<std::int64_t>(*row, 2, "citations", source, line_no);
        detail::check_or_throw(p, source, line_no);
        if (!index.try_emplace(p.paper_id, items.size()).second)
            throw ValidationError(source, line_no, "paper_id", "duplicate paper_id '" + p.paper_id + "'");
        items.push_back(std::move(p));
        item_lines.push_back(line_no);
    }
    if (items.empty()) throw ValidationError(source, 0, "", "no records");

    if (yearly_in != nullptr) {
        for (auto& p : items) p.yearly_citations.emplace();
        std::size_t yl = 0;
        if (detail::expect_header(*yearly_in, kYearlyCsvHeader, yearly_source, yl)) {
            while (std::getline(*yearly_in, line)) {
                ++yl;
                if (detail::is_blank(line)) continue;
                auto row = detail::split_csv_line(line);
                if (!row) throw ValidationError(yearly_source, yl, "", "unterminated quoted field");
                if (row->size() != 3)
                    throw ValidationError(yearly_source, yl, "",
                                          "expected 3 fields, found " + std::to_string(row->size()));
                auto it = index.find((*row)[0]);
                if (it == index.end())
                    throw ValidationError(yearly_source, yl, "paper_id", "unknown paper_id '" + (*row)[0] + "'");
                const int year = detail::field_int<int>(*row, 1, "cite_year", yearly_source, yl);
                const auto count = detail::field_int<std::int64_t>(*row, 2, "count", yearly_source, yl);
                items[it->second].yearly_citations->push_back({year, count});
            }
        }
        for (std::size_t i = 0; i < items.size(); ++i) detail::check_or_throw(items[i], source, item_lines[i]);
    }
    return make_citation_corpus(std::move(items));
}

inline CitationCorpus ingest_citation_corpus(const std::filesystem::path& items_path,
                                             const std::optional<std::filesystem::path>& yearly_path = std::nullopt) {
    std::ifstream in(items_path, std::ios::binary);
    if (!in) throw ValidationError(items_path.string(), 0, "", "cannot open file");
    if (!yearly_path) return read_citation_corpus_csv(in, items_path.string());
    std::ifstream yin(*yearly_path, std::ios::binary);
    if (!yin) throw ValidationError(yearly_path->string(), 0, "", "cannot open file");
    return read_citation_corpus_csv(in, items_path.string(), &yin, yearly_path->string());
}

inline void write_citation_corpus_csv(std::ostream& out, const CitationCorpus& corpus) {
    out << kCitationCsvHeader << '\n';
    for (const auto& p : corpus.items)
        out << detail::quote_csv_field(p.paper_id) << ',' << p.year << ',' << p.citations << '\n';
}

inline void write_yearly_csv(std::ostream& out, const CitationCorpus& corpus) {
    out << kYearlyCsvHeader << '\n';
    for (const auto& p : corpus.items) {
        if (!p.yearly_citations) continue;
        for (const auto& yc : *p.yearly_citations)
            out << detail::quote_csv_field(p.paper_id) << ',' << yc.year << ',' << yc.count << '\n';
    }
}

// ---------------------------------------------------------------------------
// exclusions and derived quantities

struct ExclusionRecord {
    std::string researcher_id;
    std::string reason;

    friend bool operator==(const ExclusionRecord&, const ExclusionRecord&) = default;
};

inline constexpr std::string_view kReasonNoPapers = "no papers";
inline constexpr std::string_view kReasonZeroCitations = "zero citations / h=0";

struct ExclusionResult {
    Corpus retained;
    std::vector<ExclusionRecord> excluded;
};

/// Drops profiles with no papers or no citations (a positive citation total always
/// gives h >= 1, so this is also the h = 0 rule). The retained corpus keeps
/// input order and provenance.
inline ExclusionResult apply_exclusions(const Corpus& corpus) {
    ExclusionResult out;
    out.retained.provenance = corpus.provenance;
    for (const auto& prof : corpus.profiles) {
        if (prof.papers.empty()) {
            out.excluded.push_back({prof.researcher_id, std::string(kReasonNoPapers)});
        } else if (prof.total_citations() == 0) {
            out.excluded.push_back({prof.researcher_id, std::string(kReasonZeroCitations)});
        } else {
            out.retained.profiles.push_back(prof);
        }
    }
    return out;
}

/// Inclusive span of publication years: last - first + 1.
inline int active_years(const ResearcherProfile& profile) {
    if (profile.papers.empty())
        throw DomainError("active_years: empty profile '" + profile.researcher_id + "'");
    auto [lo, hi] = std::minmax_element(profile.papers.begin(), profile.papers.end(),
                                        [](const PaperRecord& a, const PaperRecord& b) { return a.year < b.year; });
    return hi->year - lo->year + 1;
}

}  // namespace hdev
