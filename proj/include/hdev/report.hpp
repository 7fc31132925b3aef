#pragma once

// Text, CSV and JSON renderings of analysis results. CSV/table output uses fixed
// precision (h integer; h_m and deltas one decimal); JSON carries full precision.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdev/citestats.hpp"
#include "hdev/deviation.hpp"
#include "hdev/detail/csv.hpp"
#include "hdev/fitting.hpp"
#include "hdev/indices.hpp"

namespace hdev {

/// printf-style fixed formatting; avoids iostream state leaking between writers.
inline std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

/// Shortest round-trip representation.
inline std::string exact(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

inline nlohmann::json to_json(const FitResult& f) {
    nlohmann::json j = {{"family", std::string(to_string(f.family))},
                        {"amplitude", f.amplitude},
                        {"exponent", f.exponent},
                        {"chi2", f.chi2},
                        {"r_loglog", std::isnan(f.r_loglog) ? nlohmann::json() : nlohmann::json(f.r_loglog)},
                        {"n", f.n},
                        {"residual_sd", f.residual_sd},
                        {"degenerate", f.degenerate}};
    if (f.family == ModelFamily::GlanzelSchubert) {
        const auto [px, cx] = gs_equivalent_exponents(f.exponent);
        j["equivalent_P_exponent"] = px;
        j["equivalent_C_exponent"] = cx;
    }
    return j;
}

inline void write_chi2_profile_csv(std::ostream& out, std::span<const ProfilePoint> profile) {
    out << "exponent,chi2\n";
    for (const auto& p : profile) out << exact(p.exponent) << ',' << exact(p.chi2) << '\n';
}

inline nlohmann::json to_json(const IndexSet& s) {
    return {{"researcher_id", s.researcher_id}, {"P", s.P},     {"C", s.C},
            {"h", s.h},                         {"h_m", s.h_m}, {"h_n", s.h_n},
            {"mean_citations", s.mean_citations}};
}

inline void write_indices_csv(std::ostream& out, std::span<const IndexSet> rows) {
    out << "researcher_id,P,C,h,h_m,h_n,mean_citations\n";
    for (const auto& s : rows)
        out << detail::quote_csv_field(s.researcher_id) << ',' << s.P << ',' << s.C << ',' << s.h << ','
            << fixed(s.h_m, 1) << ',' << fixed(s.h_n, 3) << ',' << fixed(s.mean_citations, 1) << '\n';
}

inline constexpr std::string_view kDeviationCsvHeader = "researcher_id,P,C,h,delta_h,h_m,delta_h_m,flag_h,flag_hm";

inline void write_deviations_csv(std::ostream& out, std::span<const DeviationReport> rows) {
    out << kDeviationCsvHeader << '\n';
    for (const auto& r : rows)
        out << detail::quote_csv_field(r.researcher_id) << ',' << r.P << ',' << r.C << ',' << r.h << ','
            << fixed(r.delta_h, 1) << ',' << fixed(r.h_m, 1) << ',' << fixed(r.delta_h_m, 1) << ','
            << (r.outside_interval_h ? 1 : 0) << ',' << (r.outside_interval_h_m ? 1 : 0) << '\n';
}

inline nlohmann::json to_json(const DeviationReport& r) {
    return {{"researcher_id", r.researcher_id},
            {"P", r.P},
            {"C", r.C},
            {"h", r.h},
            {"delta_h", r.delta_h},
            {"h_m", r.h_m},
            {"delta_h_m", r.delta_h_m},
            {"flag_h", r.outside_interval_h},
            {"flag_hm", r.outside_interval_h_m}};
}

template <class T>
nlohmann::json to_json_array(std::span<const T> rows) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    return arr;
}

inline void write_ccdf_csv(std::ostream& out, const CitationDistribution& dist) {
    out << "citations,p\n";
    for (const auto& [c, p] : dist.change_points()) out << c << ',' << exact(p) << '\n';
}

inline nlohmann::json to_json(const CitationDistribution& dist) {
    auto pts = nlohmann::json::array();
    for (const auto& [c, p] : dist.change_points()) pts.push_back({c, p});
    return {{"n_items", dist.n_items()}, {"max_citations", dist.max_citations()}, {"change_points", pts}};
}

inline void write_lorenz_csv(std::ostream& out, std::span<const LorenzPoint> curve) {
    out << "paper_share,citation_share\n";
    for (const auto& p : curve) out << exact(p.paper_share) << ',' << exact(p.citation_share) << '\n';
}

inline void write_age_profile_csv(std::ostream& out, std::span<const AgePoint> profile) {
    out << "years_since_publication,citations\n";
    for (const auto& p : profile) out << p.age << ',' << p.citations << '\n';
}

inline void write_expected_h_csv(std::ostream& out, std::span<const CurvePoint> curve) {
    out << "P,expected_h\n";
    for (const auto& p : curve) out << p.P << ',' << p.h << '\n';
}

}  // namespace hdev
