#pragma once

// Minimal RFC 4180 style line splitting and field quoting.

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hdev::detail {

/// Splits one CSV line. Double-quoted fields may contain commas and doubled quotes;
/// embedded newlines are not supported. Returns nullopt on an unterminated quote.
inline std::optional<std::vector<std::string>> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (quoted) return std::nullopt;
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string quote_csv_field(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

template <class Int>
std::optional<Int> parse_int(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;
    Int value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

inline bool is_blank(std::string_view line) {
    for (char ch : line)
        if (ch != ' ' && ch != '\t' && ch != '\r') return false;
    return true;
}

}  // namespace hdev::detail
