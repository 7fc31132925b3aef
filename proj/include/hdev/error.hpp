#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdev {

/// Input that violates a record schema or a field invariant.
/// `line` is 1-based for CSV input and the 1-based record number for JSON;
/// 0 means no location is known.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string source, std::size_t line, std::string field, const std::string& what)
        : std::runtime_error(format(source, line, field, what)),
          source_(std::move(source)),
          line_(line),
          field_(std::move(field)) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& source, std::size_t line, const std::string& field,
                              const std::string& what) {
        std::string out;
        if (!source.empty()) out += source;
        if (line != 0) out += (out.empty() ? "" : ":") + std::to_string(line);
        if (!field.empty()) out += (out.empty() ? "" : ": ") + std::string("field '") + field + "'";
        if (!out.empty()) out += ": ";
        return out + what;
    }

    std::string source_;
    std::size_t line_;
    std::string field_;
};

/// Precondition failure in a numerical routine (bad bounds, too few points, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hdev
