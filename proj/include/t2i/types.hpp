#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

namespace t2i {

using Json = nlohmann::ordered_json;

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;
};

struct DateTime {
  Date date;
  int hour = 0;
  int minute = 0;
  int second = 0;

  auto operator<=>(const DateTime&) const = default;
};

/// A typed table cell. monostate is SQL NULL.
using Cell = std::variant<std::monostate, std::int64_t, double, bool, Date,
                          DateTime, std::string>;

enum class ColumnType { Integer, Real, Boolean, Date, DateTime, Text };
enum class ColumnRole { Categorical, Continuous, Temporal, Identifier };

std::string_view to_string(ColumnType type);
std::string_view to_string(ColumnRole role);
std::optional<ColumnType> column_type_from_string(std::string_view s);
std::optional<ColumnRole> column_role_from_string(std::string_view s);

inline bool is_numeric(ColumnType t) {
  return t == ColumnType::Integer || t == ColumnType::Real;
}
inline bool is_temporal(ColumnType t) {
  return t == ColumnType::Date || t == ColumnType::DateTime;
}
inline bool is_null(const Cell& c) {
  return std::holds_alternative<std::monostate>(c);
}

// Accepted temporal spellings: YYYY-MM-DD, YYYY/MM/DD, DD-MM-YYYY, each
// optionally followed by " HH:MM" or " HH:MM:SS" for a datetime.
std::optional<Date> parse_date(std::string_view s);
std::optional<DateTime> parse_datetime(std::string_view s);

std::optional<std::int64_t> parse_integer(std::string_view s);
std::optional<double> parse_real(std::string_view s);

/// Canonical text for a cell: integers in decimal, reals in shortest
/// round-trip form, dates ISO-8601, NULL as the empty string.
std::string render_cell(const Cell& cell);

/// Shortest round-trip rendering of a double.
std::string format_real(double v);

Json cell_to_json(const Cell& cell);

/// ASCII lower-casing; identifiers and keywords are ASCII in this project.
std::string ascii_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

}  // namespace t2i
