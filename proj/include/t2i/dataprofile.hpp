#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "t2i/types.hpp"

namespace t2i {

struct ColumnProfile {
  std::string name;
  ColumnType inferred_type = ColumnType::Text;
  ColumnRole role = ColumnRole::Categorical;
  std::size_t null_count = 0;
  std::size_t distinct_count = 0;

  /// Numeric columns with few distinct values (at most min(12, rows/2))
  /// can be charted as categories.
  bool categorical_capable(std::size_t row_count) const;

  bool operator==(const ColumnProfile&) const = default;
};

struct TableProfile {
  std::string table_name;
  std::size_t row_count = 0;
  std::size_t column_count = 0;
  std::vector<ColumnProfile> columns;
  std::optional<std::string> primary_key;

  /// Case-insensitive lookup.
  const ColumnProfile* find(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const TableProfile&) const = default;
};

/// Immutable after ingestion. Rows are row-major; each row has exactly
/// profile.column_count cells.
struct Dataset {
  TableProfile profile;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const Dataset&) const = default;
};

/// RFC 4180 reader. Returns header + records as raw text; a quoted empty
/// field and an unquoted empty field are both returned as "".
std::vector<std::vector<std::string>> parse_csv(std::string_view bytes);

bool is_valid_utf8(std::string_view bytes);

/// Parses, validates and types a CSV file. Empty cells become NULL; no row is
/// dropped and no value is rewritten beyond type coercion.
Dataset ingest_csv(std::string_view bytes, std::string table_name);

/// Type and role inference for one column of raw cells (empty = NULL).
ColumnProfile infer_column(std::string name, std::span<const std::string> cells);

/// Role for already-typed values: temporal for dates, identifier for unique
/// id-named columns or (leading column only) 0/1-based increasing integers,
/// continuous for other numerics, categorical otherwise.
ColumnRole infer_role(std::string_view name, ColumnType type, std::span<const Cell> values,
                      bool leading = true);

std::optional<std::string> detect_primary_key(const Dataset& dataset);
std::optional<std::string> detect_primary_key(const TableProfile& profile);

/// Single CREATE TABLE statement; byte-identical for identical profiles.
std::string render_ddl(const TableProfile& profile);

/// "Bowling ODI.csv" -> "Bowling_ODI".
std::string table_name_from_filename(std::string_view filename);

Json to_json(const ColumnProfile& column);
Json to_json(const TableProfile& profile);
TableProfile table_profile_from_json(const Json& j);

}  // namespace t2i
