#include "t2i/dataprofile.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "t2i/error.hpp"
#include "t2i/sql.hpp"

namespace t2i {

namespace {

struct InferredColumn {
  ColumnProfile profile;
  std::vector<Cell> typed;
};

bool is_null_text(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

bool flag_like_name(std::string_view name) {
  std::string n = ascii_lower(name);
  return n.starts_with("is_") || n.starts_with("has_") || n.ends_with("_flag") ||
         n == "flag";
}

bool id_like_name(std::string_view name) {
  return ascii_lower(name).ends_with("id");
}

std::optional<bool> parse_bool_word(std::string_view s) {
  if (iequals(s, "true")) return true;
  if (iequals(s, "false")) return false;
  return std::nullopt;
}

template <class Parse>
bool all_parse(std::span<const std::string> cells, Parse&& parse) {
  for (const auto& c : cells)
    if (!is_null_text(c) && !parse(c)) return false;
  return true;
}

ColumnType detect_type(std::string_view name, std::span<const std::string> cells) {
  bool any = std::any_of(cells.begin(), cells.end(),
                         [](const std::string& c) { return !is_null_text(c); });
  if (!any) return ColumnType::Text;
  if (all_parse(cells, [](std::string_view c) { return parse_bool_word(c).has_value(); }))
    return ColumnType::Boolean;
  if (flag_like_name(name) &&
      all_parse(cells, [](std::string_view c) { return c == "0" || c == "1"; }))
    return ColumnType::Boolean;
  if (all_parse(cells, [](std::string_view c) { return parse_integer(c).has_value(); }))
    return ColumnType::Integer;
  if (all_parse(cells, [](std::string_view c) { return parse_real(c).has_value(); }))
    return ColumnType::Real;
  if (all_parse(cells, [](std::string_view c) { return parse_date(c).has_value(); }))
    return ColumnType::Date;
  if (all_parse(cells, [](std::string_view c) {
        return parse_date(c).has_value() || parse_datetime(c).has_value();
      }))
    return ColumnType::DateTime;
  return ColumnType::Text;
}

Cell coerce(std::string_view raw, ColumnType type) {
  if (is_null_text(raw)) return std::monostate{};
  switch (type) {
    case ColumnType::Boolean:
      if (auto b = parse_bool_word(raw)) return *b;
      return raw == "1";
    case ColumnType::Integer: return *parse_integer(raw);
    case ColumnType::Real: return *parse_real(raw);
    case ColumnType::Date: return *parse_date(raw);
    case ColumnType::DateTime:
      if (auto d = parse_date(raw)) return DateTime{*d, 0, 0, 0};
      return *parse_datetime(raw);
    case ColumnType::Text: break;
  }
  return std::string(raw);
}

bool monotone_from_zero_or_one(std::span<const Cell> typed) {
  if (typed.size() < 2) return false;
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < typed.size(); ++i) {
    const auto* v = std::get_if<std::int64_t>(&typed[i]);
    if (!v) return false;
    if (i == 0) {
      if (*v != 0 && *v != 1) return false;
    } else if (*v <= prev) {
      return false;
    }
    prev = *v;
  }
  return true;
}

InferredColumn infer_and_coerce(std::string name, std::span<const std::string> cells,
                                bool leading) {
  InferredColumn out;
  ColumnType type = detect_type(name, cells);
  out.typed.reserve(cells.size());
  std::set<Cell> distinct;
  std::size_t nulls = 0;
  for (const auto& raw : cells) {
    Cell c = coerce(raw, type);
    if (is_null(c)) {
      ++nulls;
    } else {
      distinct.insert(c);
    }
    out.typed.push_back(std::move(c));
  }

  auto& p = out.profile;
  p.name = std::move(name);
  p.inferred_type = type;
  p.null_count = nulls;
  p.distinct_count = distinct.size();

  p.role = infer_role(p.name, type, out.typed, leading);
  return out;
}

std::vector<std::string> unique_header(const std::vector<std::string>& raw) {
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::string base = raw[i].empty() ? "column_" + std::to_string(i + 1) : raw[i];
    std::string name = base;
    for (int k = 2; seen.count(ascii_lower(name)); ++k) name = base + "_" + std::to_string(k);
    seen.insert(ascii_lower(name));
    names.push_back(std::move(name));
  }
  return names;
}

}  // namespace

ColumnRole infer_role(std::string_view name, ColumnType type, std::span<const Cell> values,
                      bool leading) {
  if (is_temporal(type)) return ColumnRole::Temporal;
  std::set<Cell> distinct;
  bool any_null = false;
  for (const auto& v : values) {
    if (is_null(v)) {
      any_null = true;
    } else {
      distinct.insert(v);
    }
  }
  const bool unique = !values.empty() && !any_null && distinct.size() == values.size();
  if (unique && (id_like_name(name) ||
                 (leading && type == ColumnType::Integer && monotone_from_zero_or_one(values))))
    return ColumnRole::Identifier;
  if (is_numeric(type)) return ColumnRole::Continuous;
  return ColumnRole::Categorical;
}

bool ColumnProfile::categorical_capable(std::size_t row_count) const {
  return is_numeric(inferred_type) &&
         distinct_count <= std::min<std::size_t>(12, row_count / 2);
}

const ColumnProfile* TableProfile::find(std::string_view name) const {
  for (const auto& c : columns)
    if (iequals(c.name, name)) return &c;
  return nullptr;
}

std::optional<std::size_t> TableProfile::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (iequals(columns[i].name, name)) return i;
  return std::nullopt;
}

ColumnProfile infer_column(std::string name, std::span<const std::string> cells) {
  return infer_and_coerce(std::move(name), cells, true).profile;
}

Dataset ingest_csv(std::string_view bytes, std::string table_name) {
  if (!is_valid_utf8(bytes)) throw Error(ErrorCode::NotUtf8, "input is not valid UTF-8");
  auto records = parse_csv(bytes);
  if (records.empty()) throw Error(ErrorCode::EmptyFile, "file has no header row");
  if (records.size() == 1) throw Error(ErrorCode::EmptyFile, "file has no data rows");

  const std::size_t width = records.front().size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw Error(ErrorCode::RaggedRow,
                  "record " + std::to_string(r + 1) + " has " +
                      std::to_string(records[r].size()) + " fields, header has " +
                      std::to_string(width));
    }
  }

  Dataset ds;
  const std::size_t n_rows = records.size() - 1;
  auto names = unique_header(records.front());
  ds.profile.table_name = std::move(table_name);
  ds.profile.row_count = n_rows;
  ds.profile.column_count = width;
  ds.rows.assign(n_rows, std::vector<Cell>(width));

  std::vector<std::string> column_cells(n_rows);
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t r = 0; r < n_rows; ++r) column_cells[r] = std::move(records[r + 1][c]);
    auto inferred = infer_and_coerce(names[c], column_cells, c == 0);
    for (std::size_t r = 0; r < n_rows; ++r) ds.rows[r][c] = std::move(inferred.typed[r]);
    ds.profile.columns.push_back(std::move(inferred.profile));
  }
  ds.profile.primary_key = detect_primary_key(ds.profile);
  return ds;
}

std::optional<std::string> detect_primary_key(const TableProfile& profile) {
  const ColumnProfile* first = nullptr;
  for (const auto& c : profile.columns) {
    if (profile.row_count == 0 || c.null_count != 0 || c.distinct_count != profile.row_count)
      continue;
    if (c.role == ColumnRole::Identifier) return c.name;
    if (!first) first = &c;
  }
  if (first) return first->name;
  return std::nullopt;
}

std::optional<std::string> detect_primary_key(const Dataset& dataset) {
  return detect_primary_key(dataset.profile);
}

std::string render_ddl(const TableProfile& profile) {
  std::string out = "CREATE TABLE " + sql::quote_identifier(profile.table_name) + " (";
  for (std::size_t i = 0; i < profile.columns.size(); ++i) {
    const auto& c = profile.columns[i];
    if (i) out += ", ";
    out += sql::quote_identifier(c.name);
    out += ' ';
    for (char ch : to_string(c.inferred_type))
      out += static_cast<char>(ch - 'a' + 'A');
    if (profile.primary_key && *profile.primary_key == c.name) out += " PRIMARY KEY";
  }
  out += ");";
  return out;
}

std::string table_name_from_filename(std::string_view filename) {
  auto slash = filename.find_last_of("/\\");
  if (slash != std::string_view::npos) filename.remove_prefix(slash + 1);
  auto dot = filename.find_last_of('.');
  if (dot != std::string_view::npos && dot > 0) filename = filename.substr(0, dot);
  std::string out;
  for (char c : filename) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_';
    out += ok ? c : '_';
  }
  if (out.empty()) return "dataset";
  if (out.front() >= '0' && out.front() <= '9') out = "t_" + out;
  return out;
}

Json to_json(const ColumnProfile& column) {
  Json j;
  j["name"] = column.name;
  j["inferred_type"] = std::string(to_string(column.inferred_type));
  j["role"] = std::string(to_string(column.role));
  j["null_count"] = column.null_count;
  j["distinct_count"] = column.distinct_count;
  return j;
}

Json to_json(const TableProfile& profile) {
  Json j;
  j["table_name"] = profile.table_name;
  j["row_count"] = profile.row_count;
  j["column_count"] = profile.column_count;
  j["columns"] = Json::array();
  for (const auto& c : profile.columns) j["columns"].push_back(to_json(c));
  j["primary_key"] = profile.primary_key ? Json(*profile.primary_key) : Json(nullptr);
  return j;
}

TableProfile table_profile_from_json(const Json& j) {
  try {
    TableProfile p;
    p.table_name = j.at("table_name").get<std::string>();
    p.row_count = j.at("row_count").get<std::size_t>();
    p.column_count = j.at("column_count").get<std::size_t>();
    for (const auto& c : j.at("columns")) {
      ColumnProfile col;
      col.name = c.at("name").get<std::string>();
      auto type = column_type_from_string(c.at("inferred_type").get<std::string>());
      auto role = column_role_from_string(c.at("role").get<std::string>());
      if (!type || !role) throw Error(ErrorCode::IoError, "unknown column type or role");
      col.inferred_type = *type;
      col.role = *role;
      col.null_count = c.at("null_count").get<std::size_t>();
      col.distinct_count = c.at("distinct_count").get<std::size_t>();
      p.columns.push_back(std::move(col));
    }
    if (j.contains("primary_key") && !j.at("primary_key").is_null())
      p.primary_key = j.at("primary_key").get<std::string>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("malformed profile JSON: ") + e.what());
  }
}

}  // namespace t2i
