#include "t2i/error.hpp"
#include "t2i/types.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace t2i {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::NotUtf8: return "NotUtf8";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedIdentifiers: return "UnresolvedIdentifiers";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::InvalidGrouping: return "InvalidGrouping";
    case ErrorCode::OffTopic: return "OffTopic";
    case ErrorCode::LlmTimeout: return "LlmTimeout";
    case ErrorCode::LlmHttpError: return "LlmHttpError";
    case ErrorCode::LlmMalformedOutput: return "LlmMalformedOutput";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::NoSuitableChart: return "NoSuitableChart";
    case ErrorCode::InapplicableChart: return "InapplicableChart";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::MalformedPairFile: return "MalformedPairFile";
    case ErrorCode::UnknownDataset: return "UnknownDataset";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

std::string_view wire_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyFile: return "EMPTY_FILE";
    case ErrorCode::RaggedRow: return "RAGGED_ROW";
    case ErrorCode::NotUtf8: return "NOT_UTF8";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::UnresolvedIdentifiers: return "UNRESOLVED_IDENTIFIERS";
    case ErrorCode::OffTopic: return "OFF_TOPIC";
    case ErrorCode::NoSuitableChart:
    case ErrorCode::InapplicableChart: return "NO_SUITABLE_CHART";
    case ErrorCode::LlmTimeout:
    case ErrorCode::LlmHttpError:
    case ErrorCode::LlmMalformedOutput: return "LLM_ERROR";
    case ErrorCode::EmptyDataset: return "EMPTY_DATASET";
    case ErrorCode::UnknownColumn:
    case ErrorCode::TypeMismatch:
    case ErrorCode::InvalidGrouping: return "EXECUTION_ERROR";
    case ErrorCode::EmptyInput:
    case ErrorCode::EmptyMatrix:
    case ErrorCode::MalformedPairFile: return "MALFORMED_PAIR_FILE";
    case ErrorCode::UnknownDataset: return "UNKNOWN_DATASET";
    case ErrorCode::ConfigError: return "CONFIG_ERROR";
    case ErrorCode::IoError: return "IO_ERROR";
    case ErrorCode::BadRequest: return "BAD_REQUEST";
  }
  return "INTERNAL";
}

namespace {

constexpr std::array<std::string_view, 6> kTypeNames = {
    "integer", "real", "boolean", "date", "datetime", "text"};
constexpr std::array<std::string_view, 4> kRoleNames = {
    "categorical", "continuous", "temporal", "identifier"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

bool valid_ymd(int y, int m, int d) {
  if (y < 1 || m < 1 || m > 12 || d < 1) return false;
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  int limit = kDays[static_cast<std::size_t>(m - 1)];
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (m == 2 && leap) limit = 29;
  return d <= limit;
}

std::optional<Date> parse_date_exact(std::string_view s) {
  if (s.size() != 10) return std::nullopt;
  int y = 0, m = 0, d = 0;
  if ((s[4] == '-' || s[4] == '/') && s[7] == s[4]) {
    auto ys = s.substr(0, 4), ms = s.substr(5, 2), ds = s.substr(8, 2);
    if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) return std::nullopt;
    y = to_int(ys), m = to_int(ms), d = to_int(ds);
  } else if (s[2] == '-' && s[5] == '-') {
    auto ds = s.substr(0, 2), ms = s.substr(3, 2), ys = s.substr(6, 4);
    if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) return std::nullopt;
    y = to_int(ys), m = to_int(ms), d = to_int(ds);
  } else {
    return std::nullopt;
  }
  if (!valid_ymd(y, m, d)) return std::nullopt;
  return Date{y, m, d};
}

}  // namespace

std::string_view to_string(ColumnType type) {
  return kTypeNames[static_cast<std::size_t>(type)];
}

std::string_view to_string(ColumnRole role) {
  return kRoleNames[static_cast<std::size_t>(role)];
}

std::optional<ColumnType> column_type_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kTypeNames.size(); ++i)
    if (kTypeNames[i] == s) return static_cast<ColumnType>(i);
  return std::nullopt;
}

std::optional<ColumnRole> column_role_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i)
    if (kRoleNames[i] == s) return static_cast<ColumnRole>(i);
  return std::nullopt;
}

std::optional<Date> parse_date(std::string_view s) {
  return parse_date_exact(trim(s));
}

std::optional<DateTime> parse_datetime(std::string_view s) {
  s = trim(s);
  if (s.size() < 16 || s[10] != ' ') return std::nullopt;
  auto date = parse_date_exact(s.substr(0, 10));
  if (!date) return std::nullopt;
  auto time = s.substr(11);
  if (time.size() != 5 && time.size() != 8) return std::nullopt;
  if (time[2] != ':') return std::nullopt;
  auto hs = time.substr(0, 2), ms = time.substr(3, 2);
  if (!all_digits(hs) || !all_digits(ms)) return std::nullopt;
  int sec = 0;
  if (time.size() == 8) {
    if (time[5] != ':' || !all_digits(time.substr(6, 2))) return std::nullopt;
    sec = to_int(time.substr(6, 2));
  }
  int h = to_int(hs), mi = to_int(ms);
  if (h > 23 || mi > 59 || sec > 59) return std::nullopt;
  return DateTime{*date, h, mi, sec};
}

std::optional<std::int64_t> parse_integer(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::string_view digits = s;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  bool digit = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != '-' && c != '+' && c != 'e' && c != 'E') {
      return std::nullopt;
    }
  }
  if (!digit) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  std::string out(buf.data(), ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string render_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const Date& d) const {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
      return buf;
    }
    std::string operator()(const DateTime& t) const {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d:%02d", t.date.year,
                    t.date.month, t.date.day, t.hour, t.minute, t.second);
      return buf;
    }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, cell);
}

Json cell_to_json(const Cell& cell) {
  if (is_null(cell)) return nullptr;
  if (auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (auto* b = std::get_if<bool>(&cell)) return *b;
  return render_cell(cell);
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

}  // namespace t2i
