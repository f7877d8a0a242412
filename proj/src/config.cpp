#include "t2i/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "t2i/error.hpp"

namespace t2i {

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ConfigError, "config line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool bare_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

// Value text up to an unquoted '#'.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

TomlValue parse_value(std::string_view v, std::size_t line) {
  if (v.empty()) bad(line, "missing value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') bad(line, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      char c = v[i];
      if (c != '\\') {
        out += c;
        continue;
      }
      if (++i + 1 > v.size() - 1) bad(line, "dangling escape");
      switch (v[i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: bad(line, "unsupported escape");
      }
    }
    return out;
  }
  if (v == "true") return true;
  if (v == "false") return false;
  std::string digits;
  for (char c : v)
    if (c != '_') digits += c;
  if (auto i = parse_integer(digits)) return *i;
  if (auto d = parse_real(digits)) return *d;
  bad(line, "unsupported value '" + std::string(v) + "'");
}

const std::string* get_string(const std::map<std::string, TomlValue>& m, const char* key) {
  auto it = m.find(key);
  if (it == m.end()) return nullptr;
  if (auto* s = std::get_if<std::string>(&it->second)) return s;
  throw Error(ErrorCode::ConfigError, std::string(key) + " must be a string");
}

std::optional<std::int64_t> get_int(const std::map<std::string, TomlValue>& m, const char* key) {
  auto it = m.find(key);
  if (it == m.end()) return std::nullopt;
  if (auto* i = std::get_if<std::int64_t>(&it->second)) return *i;
  throw Error(ErrorCode::ConfigError, std::string(key) + " must be an integer");
}

std::optional<double> get_number(const std::map<std::string, TomlValue>& m, const char* key) {
  auto it = m.find(key);
  if (it == m.end()) return std::nullopt;
  if (auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&it->second)) return *d;
  throw Error(ErrorCode::ConfigError, std::string(key) + " must be a number");
}

std::optional<bool> get_bool(const std::map<std::string, TomlValue>& m, const char* key) {
  auto it = m.find(key);
  if (it == m.end()) return std::nullopt;
  if (auto* b = std::get_if<bool>(&it->second)) return *b;
  throw Error(ErrorCode::ConfigError, std::string(key) + " must be a boolean");
}

int checked_port(std::int64_t p) {
  if (p < 0 || p > 65535) throw Error(ErrorCode::ConfigError, "port out of range");
  return static_cast<int>(p);
}

}  // namespace

std::map<std::string, TomlValue> parse_toml(std::string_view text) {
  std::map<std::string, TomlValue> out;
  std::string section;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad(line_no, "malformed section header");
      std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!bare_key(name)) bad(line_no, "unsupported section name");
      section = std::string(name);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(line_no, "expected key = value");
    std::string_view key = trim(line.substr(0, eq));
    if (!bare_key(key)) bad(line_no, "unsupported key '" + std::string(key) + "'");
    std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    if (out.count(full)) bad(line_no, "duplicate key '" + full + "'");
    out.emplace(std::move(full), parse_value(trim(line.substr(eq + 1)), line_no));
  }
  return out;
}

ServiceConfig config_from_toml(std::string_view text) {
  const auto m = parse_toml(text);
  ServiceConfig cfg;
  if (auto* s = get_string(m, "server.data_dir")) cfg.data_dir = *s;
  if (auto* s = get_string(m, "server.host")) cfg.host = *s;
  if (auto p = get_int(m, "server.port")) cfg.port = checked_port(*p);
  if (auto* s = get_string(m, "server.ui_dir")) cfg.ui_dir = *s;
  if (auto b = get_bool(m, "llm.enabled")) cfg.llm_enabled = *b;
  if (auto* s = get_string(m, "llm.base_url")) cfg.llm.base_url = *s;
  if (auto* s = get_string(m, "llm.model")) cfg.llm.model_name = *s;
  if (auto* s = get_string(m, "llm.api_key_env")) cfg.llm.api_key_env = *s;
  if (auto* s = get_string(m, "llm.fixtures")) cfg.llm_fixtures = *s;
  if (auto t = get_number(m, "llm.timeout_seconds")) cfg.llm.timeout_seconds = *t;
  if (auto r = get_int(m, "llm.max_retries")) cfg.llm.max_retries = static_cast<int>(*r);
  if (auto c = get_int(m, "llm.max_concurrency"))
    cfg.llm.max_concurrency = static_cast<std::size_t>(std::max<std::int64_t>(1, *c));
  if (!(cfg.llm.timeout_seconds > 0))
    throw Error(ErrorCode::ConfigError, "llm.timeout_seconds must be positive");
  if (cfg.llm.max_retries < 0) throw Error(ErrorCode::ConfigError, "llm.max_retries must be >= 0");

  if (const char* v = std::getenv("T2I_DATA_DIR"); v && *v) cfg.data_dir = v;
  if (const char* v = std::getenv("T2I_PORT"); v && *v) {
    auto p = parse_integer(v);
    if (!p) throw Error(ErrorCode::ConfigError, "T2I_PORT is not an integer");
    cfg.port = checked_port(*p);
  }
  if (const char* v = std::getenv("T2I_LLM_BASE_URL"); v && *v) {
    cfg.llm.base_url = v;
    cfg.llm_enabled = true;
  }
  if (const char* v = std::getenv("T2I_LLM_MODEL"); v && *v) cfg.llm.model_name = v;
  return cfg;
}

ServiceConfig load_config(std::optional<std::string> path) {
  bool explicit_path = path.has_value();
  if (!path) {
    if (const char* v = std::getenv("T2I_CONFIG"); v && *v) {
      path = v;
      explicit_path = true;
    } else {
      path = "t2i.toml";
    }
  }
  std::string text;
  if (std::filesystem::exists(*path)) {
    std::ifstream in(*path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (explicit_path) {
    throw Error(ErrorCode::ConfigError, "config file not found: " + *path);
  }
  return config_from_toml(text);
}

}  // namespace t2i
