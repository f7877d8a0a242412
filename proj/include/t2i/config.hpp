#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "t2i/llm_client.hpp"

namespace t2i {

using TomlValue = std::variant<std::string, std::int64_t, double, bool>;

/// Flat "section.key" -> value map from the TOML subset used by the config
/// file: [section] headers, key = value lines with basic strings, integers,
/// floats and booleans, and # comments. Throws Error(ConfigError).
std::map<std::string, TomlValue> parse_toml(std::string_view text);

struct ServiceConfig {
  std::string data_dir = "./t2i-data";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string ui_dir;  // served under /ui when set
  bool llm_enabled = false;
  std::string llm_fixtures;  // replay file instead of HTTP when set
  LlmConfig llm;
};

/// Reads `path` (or $T2I_CONFIG, or ./t2i.toml; a missing default file is
/// fine), then applies T2I_DATA_DIR, T2I_PORT, T2I_LLM_BASE_URL and
/// T2I_LLM_MODEL. Setting T2I_LLM_BASE_URL enables the LLM.
ServiceConfig load_config(std::optional<std::string> path = std::nullopt);

/// Same, from file contents; environment overrides still apply.
ServiceConfig config_from_toml(std::string_view text);

}  // namespace t2i
