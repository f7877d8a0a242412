#include "t2i/llm_client.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"

namespace t2i {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;    // prefix, no trailing slash
};

Endpoint split_url(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos)
    throw Error(ErrorCode::ConfigError, "LLM base URL has no scheme: " + url);
  auto slash = url.find('/', scheme + 3);
  Endpoint e;
  e.origin = url.substr(0, slash);
  e.path = slash == std::string::npos ? "" : url.substr(slash);
  while (!e.path.empty() && e.path.back() == '/') e.path.pop_back();
  return e;
}

const char* env_or_null(const std::string& name) {
  if (name.empty()) return nullptr;
  return std::getenv(name.c_str());
}

// Released when the request finishes, however it finishes.
class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<>& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<>& s_;
};

bool retryable(int status) { return status == 0 || status == 429 || status >= 500; }

}  // namespace

LlmConfig llm_config_from_env() {
  LlmConfig cfg;
  if (const char* v = std::getenv("T2I_LLM_BASE_URL"); v && *v) cfg.base_url = v;
  if (const char* v = std::getenv("T2I_LLM_MODEL"); v && *v) cfg.model_name = v;
  return cfg;
}

Json to_json(const ChatRequest& request) {
  Json j;
  j["model"] = request.model;
  j["temperature"] = request.temperature;
  j["messages"] = Json::array();
  for (const auto& m : request.messages)
    j["messages"].push_back(Json{{"role", m.role}, {"content", m.content}});
  return j;
}

std::string completion_text(std::string_view body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::LlmMalformedOutput, "provider response is not JSON");
  const Json* content = nullptr;
  if (j.is_object() && j.contains("choices") && j["choices"].is_array() && !j["choices"].empty()) {
    const Json& choice = j["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content"))
      content = &choice["message"]["content"];
  }
  if (!content || !content->is_string())
    throw Error(ErrorCode::LlmMalformedOutput, "provider response has no message content");
  return content->get<std::string>();
}

HttpChatTransport::HttpChatTransport(LlmConfig config)
    : config_(std::move(config)),
      slots_(static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config_.max_concurrency))) {
  if (!(config_.timeout_seconds > 0))
    throw Error(ErrorCode::ConfigError, "LLM timeout must be positive");
  split_url(config_.base_url);
}

std::string HttpChatTransport::complete(const ChatRequest& request) {
  ChatRequest req = request;
  req.temperature = config_.temperature;
  if (req.model.empty()) req.model = config_.model_name;
  const std::string body = to_json(req).dump();

  SlotGuard guard(slots_);
  for (int attempt_no = 0;; ++attempt_no) {
    try {
      return attempt(body);
    } catch (const LlmHttpError& e) {
      if (!retryable(e.status()) || attempt_no >= config_.max_retries) throw;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LlmTimeout || attempt_no >= config_.max_retries) throw;
    }
    std::this_thread::sleep_for(config_.backoff_base * (1 << attempt_no));
  }
}

std::string HttpChatTransport::attempt(const std::string& body) {
  const Endpoint ep = split_url(config_.base_url);
  httplib::Client client(ep.origin);
  const auto seconds = static_cast<time_t>(config_.timeout_seconds);
  const auto micros = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  httplib::Headers headers;
  if (const char* key = env_or_null(config_.api_key_env); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  auto res = client.Post(ep.path + "/chat/completions", headers, body, "application/json");
  if (!res) {
    auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read)
      throw Error(ErrorCode::LlmTimeout, "LLM request timed out (" + httplib::to_string(err) + ")");
    throw LlmHttpError(0, "LLM request failed: " + httplib::to_string(err));
  }
  if (res->status < 200 || res->status >= 300)
    throw LlmHttpError(res->status, "LLM endpoint returned HTTP " + std::to_string(res->status));
  return completion_text(res->body);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::string fixture_key(const ChatRequest& request) {
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it)
    if (it->role == "user") return hex64(fnv1a64(it->content));
  return hex64(fnv1a64(""));
}

FixtureChatTransport::FixtureChatTransport(Json fixtures) : fixtures_(std::move(fixtures)) {
  if (!fixtures_.is_object())
    throw Error(ErrorCode::ConfigError, "LLM fixture file must hold a JSON object");
}

Json FixtureChatTransport::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open fixture file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = Json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ConfigError, "fixture file is not JSON: " + path);
  return j;
}

std::string FixtureChatTransport::complete(const ChatRequest& request) {
  ++calls_;
  const std::string key = fixture_key(request);
  auto it = fixtures_.find(key);
  if (it == fixtures_.end()) throw LlmHttpError(404, "no recorded response for request " + key);
  const Json& entry = *it;
  if (entry.is_string()) return entry.get<std::string>();
  if (entry.is_object()) {
    if (entry.value("timeout", false)) throw Error(ErrorCode::LlmTimeout, "recorded timeout");
    if (entry.contains("choices")) return completion_text(entry.dump());
    if (entry.contains("status")) {
      int status = entry["status"].get<int>();
      throw LlmHttpError(status, "LLM endpoint returned HTTP " + std::to_string(status));
    }
  }
  throw Error(ErrorCode::LlmMalformedOutput, "unrecognised fixture entry for " + key);
}

}  // namespace t2i
