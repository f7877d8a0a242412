#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "t2i/error.hpp"
#include "t2i/types.hpp"

namespace t2i {

struct LlmConfig {
  std::string base_url = "http://127.0.0.1:11434/v1";
  std::string model_name = "llama3";
  std::string api_key_env = "T2I_LLM_API_KEY";
  double timeout_seconds = 60;
  int max_retries = 2;
  double temperature = 0;  // pinned
  std::size_t max_concurrency = 4;
  std::chrono::milliseconds backoff_base{250};
};

/// Defaults overridden by T2I_LLM_BASE_URL and T2I_LLM_MODEL.
LlmConfig llm_config_from_env();

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatRequest {
  std::string model;
  double temperature = 0;
  std::vector<ChatMessage> messages;
};

Json to_json(const ChatRequest& request);

class LlmHttpError : public Error {
 public:
  LlmHttpError(int status, const std::string& message)
      : Error(ErrorCode::LlmHttpError, message), status_(status) {}
  /// HTTP status, or 0 when no response was received.
  int status() const noexcept { return status_; }

 private:
  int status_;
};

/// Returns the assistant text of a chat completion. Implementations throw
/// Error(LlmTimeout), LlmHttpError or Error(LlmMalformedOutput).
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

/// choices[0].message.content of an OpenAI-style response body.
std::string completion_text(std::string_view body);

/// POST {base_url}/chat/completions with bearer auth from the environment
/// variable named by api_key_env. At most max_concurrency requests are in
/// flight; timeouts, connection failures, 429 and 5xx are retried up to
/// max_retries times with exponential backoff.
class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(LlmConfig config);
  std::string complete(const ChatRequest& request) override;

 private:
  std::string attempt(const std::string& body);

  LlmConfig config_;
  std::counting_semaphore<> slots_;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Key of a request in a fixture file: hex FNV-1a-64 of the last user
/// message.
std::string fixture_key(const ChatRequest& request);

/// Replays recorded responses. Fixture file: JSON object mapping
/// fixture_key -> entry, where the entry is the assistant text (string),
/// a provider response body (object with "choices"), {"status": N} for an
/// HTTP failure or {"timeout": true}.
class FixtureChatTransport : public ChatTransport {
 public:
  explicit FixtureChatTransport(Json fixtures);
  static Json load(const std::string& path);

  std::string complete(const ChatRequest& request) override;
  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  Json fixtures_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace t2i
