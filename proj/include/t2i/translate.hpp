#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "t2i/dataprofile.hpp"
#include "t2i/error.hpp"
#include "t2i/llm_client.hpp"
#include "t2i/refine.hpp"

namespace t2i {

inline constexpr std::string_view kOffTopicSentinel = "OFF_TOPIC";
inline constexpr std::string_view kOffTopicMessage =
    "Looks like you are providing incorrect question, which is not related to your dataset. "
    "Please provide valid question for your dataset!";
inline constexpr std::string_view kWrongQuestion = "Wrong question for the data.";

/// Bumped whenever the prompt text changes.
inline constexpr std::string_view kPromptVersion = "sql-v1";

enum class TranslationSource { Llm, Offline };
std::string_view to_string(TranslationSource s);

struct TranslationResult {
  std::string sql;  // empty when off_topic
  TranslationSource source = TranslationSource::Offline;
  std::optional<std::string> raw;
  bool off_topic = false;
};

/// System + user messages for the SQL prompt (see docs/prompts.md).
std::vector<ChatMessage> build_sql_prompt(std::string_view question, const TableProfile& profile);

/// Pulls the first SELECT statement out of a model reply: code fences and
/// backticks are stripped and the statement ends at the first ';' outside
/// quotes. Returns nullopt for the off-topic sentinel. Throws
/// Error(LlmMalformedOutput) when there is neither.
std::optional<std::string> extract_sql(std::string_view reply);

TranslationResult llm_to_sql(std::string_view question, const TableProfile& profile,
                             ChatTransport& transport, const LlmConfig& config);

/// Deterministic rule translator. Question words are matched to columns by
/// name_similarity; rules are tried in order:
///   1. "top N <measure> [by|with] [<label>]" -> ORDER BY measure DESC LIMIT N
///   2. "average|total|min|max <measure> per|by <key>" -> GROUP BY key
///   3. "compare <m1> and <m2> [for top N <key>]" -> several measures
///   4. any question naming columns -> plain projection
/// Questions that name no column yield the off-topic sentinel.
TranslationResult offline_to_sql(std::string_view question, const TableProfile& profile);

struct GateDecision {
  bool pass = true;
  std::optional<ErrorCode> code;  // OffTopic when rejected
  std::string message;
};

GateDecision relevance_gate(const RefinementReport& report, const TranslationResult& result);

}  // namespace t2i
