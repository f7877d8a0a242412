#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "t2i/engine.hpp"
#include "t2i/llm_client.hpp"

namespace t2i {

inline constexpr std::size_t kMaxInsightWords = 500;
inline constexpr std::string_view kTruncationMarker = "[truncated]";
inline constexpr std::string_view kNoRowsBullet = "No rows matched the query.";

enum class InsightSource { Template, Llm };
std::string_view to_string(InsightSource s);

struct InsightReport {
  std::vector<std::string> bullets;
  std::size_t word_count = 0;
  InsightSource source = InsightSource::Template;
};

/// Whitespace-delimited tokens.
std::size_t count_words(std::string_view text);

/// Two decimals, never "-0.00".
std::string format_2dp(double v);

/// Fixed-template bullets: row count, then per continuous column the leader,
/// the gap between the top two values, mean and total, then the sign of the
/// correlation when there are exactly two continuous columns. Trailing
/// bullets are dropped to stay within the word cap.
InsightReport template_insights(const ResultTable& result);

/// Splits model text into bullets (one per non-empty line, list markers
/// removed) and truncates to the word cap, ending with kTruncationMarker.
InsightReport insights_from_text(std::string_view text);

std::vector<ChatMessage> build_insight_prompt(const ResultTable& result);

/// Throws the LLM error family; callers fall back to template_insights.
InsightReport llm_insights(const ResultTable& result, ChatTransport& transport,
                           const LlmConfig& config);

Json to_json(const InsightReport& report);

}  // namespace t2i
