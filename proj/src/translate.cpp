#include "t2i/translate.hpp"

#include <cctype>

namespace t2i {

namespace {

constexpr std::string_view kSystemPrompt =
    "You translate questions about one table into SQL.\n"
    "Reply with exactly one SELECT statement over the table described below and nothing else.\n"
    "Use only the table and column names from the schema.\n"
    "Allowed clauses: SELECT [DISTINCT], FROM, WHERE, GROUP BY, ORDER BY, LIMIT.\n"
    "Allowed functions: COUNT, SUM, AVG, MIN, MAX.\n"
    "If the question is not about this table, reply with the single word OFF_TOPIC.";

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string strip_fences(std::string_view reply) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= reply.size()) {
    auto nl = reply.find('\n', pos);
    std::string_view line = reply.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                            : nl - pos);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line.substr(first, 3) != "```") {
      out.append(line);
      out += '\n';
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::size_t find_word(std::string_view text, std::string_view word) {
  for (std::size_t i = 0; i + word.size() <= text.size(); ++i) {
    if (!iequals(text.substr(i, word.size()), word)) continue;
    bool left = i == 0 || !word_char(text[i - 1]);
    bool right = i + word.size() == text.size() || !word_char(text[i + word.size()]);
    if (left && right) return i;
  }
  return std::string_view::npos;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n`");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n`");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view to_string(TranslationSource s) {
  return s == TranslationSource::Llm ? "llm" : "offline";
}

std::vector<ChatMessage> build_sql_prompt(std::string_view question, const TableProfile& profile) {
  std::string user = "Schema:\n" + render_ddl(profile) + "\n\nQuestion: " + std::string(question);
  return {{"system", std::string(kSystemPrompt)}, {"user", std::move(user)}};
}

std::optional<std::string> extract_sql(std::string_view reply) {
  const std::string text = strip_fences(reply);
  const std::size_t start = find_word(text, "select");
  if (start == std::string::npos) {
    if (find_word(text, kOffTopicSentinel) != std::string::npos) return std::nullopt;
    throw Error(ErrorCode::LlmMalformedOutput, "model reply contains no SELECT statement");
  }
  std::size_t end = text.size();
  char quote = 0;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == ';' || c == '`') {
      end = i;
      break;
    }
  }
  std::string sql = trim(std::string_view(text).substr(start, end - start));
  for (char& c : sql)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  return sql;
}

TranslationResult llm_to_sql(std::string_view question, const TableProfile& profile,
                             ChatTransport& transport, const LlmConfig& config) {
  ChatRequest req;
  req.model = config.model_name;
  req.temperature = config.temperature;
  req.messages = build_sql_prompt(question, profile);
  std::string raw = transport.complete(req);
  TranslationResult out;
  out.source = TranslationSource::Llm;
  auto sql = extract_sql(raw);
  out.raw = std::move(raw);
  if (sql) {
    out.sql = std::move(*sql);
  } else {
    out.off_topic = true;
  }
  return out;
}

GateDecision relevance_gate(const RefinementReport& report, const TranslationResult& result) {
  GateDecision d;
  if (result.off_topic || !report.unresolved.empty()) {
    d.pass = false;
    d.code = ErrorCode::OffTopic;
    d.message = std::string(kOffTopicMessage);
  }
  return d;
}

}  // namespace t2i
