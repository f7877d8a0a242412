#include "t2i/insights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace t2i {

namespace {

constexpr std::string_view kInsightSystemPrompt =
    "You write short factual insights about a table of query results.\n"
    "Reply with a bullet list, one insight per line, at most 500 words in total.\n"
    "Only state facts that can be read or computed from the table.";

std::optional<double> numeric_value(const Cell& c) {
  if (auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&c)) return *d;
  return std::nullopt;
}

std::optional<std::size_t> label_column(const ResultTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    auto r = t.columns[i].role;
    if (r == ColumnRole::Categorical || r == ColumnRole::Identifier) return i;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i].role == ColumnRole::Temporal) return i;
  return std::nullopt;
}

std::string row_label(const ResultTable& t, std::optional<std::size_t> label, std::size_t row) {
  if (label && !is_null(t.rows[row][*label])) return render_cell(t.rows[row][*label]);
  return "row " + std::to_string(row + 1);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_marker(std::string line) {
  if (line.starts_with("\xE2\x80\xA2")) return trim(line.substr(3));
  if (line.starts_with("- ") || line.starts_with("* ")) return trim(line.substr(2));
  std::size_t d = 0;
  while (d < line.size() && d < 3 && line[d] >= '0' && line[d] <= '9') ++d;
  if (d > 0 && d + 1 < line.size() && (line[d] == '.' || line[d] == ')') && line[d + 1] == ' ')
    return trim(line.substr(d + 2));
  return line;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::size_t total_words(const std::vector<std::string>& bullets) {
  std::size_t n = 0;
  for (const auto& b : bullets) n += count_words(b);
  return n;
}

}  // namespace

std::string_view to_string(InsightSource s) { return s == InsightSource::Llm ? "llm" : "template"; }

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

std::string format_2dp(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

InsightReport template_insights(const ResultTable& result) {
  InsightReport report;
  report.source = InsightSource::Template;
  const std::size_t n = result.rows.size();
  if (n == 0) {
    report.bullets.emplace_back(kNoRowsBullet);
    report.word_count = count_words(kNoRowsBullet);
    return report;
  }
  auto& b = report.bullets;
  b.push_back("The result contains " + std::to_string(n) + (n == 1 ? " row." : " rows."));

  const auto label = label_column(result);
  std::vector<std::size_t> continuous;
  for (std::size_t c = 0; c < result.columns.size(); ++c)
    if (result.columns[c].role == ColumnRole::Continuous) continuous.push_back(c);

  for (auto c : continuous) {
    const std::string& name = result.columns[c].name;
    std::vector<std::pair<double, std::size_t>> values;
    for (std::size_t r = 0; r < n; ++r)
      if (auto v = numeric_value(result.rows[r][c])) values.emplace_back(*v, r);
    if (values.empty()) {
      b.push_back("In " + name + ", all values are missing.");
      continue;
    }
    std::stable_sort(values.begin(), values.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    const auto& top = values[0];
    b.push_back("In " + name + ", " + row_label(result, label, top.second) + " leads with " +
                format_2dp(top.first) + ".");
    if (values.size() >= 2) {
      const auto& second = values[1];
      b.push_back("In " + name + ", the gap between the top two is " +
                  format_2dp(top.first - second.first) + " (" +
                  row_label(result, label, top.second) + " ahead of " +
                  row_label(result, label, second.second) + ").");
    }
    double total = 0;
    for (const auto& v : values) total += v.first;
    const double mean = total / static_cast<double>(values.size());
    b.push_back("In " + name + ", the average is " + format_2dp(mean) + " and the total is " +
                format_2dp(total) + ".");
  }

  if (continuous.size() == 2) {
    const auto cx = continuous[0];
    const auto cy = continuous[1];
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : result.rows) {
      auto x = numeric_value(row[cx]);
      auto y = numeric_value(row[cy]);
      if (x && y) pts.emplace_back(*x, *y);
    }
    if (pts.size() >= 2) {
      double mx = 0, my = 0;
      for (auto [x, y] : pts) {
        mx += x;
        my += y;
      }
      mx /= static_cast<double>(pts.size());
      my /= static_cast<double>(pts.size());
      double sxy = 0, sxx = 0, syy = 0;
      for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
      }
      if (sxx > 0 && syy > 0) {
        const double r = sxy / std::sqrt(sxx * syy);
        const std::string& a = result.columns[cx].name;
        const std::string& c = result.columns[cy].name;
        const std::string rs = format_2dp(r);
        if (rs == "0.00") {
          b.push_back(a + " and " + c + " show no linear correlation (r = 0.00).");
        } else {
          b.push_back(a + " and " + c + " are " + (r > 0 ? "positively" : "negatively") +
                      " correlated (r = " + rs + ").");
        }
      }
    }
  }

  while (b.size() > 1 && total_words(b) > kMaxInsightWords) b.pop_back();
  report.word_count = total_words(b);
  return report;
}

InsightReport insights_from_text(std::string_view text) {
  InsightReport report;
  report.source = InsightSource::Llm;
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                           : nl - pos));
    line = strip_marker(std::move(line));
    if (!line.empty()) lines.push_back(std::move(line));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::LlmMalformedOutput, "model returned no insights");

  if (total_words(lines) <= kMaxInsightWords) {
    report.bullets = std::move(lines);
  } else {
    std::size_t budget = kMaxInsightWords - 1;
    for (const auto& line : lines) {
      auto words = split_words(line);
      if (words.size() <= budget) {
        report.bullets.push_back(line);
        budget -= words.size();
        continue;
      }
      std::string cut;
      for (std::size_t i = 0; i < budget; ++i) cut += words[i] + " ";
      cut += kTruncationMarker;
      report.bullets.push_back(std::move(cut));
      break;
    }
  }
  report.word_count = total_words(report.bullets);
  return report;
}

std::vector<ChatMessage> build_insight_prompt(const ResultTable& result) {
  return {{"system", std::string(kInsightSystemPrompt)},
          {"user", "Table (JSON):\n" + to_json(result).dump()}};
}

InsightReport llm_insights(const ResultTable& result, ChatTransport& transport,
                           const LlmConfig& config) {
  ChatRequest req;
  req.model = config.model_name;
  req.temperature = config.temperature;
  req.messages = build_insight_prompt(result);
  return insights_from_text(transport.complete(req));
}

Json to_json(const InsightReport& report) {
  Json j;
  j["bullets"] = report.bullets;
  j["word_count"] = report.word_count;
  j["source"] = std::string(to_string(report.source));
  return j;
}

}  // namespace t2i
