#include <algorithm>
#include <array>
#include <set>

#include "t2i/refine.hpp"
#include "t2i/sql.hpp"
#include "t2i/translate.hpp"

namespace t2i {

namespace {

constexpr double kWordThreshold = 0.7;
constexpr double kPhraseThreshold = 0.9;
constexpr double kPrefixScore = 0.95;

const std::set<std::string, std::less<>>& stopwords() {
  static const std::set<std::string, std::less<>> words = {
      "a",       "about",   "all",     "also",    "an",      "and",     "any",     "are",
      "area",    "as",      "at",      "bar",     "be",      "best",    "bottom",  "box",
      "bubble",  "by",      "can",     "chart",   "charts",  "compare", "could",   "did",
      "display", "do",      "does",    "don't",   "dont",    "draw",    "each",    "every",
      "find",    "for",     "from",    "get",     "give",    "graph",   "had",     "has",
      "have",    "heat",    "heatmap", "help",    "her",     "highest", "his",     "histogram",
      "how",     "i",       "in",      "is",      "it",      "its",     "largest", "least",
      "line",    "list",    "lowest",  "many",    "map",     "max",     "maximum", "me",
      "mean",    "min",     "minimum", "most",    "much",    "my",      "no",      "not",
      "of",      "on",      "or",      "per",     "pie",     "please",  "plot",    "provide",
      "radar",   "scatter", "show",    "smallest", "sum",    "tell",    "than",    "that",
      "the",     "their",   "them",    "these",   "they",    "this",    "those",   "to",
      "top",     "total",   "versus",  "vs",      "was",     "we",      "were",    "what",
      "which",   "who",     "whom",    "whose",   "with",    "without", "would",   "you",
      "your"};
  return words;
}

bool is_stopword(std::string_view w) { return stopwords().count(w) > 0; }

bool is_digits(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
}

constexpr std::array<std::string_view, 20> kUnits = {
    "zero",    "one",     "two",       "three",    "four",    "five",    "six",
    "seven",   "eight",   "nine",      "ten",      "eleven",  "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};
constexpr std::array<std::string_view, 10> kTens = {"",      "",      "twenty",  "thirty", "forty",
                                                    "fifty", "sixty", "seventy", "eighty", "ninety"};

void spell(std::int64_t n, std::vector<std::string>& out) {
  if (n >= 1000) {
    spell(n / 1000, out);
    out.emplace_back("thousand");
    if (n % 1000) spell(n % 1000, out);
    return;
  }
  if (n >= 100) {
    out.emplace_back(kUnits[static_cast<std::size_t>(n / 100)]);
    out.emplace_back("hundred");
    if (n % 100) spell(n % 100, out);
    return;
  }
  if (n >= 20) {
    out.emplace_back(kTens[static_cast<std::size_t>(n / 10)]);
    if (n % 10) out.emplace_back(kUnits[static_cast<std::size_t>(n % 10)]);
    return;
  }
  out.emplace_back(kUnits[static_cast<std::size_t>(n)]);
}

std::optional<std::int64_t> number_value(std::string_view w) {
  if (is_digits(w) && w.size() <= 9) return parse_integer(w);
  for (std::size_t i = 1; i < kUnits.size(); ++i)
    if (kUnits[i] == w) return static_cast<std::int64_t>(i);
  for (std::size_t i = 2; i < kTens.size(); ++i)
    if (kTens[i] == w) return static_cast<std::int64_t>(i * 10);
  return std::nullopt;
}

std::vector<std::string> words_of(std::string_view question) {
  std::string s;
  for (std::size_t i = 0; i < question.size(); ++i) {
    if (question.compare(i, 3, "\xE2\x80\x99") == 0) {
      s += '\'';
      i += 2;
      continue;
    }
    char c = question[i];
    s += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  std::vector<std::string> words;
  std::string cur;
  auto flush = [&] {
    if (cur.ends_with("'s")) cur.resize(cur.size() - 2);
    if (!cur.empty() && cur != "don't") std::erase(cur, '\'');
    if (!cur.empty()) words.push_back(cur);
    cur.clear();
  };
  for (char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'' || c == '_') {
      cur += c;
    } else {
      flush();
    }
  }
  flush();
  return words;
}

std::string singular(std::string s) {
  if (s.size() > 3 && s.back() == 's') s.pop_back();
  return s;
}

std::string first_part(std::string_view column) {
  std::string folded;
  for (char c : column) {
    if (c == '_' || c == ' ' || c == '-') break;
    folded += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return folded;
}

struct Match {
  std::size_t column = 0;
  double score = 0;
};

std::optional<Match> best_column(std::string_view phrase, bool single_word,
                                 const TableProfile& profile) {
  std::optional<Match> best;
  const std::string folded = fold_identifier(phrase);
  for (std::size_t c = 0; c < profile.columns.size(); ++c) {
    const std::string& name = profile.columns[c].name;
    const std::string col_folded = fold_identifier(name);
    double score = 0;
    if (folded == col_folded || singular(folded) == singular(col_folded)) {
      score = 1.0;
    } else if (folded.size() >= 3) {
      score = name_similarity(phrase, name);
      const std::string head = first_part(name);
      if (single_word && head.size() >= 3 && head != col_folded &&
          singular(folded) == singular(head))
        score = std::max(score, kPrefixScore);
    }
    if (!best || score > best->score) best = Match{c, score};
  }
  return best;
}

struct Mention {
  std::size_t column;
  std::size_t start;
};

struct Analysis {
  std::vector<std::string> tokens;
  std::vector<Mention> mentions;
  std::optional<std::size_t> top_at;  // index of the token after "top N"
  std::int64_t top_n = 0;
  bool ascending = false;
  bool compare = false;
};

Analysis analyse(std::string_view question, const TableProfile& profile) {
  Analysis a;
  const auto words = words_of(question);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string& w = words[i];
    if ((w == "top" || w == "bottom") && i + 1 < words.size() && !a.top_at) {
      if (auto n = number_value(words[i + 1]); n && *n > 0) {
        a.top_n = *n;
        a.ascending = w == "bottom";
        a.tokens.push_back(w);
        a.tokens.push_back(words[i + 1]);
        a.top_at = a.tokens.size();
        ++i;
        continue;
      }
    }
    if (w == "compare" || w == "versus" || w == "vs") a.compare = true;
    if (is_digits(w) && !profile.find(w) && w.size() <= 9) {
      std::vector<std::string> spelled;
      spell(*parse_integer(w), spelled);
      for (auto& s : spelled) a.tokens.push_back(std::move(s));
      continue;
    }
    a.tokens.push_back(w);
  }

  const auto& t = a.tokens;
  for (std::size_t i = 0; i < t.size();) {
    if (is_stopword(t[i]) || (a.top_at && i + 1 == *a.top_at)) {
      ++i;
      continue;
    }
    std::optional<Match> chosen;
    std::size_t chosen_len = 0;
    for (std::size_t n = 3; n >= 1; --n) {
      if (i + n > t.size()) continue;
      bool clean = true;
      std::string phrase;
      for (std::size_t k = i; k < i + n; ++k) {
        if (is_stopword(t[k]) || (a.top_at && k + 1 == *a.top_at)) clean = false;
        if (k > i) phrase += '_';
        phrase += t[k];
      }
      if (!clean) continue;
      auto m = best_column(phrase, n == 1, profile);
      const double need = n == 1 ? kWordThreshold : kPhraseThreshold;
      if (m && m->score >= need && (!chosen || m->score > chosen->score)) {
        chosen = m;
        chosen_len = n;
      }
    }
    if (chosen) {
      a.mentions.push_back({chosen->column, i});
      i += chosen_len;
    } else {
      ++i;
    }
  }
  return a;
}

bool is_measure(const ColumnProfile& c) {
  return is_numeric(c.inferred_type) && c.role != ColumnRole::Identifier;
}

void push_unique(std::vector<std::size_t>& v, std::size_t c) {
  if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
}

std::optional<std::size_t> default_label(const TableProfile& profile) {
  for (std::size_t c = 0; c < profile.columns.size(); ++c) {
    const auto& col = profile.columns[c];
    if (col.inferred_type == ColumnType::Text &&
        (col.role == ColumnRole::Categorical || col.role == ColumnRole::Identifier))
      return c;
  }
  return std::nullopt;
}

sql::SqlAst base_query(const TableProfile& profile) {
  sql::SqlAst q;
  q.source = profile.table_name;
  return q;
}

void project(sql::SqlAst& q, const TableProfile& profile, const std::vector<std::size_t>& cols) {
  for (auto c : cols) q.items.push_back({sql::column(profile.columns[c].name), std::nullopt});
}

struct AggregateWord {
  std::string_view word;
  sql::AggFn fn;
};

constexpr std::array<AggregateWord, 10> kAggregateWords = {{{"average", sql::AggFn::Avg},
                                                            {"avg", sql::AggFn::Avg},
                                                            {"mean", sql::AggFn::Avg},
                                                            {"total", sql::AggFn::Sum},
                                                            {"sum", sql::AggFn::Sum},
                                                            {"maximum", sql::AggFn::Max},
                                                            {"max", sql::AggFn::Max},
                                                            {"minimum", sql::AggFn::Min},
                                                            {"min", sql::AggFn::Min},
                                                            {"highest", sql::AggFn::Max}}};

bool is_group_word(std::string_view w) {
  return w == "per" || w == "by" || w == "each" || w == "across";
}

std::optional<sql::SqlAst> rule_top(const Analysis& a, const TableProfile& profile) {
  if (!a.top_at || a.compare) return std::nullopt;
  std::vector<std::size_t> labels;
  std::vector<std::size_t> measures;
  std::optional<std::size_t> key;
  for (const auto& m : a.mentions) {
    if (is_measure(profile.columns[m.column])) {
      push_unique(measures, m.column);
      if (!key && m.start >= *a.top_at) key = m.column;
    } else {
      push_unique(labels, m.column);
    }
  }
  if (!key && !measures.empty()) key = measures.front();
  if (!key && labels.empty()) return std::nullopt;

  sql::SqlAst q = base_query(profile);
  if (labels.empty())
    if (auto d = default_label(profile)) labels.push_back(*d);
  std::vector<std::size_t> cols = labels;
  if (key) {
    push_unique(cols, *key);
    for (auto m : measures) push_unique(cols, m);
    q.order_by.push_back({sql::column(profile.columns[*key].name),
                          a.ascending ? sql::SortDir::Asc : sql::SortDir::Desc});
  }
  project(q, profile, cols);
  q.limit = a.top_n;
  return q;
}

std::optional<sql::SqlAst> rule_group(const Analysis& a, const TableProfile& profile) {
  const auto& t = a.tokens;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto agg = std::find_if(kAggregateWords.begin(), kAggregateWords.end(),
                            [&](const AggregateWord& w) { return w.word == t[i]; });
    if (agg == kAggregateWords.end()) continue;
    std::size_t g = i + 1;
    while (g < t.size() && !is_group_word(t[g])) ++g;
    if (g >= t.size()) continue;
    std::optional<std::size_t> measure;
    std::optional<std::size_t> key;
    for (const auto& m : a.mentions) {
      if (m.start > i && m.start < g && !measure && is_measure(profile.columns[m.column]))
        measure = m.column;
      if (m.start > g && !key) key = m.column;
    }
    if (!measure || !key || *measure == *key) continue;
    sql::SqlAst q = base_query(profile);
    const std::string& key_name = profile.columns[*key].name;
    q.items.push_back({sql::column(key_name), std::nullopt});
    q.items.push_back({sql::aggregate(agg->fn, profile.columns[*measure].name), std::nullopt});
    q.group_by.push_back(sql::ColumnRef{key_name});
    return q;
  }
  return std::nullopt;
}

std::optional<sql::SqlAst> rule_compare(const Analysis& a, const TableProfile& profile) {
  if (!a.compare) return std::nullopt;
  std::vector<std::size_t> labels;
  std::vector<std::size_t> measures;
  std::optional<std::size_t> key;
  for (const auto& m : a.mentions) {
    if (is_measure(profile.columns[m.column])) {
      push_unique(measures, m.column);
      if (a.top_at && !key && m.start >= *a.top_at) key = m.column;
    } else {
      push_unique(labels, m.column);
    }
  }
  if (measures.empty()) return std::nullopt;
  sql::SqlAst q = base_query(profile);
  std::vector<std::size_t> cols = labels;
  for (auto m : measures)
    if (!key || m != *key || measures.size() == 1) push_unique(cols, m);
  project(q, profile, cols);
  if (a.top_at) {
    const std::size_t sort_col = key ? *key : measures.front();
    q.order_by.push_back({sql::column(profile.columns[sort_col].name),
                          a.ascending ? sql::SortDir::Asc : sql::SortDir::Desc});
    q.limit = a.top_n;
  }
  return q;
}

std::optional<sql::SqlAst> rule_projection(const Analysis& a, const TableProfile& profile) {
  if (a.mentions.empty()) return std::nullopt;
  std::vector<std::size_t> cols;
  for (const auto& m : a.mentions) push_unique(cols, m.column);
  sql::SqlAst q = base_query(profile);
  project(q, profile, cols);
  if (a.top_at) q.limit = a.top_n;
  return q;
}

}  // namespace

TranslationResult offline_to_sql(std::string_view question, const TableProfile& profile) {
  const Analysis a = analyse(question, profile);
  TranslationResult out;
  out.source = TranslationSource::Offline;
  std::optional<sql::SqlAst> q = rule_top(a, profile);
  if (!q) q = rule_group(a, profile);
  if (!q) q = rule_compare(a, profile);
  if (!q) q = rule_projection(a, profile);
  if (!q) {
    out.off_topic = true;
    out.raw = std::string(kOffTopicSentinel);
    return out;
  }
  out.sql = sql::print_canonical(*q);
  out.raw = out.sql;
  return out;
}

}  // namespace t2i
