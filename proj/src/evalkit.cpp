#include "t2i/evalkit.hpp"

#include <cstdio>

#include "t2i/error.hpp"
#include "t2i/sql.hpp"

namespace t2i {

namespace {

double ratio(std::uint64_t num, std::uint64_t den, const char* name,
             std::vector<std::string>& undefined) {
  if (den == 0) {
    undefined.emplace_back(name);
    return 0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string required_string(const Json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw Error(ErrorCode::MalformedPairFile,
                "line " + std::to_string(line) + ": missing string field '" + key + "'");
  return it->get<std::string>();
}

}  // namespace

MetricSet metrics_from_confusion(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.tp + cm.fp + cm.tn + cm.fn;
  if (total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix has no observations");
  MetricSet m;
  m.accuracy = ratio(cm.tp + cm.tn, total, "accuracy", m.undefined);
  m.precision = ratio(cm.tp, cm.tp + cm.fp, "precision", m.undefined);
  m.recall = ratio(cm.tp, cm.tp + cm.fn, "recall", m.undefined);
  if (m.precision + m.recall > 0) {
    m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1 = 0;
    m.undefined.emplace_back("f1");
  }
  return m;
}

std::vector<EvalPair> read_pairs_jsonl(std::string_view text) {
  std::vector<EvalPair> pairs;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Json obj = Json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      throw Error(ErrorCode::MalformedPairFile,
                  "line " + std::to_string(line_no) + ": not a JSON object");
    EvalPair p;
    p.question = required_string(obj, "question", line_no);
    p.gold_sql = required_string(obj, "gold_sql", line_no);
    p.predicted_sql = required_string(obj, "predicted_sql", line_no);
    if (auto it = obj.find("schema_ddl"); it != obj.end() && it->is_string())
      p.schema_ddl = it->get<std::string>();
    if (!sql::validate(p.gold_sql).valid)
      throw Error(ErrorCode::MalformedPairFile,
                  "line " + std::to_string(line_no) + ": gold_sql does not parse");
    pairs.push_back(std::move(p));
  }
  if (pairs.empty()) throw Error(ErrorCode::MalformedPairFile, "pair file contains no pairs");
  return pairs;
}

EvalSummary run_eval_suite(const std::vector<EvalPair>& pairs, double threshold) {
  if (pairs.empty()) throw Error(ErrorCode::MalformedPairFile, "no pairs to evaluate");
  EvalSummary s;
  s.n_pairs = pairs.size();
  s.bleu_threshold = threshold;
  for (const auto& p : pairs) {
    PairOutcome o;
    o.valid = sql::validate(p.predicted_sql).valid;
    try {
      o.bleu = bleu(p.predicted_sql, p.gold_sql);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyInput) throw;
      o.bleu = 0;
    }
    o.match = classify_match(o.bleu, threshold);
    if (o.valid) {
      ++s.n_syntactically_valid;
      ++s.validity_confusion.tp;
    } else {
      ++s.validity_confusion.fn;
    }
    if (o.match) {
      ++s.bleu_confusion.tp;
    } else {
      ++s.bleu_confusion.fn;
    }
    s.bleu_scores.push_back(o.bleu);
    s.pairs.push_back(o);
  }
  s.validity_metrics = metrics_from_confusion(s.validity_confusion);
  s.bleu_metrics = metrics_from_confusion(s.bleu_confusion);
  return s;
}

Json to_json(const ConfusionMatrix& cm) {
  return Json{{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}};
}

Json to_json(const MetricSet& m) {
  Json j;
  j["accuracy"] = m.accuracy;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["undefined"] = m.undefined;
  return j;
}

Json to_json(const EvalSummary& s) {
  Json j;
  j["n_pairs"] = s.n_pairs;
  j["n_syntactically_valid"] = s.n_syntactically_valid;
  j["validity_confusion"] = to_json(s.validity_confusion);
  j["validity_metrics"] = to_json(s.validity_metrics);
  j["bleu_threshold"] = s.bleu_threshold;
  j["bleu_confusion"] = to_json(s.bleu_confusion);
  j["bleu_metrics"] = to_json(s.bleu_metrics);
  j["bleu_scores"] = s.bleu_scores;
  return j;
}

std::string to_text_table(const EvalSummary& s) {
  const std::size_t w = 12;
  std::string out;
  out += "pairs: " + std::to_string(s.n_pairs) +
         "  syntactically valid: " + std::to_string(s.n_syntactically_valid) +
         "  bleu threshold: " + fixed4(s.bleu_threshold) + "\n";
  out += pad("metric", w) + pad("validity", w) + pad("bleu", w) + "\n";
  auto row = [&](const char* name, double a, double b) {
    out += pad(name, w) + pad(fixed4(a), w) + pad(fixed4(b), w) + "\n";
  };
  row("accuracy", s.validity_metrics.accuracy, s.bleu_metrics.accuracy);
  row("precision", s.validity_metrics.precision, s.bleu_metrics.precision);
  row("recall", s.validity_metrics.recall, s.bleu_metrics.recall);
  row("f1", s.validity_metrics.f1, s.bleu_metrics.f1);
  auto counts = [&](const char* name, std::uint64_t a, std::uint64_t b) {
    out += pad(name, w) + pad(std::to_string(a), w) + pad(std::to_string(b), w) + "\n";
  };
  counts("tp", s.validity_confusion.tp, s.bleu_confusion.tp);
  counts("fp", s.validity_confusion.fp, s.bleu_confusion.fp);
  counts("tn", s.validity_confusion.tn, s.bleu_confusion.tn);
  counts("fn", s.validity_confusion.fn, s.bleu_confusion.fn);
  return out;
}

}  // namespace t2i
