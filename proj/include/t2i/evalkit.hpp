#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "t2i/types.hpp"

namespace t2i {

inline constexpr double kBleuThreshold = 0.5;
inline constexpr double kBleuSmoothing = 1e-9;

/// Lower-cased SQL tokens: runs of [a-z0-9_], the two-character operators
/// <= >= != <>, and every other non-space character on its own.
std::vector<std::string> sql_tokens(std::string_view text);

struct BleuDetail {
  std::size_t order = 4;  // min(4, candidate length)
  std::array<double, 4> precisions{};
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
  double brevity_penalty = 1;
  double score = 0;
};

/// Sentence BLEU with clipped n-gram precisions, uniform weights, zero
/// precisions smoothed to kBleuSmoothing and BP = 1 if c > r else
/// exp(1 - r/c). Throws Error(EmptyInput) if either side has no tokens.
BleuDetail bleu_detail(std::string_view candidate, std::string_view reference);
double bleu(std::string_view candidate, std::string_view reference);

/// Inclusive: score >= threshold.
bool classify_match(double score, double threshold = kBleuThreshold);

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  bool operator==(const ConfusionMatrix&) const = default;
};

/// accuracy = (tp+tn)/(tp+tn+fp+fn), precision = tp/(tp+fp),
/// recall = tp/(tp+fn), f1 = 2pr/(p+r). A ratio with a zero denominator is
/// reported as 0 and listed in `undefined`.
struct MetricSet {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::vector<std::string> undefined;
};

/// Throws Error(EmptyMatrix) when all four counts are zero.
MetricSet metrics_from_confusion(const ConfusionMatrix& cm);

struct EvalPair {
  std::string question;
  std::string gold_sql;
  std::string predicted_sql;
  std::optional<std::string> schema_ddl;
};

/// JSONL, one {question, gold_sql, predicted_sql, schema_ddl?} per line;
/// blank lines are skipped. Throws Error(MalformedPairFile) naming the line.
std::vector<EvalPair> read_pairs_jsonl(std::string_view text);

struct PairOutcome {
  bool valid = false;
  double bleu = 0;
  bool match = false;
};

struct EvalSummary {
  std::size_t n_pairs = 0;
  std::size_t n_syntactically_valid = 0;
  ConfusionMatrix validity_confusion;
  MetricSet validity_metrics;
  std::vector<double> bleu_scores;
  double bleu_threshold = kBleuThreshold;
  ConfusionMatrix bleu_confusion;
  MetricSet bleu_metrics;
  std::vector<PairOutcome> pairs;
};

/// Every pair is a positive instance: a valid (resp. matching) prediction
/// is a true positive, anything else a false negative.
EvalSummary run_eval_suite(const std::vector<EvalPair>& pairs, double threshold = kBleuThreshold);

Json to_json(const ConfusionMatrix& cm);
Json to_json(const MetricSet& m);
Json to_json(const EvalSummary& s);

/// Aligned-column text rendering of the two metric sets.
std::string to_text_table(const EvalSummary& s);

}  // namespace t2i
