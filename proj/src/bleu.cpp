#include <algorithm>
#include <cmath>
#include <map>

#include "t2i/error.hpp"
#include "t2i/evalkit.hpp"

namespace t2i {

namespace {

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

using Ngram = std::vector<std::string_view>;

std::map<Ngram, std::size_t> ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  std::map<Ngram, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    Ngram g(tokens.begin() + static_cast<std::ptrdiff_t>(i),
            tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[g];
  }
  return counts;
}

}  // namespace

std::vector<std::string> sql_tokens(std::string_view text) {
  std::string lower(text);
  for (char& c : lower)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < lower.size()) {
    char c = lower[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < lower.size() && word_char(lower[j])) ++j;
      out.push_back(lower.substr(i, j - i));
      i = j;
    } else {
      std::string_view two = std::string_view(lower).substr(i, 2);
      if (two == "<=" || two == ">=" || two == "!=" || two == "<>") {
        out.emplace_back(two);
        i += 2;
      } else {
        out.emplace_back(1, c);
        ++i;
      }
    }
  }
  return out;
}

BleuDetail bleu_detail(std::string_view candidate, std::string_view reference) {
  const auto cand = sql_tokens(candidate);
  const auto ref = sql_tokens(reference);
  if (cand.empty() || ref.empty())
    throw Error(ErrorCode::EmptyInput, "BLEU needs a non-empty candidate and reference");

  BleuDetail d;
  d.candidate_length = cand.size();
  d.reference_length = ref.size();
  d.order = std::min<std::size_t>(4, cand.size());

  double log_sum = 0;
  for (std::size_t n = 1; n <= d.order; ++n) {
    auto cc = ngram_counts(cand, n);
    auto rc = ngram_counts(ref, n);
    std::size_t clipped = 0;
    std::size_t total = 0;
    for (const auto& [g, count] : cc) {
      total += count;
      auto it = rc.find(g);
      if (it != rc.end()) clipped += std::min(count, it->second);
    }
    double p = total ? static_cast<double>(clipped) / static_cast<double>(total) : 0.0;
    d.precisions[n - 1] = p;
    log_sum += std::log(p > 0 ? p : kBleuSmoothing);
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  d.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);
  d.score = d.brevity_penalty * std::exp(log_sum / static_cast<double>(d.order));
  d.score = std::clamp(d.score, 0.0, 1.0);
  return d;
}

double bleu(std::string_view candidate, std::string_view reference) {
  return bleu_detail(candidate, reference).score;
}

bool classify_match(double score, double threshold) { return score >= threshold; }

}  // namespace t2i
