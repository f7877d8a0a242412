#include <algorithm>
#include <vector>

#include "t2i/refine.hpp"

namespace t2i {

std::string fold_identifier(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '_' || c == '-' || c == ' ') continue;
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t lcs_length(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double name_similarity(std::string_view a, std::string_view b) {
  const std::string fa = fold_identifier(a);
  const std::string fb = fold_identifier(b);
  if (fa.empty() && fb.empty()) return 1.0;
  if (fa.empty() || fb.empty()) return 0.0;
  if (fa == fb) return 1.0;
  const double max_len = static_cast<double>(std::max(fa.size(), fb.size()));
  const double edit = 1.0 - static_cast<double>(levenshtein(fa, fb)) / max_len;
  const double lcs = 2.0 * static_cast<double>(lcs_length(fa, fb)) /
                     static_cast<double>(fa.size() + fb.size());
  return std::clamp(std::max(edit, lcs), 0.0, 1.0);
}

}  // namespace t2i
