#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "t2i/dataprofile.hpp"
#include "t2i/error.hpp"
#include "t2i/sql.hpp"

namespace t2i {

inline constexpr double kRefineThreshold = 0.5;

/// Lower-cases and removes '_', '-' and ' '.
std::string fold_identifier(std::string_view s);

std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t lcs_length(std::string_view a, std::string_view b);

/// max(1 - lev/max_len, 2*lcs/(len_a+len_b)) over folded identifiers.
/// Symmetric, in [0, 1], and 1 for identical names.
double name_similarity(std::string_view a, std::string_view b);

struct Substitution {
  std::string original;
  std::string replacement;
  double score = 0;

  bool operator==(const Substitution&) const = default;
};

struct RefinementReport {
  std::vector<Substitution> substitutions;
  std::vector<std::string> unresolved;

  bool operator==(const RefinementReport&) const = default;
};

struct RefinedQuery {
  sql::SqlAst ast;
  RefinementReport report;
};

class UnresolvedIdentifiers : public Error {
 public:
  explicit UnresolvedIdentifiers(RefinementReport report);
  const RefinementReport& report() const noexcept { return report_; }

 private:
  RefinementReport report_;
};

/// Best schema column for an identifier; ties go to the lexicographically
/// smallest column name.
struct SchemaMatch {
  std::string column;
  double score = 0;
};
SchemaMatch best_schema_match(std::string_view identifier, const TableProfile& profile);

/// Rewrites the source table to profile.table_name and every column reference
/// that is not a schema column to its most similar schema column. Throws
/// UnresolvedIdentifiers (carrying the full report) when any reference scores
/// below the threshold.
RefinedQuery refine_query(const sql::SqlAst& ast, const TableProfile& profile,
                          double threshold = kRefineThreshold);

Json to_json(const RefinementReport& report);

}  // namespace t2i
