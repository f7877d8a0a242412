#pragma once

#include <string>
#include <vector>

#include "t2i/dataprofile.hpp"
#include "t2i/sql.hpp"
#include "t2i/types.hpp"

namespace t2i {

struct ResultColumn {
  std::string name;  // alias, or the canonical text of the expression
  ColumnType type = ColumnType::Text;
  ColumnRole role = ColumnRole::Categorical;

  bool operator==(const ResultColumn&) const = default;
};

struct ResultTable {
  std::vector<ResultColumn> columns;
  std::vector<std::vector<Cell>> rows;

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool operator==(const ResultTable&) const = default;
};

/// Runs a (refined) query against an in-memory dataset.
///
/// Evaluation order: WHERE -> GROUP BY -> aggregates -> projection ->
/// DISTINCT -> ORDER BY (stable, NULLs last) -> LIMIT.
///
/// NULL semantics: any comparison with a NULL operand is false, SUM/AVG/MIN/MAX
/// skip NULLs, COUNT(col) counts non-NULLs and COUNT(*) counts rows. Division
/// by zero and integer overflow evaluate to NULL.
///
/// Throws Error with UnknownColumn, TypeMismatch or InvalidGrouping.
ResultTable execute(const sql::SqlAst& ast, const Dataset& dataset);

Json to_json(const ResultTable& table);

}  // namespace t2i
