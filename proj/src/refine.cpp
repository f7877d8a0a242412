#include "t2i/refine.hpp"

#include <algorithm>
#include <map>

namespace t2i {

UnresolvedIdentifiers::UnresolvedIdentifiers(RefinementReport report)
    : Error(ErrorCode::UnresolvedIdentifiers,
            [&] {
              std::string msg = "unresolved identifiers:";
              for (const auto& u : report.unresolved) msg += " " + u;
              return msg;
            }()),
      report_(std::move(report)) {}

SchemaMatch best_schema_match(std::string_view identifier, const TableProfile& profile) {
  SchemaMatch best;
  bool have = false;
  for (const auto& col : profile.columns) {
    double s = name_similarity(identifier, col.name);
    if (!have || s > best.score || (s == best.score && col.name < best.column)) {
      best = {col.name, s};
      have = true;
    }
  }
  return best;
}

namespace {

class Refiner {
 public:
  Refiner(const TableProfile& profile, double threshold)
      : profile_(profile), threshold_(threshold) {}

  // Returns true when the reference was rewritten.
  bool resolve(sql::ColumnRef& ref) {
    if (const auto* col = profile_.find(ref.name)) {
      ref.name = col->name;
      return false;
    }
    const std::string key = ascii_lower(ref.name);
    auto it = decided_.find(key);
    if (it == decided_.end()) {
      SchemaMatch m = best_schema_match(ref.name, profile_);
      Decision d;
      if (m.score >= threshold_ && !m.column.empty()) {
        d.replacement = m.column;
        report_.substitutions.push_back({ref.name, m.column, m.score});
      } else {
        report_.unresolved.push_back(ref.name);
      }
      it = decided_.emplace(key, std::move(d)).first;
    }
    if (!it->second.replacement) return false;
    ref.name = *it->second.replacement;
    return true;
  }

  void resolve_all(sql::Expr& e) {
    sql::for_each_column_ref(e, [&](sql::ColumnRef& ref) { resolve(ref); });
  }

  RefinementReport take_report() { return std::move(report_); }

 private:
  struct Decision {
    std::optional<std::string> replacement;
  };

  const TableProfile& profile_;
  double threshold_;
  std::map<std::string, Decision> decided_;
  RefinementReport report_;
};

bool names_select_alias(const sql::SqlAst& ast, std::string_view name) {
  return std::any_of(ast.items.begin(), ast.items.end(), [&](const sql::SelectItem& it) {
    return it.alias && iequals(*it.alias, name);
  });
}

}  // namespace

RefinedQuery refine_query(const sql::SqlAst& ast, const TableProfile& profile,
                          double threshold) {
  RefinedQuery out{ast, {}};
  sql::SqlAst& q = out.ast;
  Refiner refiner(profile, threshold);

  q.source = profile.table_name;

  for (auto& item : q.items) {
    if (auto* ref = std::get_if<sql::ColumnRef>(&item.expr.node); ref && !item.alias) {
      std::string original = ref->name;
      if (refiner.resolve(*ref) && !names_select_alias(q, original)) item.alias = original;
    } else {
      refiner.resolve_all(item.expr);
    }
  }
  if (q.where) refiner.resolve_all(*q.where);
  for (auto& key : q.group_by) refiner.resolve(key);
  for (auto& order : q.order_by) {
    auto* ref = std::get_if<sql::ColumnRef>(&order.expr.node);
    if (ref && !profile.find(ref->name) && names_select_alias(ast, ref->name)) continue;
    refiner.resolve_all(order.expr);
  }

  out.report = refiner.take_report();
  if (!out.report.unresolved.empty()) throw UnresolvedIdentifiers(std::move(out.report));
  return out;
}

Json to_json(const RefinementReport& report) {
  Json j;
  j["substitutions"] = Json::array();
  for (const auto& s : report.substitutions) {
    Json e;
    e["original"] = s.original;
    e["replacement"] = s.replacement;
    e["score"] = s.score;
    j["substitutions"].push_back(std::move(e));
  }
  j["unresolved"] = report.unresolved;
  return j;
}

}  // namespace t2i
