#include "random_sql.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "t2i/types.hpp"

namespace gen {

using namespace t2i::sql;

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool chance(std::mt19937_64& rng, int percent) { return static_cast<int>(rng() % 100) < percent; }

const char* const kNames[] = {"a",      "b",       "runs",  "Player", "Wkts",  "strike_rate",
                              "x1",     "_hidden", "order", "select", "my col", "we\"ird",
                              "Group",  "LIMIT",   "a.b",   "caf\xc3\xa9", "n2", "MiXeD"};

std::string name(std::mt19937_64& rng) { return kNames[rng() % std::size(kNames)]; }

Literal random_literal(std::mt19937_64& rng) {
  switch (uniform(rng, 0, 5)) {
    case 0: return Literal{std::monostate{}};
    case 1: return Literal{std::int64_t{uniform(rng, -1000, 1000)}};
    case 2: {
      const std::int64_t extremes[] = {std::numeric_limits<std::int64_t>::max(),
                                       std::numeric_limits<std::int64_t>::min(), 0};
      return Literal{extremes[rng() % 3]};
    }
    case 3: {
      const double reals[] = {0.5, -2.25, 1e-7, 3.14159, 1e20, 6.02e23, -0.0, 123456.789, 0.1};
      return Literal{reals[rng() % std::size(reals)]};
    }
    case 4: {
      std::uniform_real_distribution<double> d(-1e6, 1e6);
      return Literal{d(rng)};
    }
    default: {
      const char* const texts[] = {"", "abc", "it's", "x y", "''", "SELECT", "\xe2\x82\xac"};
      return Literal{std::string(texts[rng() % std::size(texts)])};
    }
  }
}

Expr scalar(std::mt19937_64& rng, int depth, bool allow_agg);

Expr leaf(std::mt19937_64& rng, bool allow_agg) {
  int k = uniform(rng, 0, allow_agg ? 9 : 6);
  if (k <= 3) return column(name(rng));
  if (k <= 6) return Expr{random_literal(rng)};
  auto fn = static_cast<AggFn>(uniform(rng, 0, 4));
  if (fn == AggFn::Count && chance(rng, 50)) return aggregate(fn, std::nullopt);
  return aggregate(fn, name(rng));
}

Expr scalar(std::mt19937_64& rng, int depth, bool allow_agg) {
  if (depth <= 0 || chance(rng, 35)) return leaf(rng, allow_agg);
  switch (uniform(rng, 0, 4)) {
    case 0: return negate(scalar(rng, depth - 1, allow_agg));
    case 1: {
      InList in{scalar(rng, depth - 1, allow_agg), {}};
      int n = uniform(rng, 1, 4);
      for (int i = 0; i < n; ++i) in.items.push_back(random_literal(rng));
      return Expr{std::move(in)};
    }
    default: {
      auto op = static_cast<BinaryOp>(uniform(rng, 0, 11));
      return binary(op, scalar(rng, depth - 1, allow_agg), scalar(rng, depth - 1, allow_agg));
    }
  }
}

// Expression whose bare column refs are all in `keys`.
Expr grouped_scalar(std::mt19937_64& rng, int depth, const std::vector<ColumnRef>& keys) {
  if (depth <= 0 || chance(rng, 40)) {
    int k = uniform(rng, 0, 2);
    if (k == 0 && !keys.empty()) return Expr{keys[rng() % keys.size()]};
    if (k == 1) return Expr{random_literal(rng)};
    auto fn = static_cast<AggFn>(uniform(rng, 0, 4));
    if (fn == AggFn::Count && chance(rng, 50)) return aggregate(fn, std::nullopt);
    return aggregate(fn, name(rng));
  }
  auto op = static_cast<BinaryOp>(uniform(rng, 0, 11));
  return binary(op, grouped_scalar(rng, depth - 1, keys), grouped_scalar(rng, depth - 1, keys));
}

}  // namespace

SqlAst random_ast(std::mt19937_64& rng) {
  SqlAst ast;
  ast.distinct = chance(rng, 20);
  ast.source = name(rng);
  const bool grouped = chance(rng, 35);
  if (grouped) {
    int n_keys = uniform(rng, 0, 3);
    std::set<std::string> seen;
    for (int i = 0; i < n_keys; ++i) {
      std::string n = name(rng);
      if (seen.insert(t2i::ascii_lower(n)).second) ast.group_by.push_back(ColumnRef{n});
    }
  }
  int n_items = uniform(rng, 1, 4);
  std::set<std::string> aliases;
  for (int i = 0; i < n_items; ++i) {
    SelectItem item;
    item.expr = grouped ? grouped_scalar(rng, 3, ast.group_by) : scalar(rng, 3, false);
    if (chance(rng, 40)) {
      std::string alias = chance(rng, 70) ? "al" + std::to_string(i) : name(rng);
      if (aliases.insert(t2i::ascii_lower(alias)).second) item.alias = alias;
    }
    ast.items.push_back(std::move(item));
  }
  if (chance(rng, 50)) ast.where = scalar(rng, 3, false);
  int n_order = uniform(rng, 0, 3);
  for (int i = 0; i < n_order; ++i) {
    OrderItem o;
    o.expr = grouped ? grouped_scalar(rng, 2, ast.group_by) : scalar(rng, 2, false);
    o.dir = chance(rng, 50) ? SortDir::Desc : SortDir::Asc;
    ast.order_by.push_back(std::move(o));
  }
  if (chance(rng, 50)) ast.limit = chance(rng, 10) ? 0 : uniform(rng, 0, 1'000'000);
  return ast;
}

std::string fuzz_input(std::mt19937_64& rng) {
  static const char* const kTokens[] = {
      "SELECT", "FROM", "WHERE", "GROUP", "BY", "ORDER", "LIMIT", "DISTINCT", "AS", "AND",
      "OR", "NOT", "IN", "NULL", "COUNT", "SUM", "AVG", "(", ")", ",", "*", "+", "-", "/",
      "=", "<>", "!=", "<=", ">=", "<", ">", ";", "'", "\"", "a", "t", "1", "2.5", "1e",
      "'x'", "\"q\"", ".", "--", "ASC", "DESC", "99999999999999999999", "\xff", "\n"};
  std::string out;
  switch (uniform(rng, 0, 3)) {
    case 0: {
      int n = uniform(rng, 0, 64);
      for (int i = 0; i < n; ++i) out += static_cast<char>(rng() & 0xff);
      return out;
    }
    case 1: {
      int n = uniform(rng, 0, 30);
      for (int i = 0; i < n; ++i) {
        out += kTokens[rng() % std::size(kTokens)];
        if (chance(rng, 80)) out += ' ';
      }
      return out;
    }
    case 2: {
      int depth = uniform(rng, 1, 5000);
      out = "SELECT ";
      out.append(static_cast<std::size_t>(depth), '(');
      out += "a";
      if (chance(rng, 50)) out.append(static_cast<std::size_t>(depth), ')');
      out += " FROM t";
      return out;
    }
    default: {
      out = print_canonical(random_ast(rng));
      int edits = uniform(rng, 1, 4);
      for (int i = 0; i < edits && !out.empty(); ++i) {
        std::size_t pos = rng() % out.size();
        switch (uniform(rng, 0, 2)) {
          case 0: out.erase(pos, 1 + rng() % 4); break;
          case 1: out.insert(pos, kTokens[rng() % std::size(kTokens)]); break;
          default: out[pos] = static_cast<char>(rng() & 0xff); break;
        }
      }
      return out;
    }
  }
}

}  // namespace gen
