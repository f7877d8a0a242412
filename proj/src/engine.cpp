#include "t2i/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "t2i/error.hpp"

namespace t2i {

namespace {

using sql::AggFn;
using sql::BinaryOp;

// Static type of an expression. Null is the type of the NULL literal.
enum class SType { Null, Integer, Real, Boolean, Date, DateTime, Text };

SType stype_of(ColumnType t) {
  switch (t) {
    case ColumnType::Integer: return SType::Integer;
    case ColumnType::Real: return SType::Real;
    case ColumnType::Boolean: return SType::Boolean;
    case ColumnType::Date: return SType::Date;
    case ColumnType::DateTime: return SType::DateTime;
    case ColumnType::Text: break;
  }
  return SType::Text;
}

ColumnType column_type_of(SType t) {
  switch (t) {
    case SType::Integer: return ColumnType::Integer;
    case SType::Real: return ColumnType::Real;
    case SType::Boolean: return ColumnType::Boolean;
    case SType::Date: return ColumnType::Date;
    case SType::DateTime: return ColumnType::DateTime;
    case SType::Null:
    case SType::Text: break;
  }
  return ColumnType::Text;
}

bool numeric_like(SType t) {
  return t == SType::Integer || t == SType::Real || t == SType::Boolean || t == SType::Null;
}
bool temporal(SType t) { return t == SType::Date || t == SType::DateTime; }

std::string_view type_name(SType t) {
  return t == SType::Null ? "null" : to_string(column_type_of(t));
}

[[noreturn]] void mismatch(const std::string& what) {
  throw Error(ErrorCode::TypeMismatch, what);
}

// Bound expression: the AST with column indexes resolved and literals coerced.
struct Bound {
  enum class Kind { Column, Value, Not, Binary, In, Aggregate, Output };
  Kind kind = Kind::Value;
  SType type = SType::Null;
  std::size_t index = 0;  // Column: source index; Aggregate: slot; Output: item index
  Cell value;
  BinaryOp op = BinaryOp::Eq;
  std::vector<Bound> children;
  std::vector<Cell> list;
};

struct AggregateSlot {
  AggFn fn;
  std::optional<std::size_t> column;  // nullopt = '*'
  SType arg_type = SType::Null;
};

Cell literal_cell(const sql::Literal& lit) {
  return std::visit(
      [](const auto& v) -> Cell {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return std::monostate{};
        } else {
          return v;
        }
      },
      lit.value);
}

SType literal_type(const sql::Literal& lit) {
  switch (lit.value.index()) {
    case 1: return SType::Integer;
    case 2: return SType::Real;
    case 3: return SType::Text;
    default: return SType::Null;
  }
}

// Text literals compared against a temporal operand are read as dates.
Cell coerce_for_comparison(const Cell& value, SType value_type, SType other) {
  if (value_type != SType::Text || !temporal(other)) return value;
  const auto& s = std::get<std::string>(value);
  if (auto d = parse_date(s)) {
    if (other == SType::Date) return *d;
    return DateTime{*d, 0, 0, 0};
  }
  if (auto dt = parse_datetime(s)) return *dt;
  mismatch("cannot compare " + std::string(type_name(other)) + " with text '" + s + "'");
}

bool is_text_literal(const Bound& b) {
  return b.kind == Bound::Kind::Value && b.type == SType::Text;
}

void check_comparable(const Bound& lhs, const Bound& rhs, std::string_view op) {
  SType a = lhs.type;
  SType b = rhs.type;
  if (a == SType::Null || b == SType::Null) return;
  if (numeric_like(a) && numeric_like(b)) return;
  if (a == SType::Text && b == SType::Text) return;
  if (temporal(a) && temporal(b)) return;
  if (temporal(a) && is_text_literal(rhs)) return;
  if (temporal(b) && is_text_literal(lhs)) return;
  mismatch("cannot apply '" + std::string(op) + "' to " + std::string(type_name(a)) + " and " +
           std::string(type_name(b)));
}

void check_truthy(const Bound& b, std::string_view context) {
  if (!numeric_like(b.type))
    mismatch(std::string(context) + " needs a boolean or numeric operand, got " +
             std::string(type_name(b.type)));
}

// Where column references are allowed, and what they mean.
enum class RefMode {
  Row,      // any source column (ungrouped queries)
  GroupKey  // only GROUP BY keys outside aggregates
};

class Binder {
 public:
  Binder(const TableProfile& profile, const std::vector<std::size_t>& group_keys)
      : profile_(profile), keys_(group_keys) {}

  std::size_t column_index(const std::string& name) const {
    auto idx = profile_.index_of(name);
    if (!idx) throw Error(ErrorCode::UnknownColumn, "unknown column '" + name + "'");
    return *idx;
  }

  Bound bind(const sql::Expr& e, RefMode mode, bool allow_aggregates) {
    return std::visit([&](const auto& node) { return bind_node(node, mode, allow_aggregates); },
                      e.node);
  }

  std::vector<AggregateSlot>& slots() { return slots_; }

 private:
  Bound bind_node(const sql::ColumnRef& ref, RefMode mode, bool) {
    Bound b;
    b.kind = Bound::Kind::Column;
    b.index = column_index(ref.name);
    b.type = stype_of(profile_.columns[b.index].inferred_type);
    if (mode == RefMode::GroupKey &&
        std::find(keys_.begin(), keys_.end(), b.index) == keys_.end()) {
      throw Error(ErrorCode::InvalidGrouping,
                  "column '" + ref.name + "' must appear in GROUP BY or inside an aggregate");
    }
    return b;
  }

  Bound bind_node(const sql::Literal& lit, RefMode, bool) {
    Bound b;
    b.kind = Bound::Kind::Value;
    b.type = literal_type(lit);
    b.value = literal_cell(lit);
    return b;
  }

  Bound bind_node(const sql::Unary& u, RefMode mode, bool allow_aggregates) {
    Bound b;
    b.kind = Bound::Kind::Not;
    b.type = SType::Boolean;
    b.children.push_back(bind(*u.operand, mode, allow_aggregates));
    check_truthy(b.children[0], "NOT");
    return b;
  }

  Bound bind_node(const sql::Binary& bin, RefMode mode, bool allow_aggregates) {
    Bound b;
    b.kind = Bound::Kind::Binary;
    b.op = bin.op;
    Bound lhs = bind(*bin.lhs, mode, allow_aggregates);
    Bound rhs = bind(*bin.rhs, mode, allow_aggregates);
    const std::string op_text(sql::to_string(bin.op));
    if (bin.op == BinaryOp::And || bin.op == BinaryOp::Or) {
      check_truthy(lhs, op_text);
      check_truthy(rhs, op_text);
      b.type = SType::Boolean;
    } else if (sql::is_comparison(bin.op)) {
      check_comparable(lhs, rhs, op_text);
      if (is_text_literal(rhs)) rhs.value = coerce_for_comparison(rhs.value, rhs.type, lhs.type);
      if (is_text_literal(lhs)) lhs.value = coerce_for_comparison(lhs.value, lhs.type, rhs.type);
      b.type = SType::Boolean;
    } else {
      if (!numeric_like(lhs.type) || !numeric_like(rhs.type))
        mismatch("cannot apply '" + op_text + "' to " + std::string(type_name(lhs.type)) +
                 " and " + std::string(type_name(rhs.type)));
      if (bin.op == BinaryOp::Div || lhs.type == SType::Real || rhs.type == SType::Real) {
        b.type = SType::Real;
      } else {
        b.type = SType::Integer;
      }
    }
    b.children.push_back(std::move(lhs));
    b.children.push_back(std::move(rhs));
    return b;
  }

  Bound bind_node(const sql::InList& in, RefMode mode, bool allow_aggregates) {
    Bound b;
    b.kind = Bound::Kind::In;
    b.type = SType::Boolean;
    Bound operand = bind(*in.operand, mode, allow_aggregates);
    for (const auto& lit : in.items) {
      Bound item = bind_node(lit, mode, allow_aggregates);
      check_comparable(operand, item, "IN");
      b.list.push_back(coerce_for_comparison(item.value, item.type, operand.type));
    }
    b.children.push_back(std::move(operand));
    return b;
  }

  Bound bind_node(const sql::Aggregate& agg, RefMode, bool allow_aggregates) {
    if (!allow_aggregates)
      throw Error(ErrorCode::InvalidGrouping, "aggregate not allowed here");
    AggregateSlot slot{agg.fn, std::nullopt, SType::Null};
    if (agg.arg) {
      slot.column = column_index(agg.arg->name);
      slot.arg_type = stype_of(profile_.columns[*slot.column].inferred_type);
    }
    Bound b;
    b.kind = Bound::Kind::Aggregate;
    switch (agg.fn) {
      case AggFn::Count: b.type = SType::Integer; break;
      case AggFn::Sum:
      case AggFn::Avg:
        if (!numeric_like(slot.arg_type))
          mismatch(std::string(sql::to_string(agg.fn)) + " over " +
                   std::string(type_name(slot.arg_type)) + " column '" + agg.arg->name + "'");
        if (agg.fn == AggFn::Avg || slot.arg_type == SType::Real) {
          b.type = SType::Real;
        } else {
          b.type = SType::Integer;
        }
        break;
      case AggFn::Min:
      case AggFn::Max: b.type = slot.arg_type; break;
    }
    auto it = std::find_if(slots_.begin(), slots_.end(), [&](const AggregateSlot& s) {
      return s.fn == slot.fn && s.column == slot.column;
    });
    if (it == slots_.end()) {
      slots_.push_back(slot);
      it = std::prev(slots_.end());
    }
    b.index = static_cast<std::size_t>(it - slots_.begin());
    return b;
  }

  const TableProfile& profile_;
  const std::vector<std::size_t>& keys_;
  std::vector<AggregateSlot> slots_;
};

// ---------------------------------------------------------------------------
// Runtime values

std::optional<double> as_double(const Cell& c) {
  if (auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&c)) return *d;
  if (auto* b = std::get_if<bool>(&c)) return *b ? 1.0 : 0.0;
  return std::nullopt;
}

std::optional<std::int64_t> as_int(const Cell& c) {
  if (auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (auto* b = std::get_if<bool>(&c)) return *b ? 1 : 0;
  return std::nullopt;
}

DateTime as_datetime(const Cell& c) {
  if (auto* d = std::get_if<Date>(&c)) return DateTime{*d, 0, 0, 0};
  return std::get<DateTime>(c);
}

template <class T>
int three_way(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

// Both cells non-null and statically comparable.
int compare_cells(const Cell& a, const Cell& b) {
  auto ia = as_int(a);
  auto ib = as_int(b);
  if (ia && ib) return three_way(*ia, *ib);
  auto da = as_double(a);
  auto db = as_double(b);
  if (da && db) return three_way(*da, *db);
  if (auto* sa = std::get_if<std::string>(&a)) {
    int c = sa->compare(std::get<std::string>(b));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  return three_way(as_datetime(a), as_datetime(b));
}

bool truthy(const Cell& c) {
  if (auto* b = std::get_if<bool>(&c)) return *b;
  if (auto* i = std::get_if<std::int64_t>(&c)) return *i != 0;
  if (auto* d = std::get_if<double>(&c)) return *d != 0.0;
  return false;
}

Cell finite_or_null(double v) {
  if (!std::isfinite(v)) return std::monostate{};
  return v;
}

Cell arithmetic(BinaryOp op, SType result, const Cell& a, const Cell& b) {
  if (is_null(a) || is_null(b)) return std::monostate{};
  if (result == SType::Integer) {
    std::int64_t x = *as_int(a);
    std::int64_t y = *as_int(b);
    std::int64_t r = 0;
    bool overflow = false;
    switch (op) {
      case BinaryOp::Add: overflow = __builtin_add_overflow(x, y, &r); break;
      case BinaryOp::Sub: overflow = __builtin_sub_overflow(x, y, &r); break;
      case BinaryOp::Mul: overflow = __builtin_mul_overflow(x, y, &r); break;
      default: break;
    }
    if (overflow) return std::monostate{};
    return r;
  }
  double x = *as_double(a);
  double y = *as_double(b);
  switch (op) {
    case BinaryOp::Add: return finite_or_null(x + y);
    case BinaryOp::Sub: return finite_or_null(x - y);
    case BinaryOp::Mul: return finite_or_null(x * y);
    case BinaryOp::Div:
      if (y == 0.0) return std::monostate{};
      return finite_or_null(x / y);
    default: break;
  }
  return std::monostate{};
}

bool comparison(BinaryOp op, const Cell& a, const Cell& b) {
  if (is_null(a) || is_null(b)) return false;
  int c = compare_cells(a, b);
  switch (op) {
    case BinaryOp::Eq: return c == 0;
    case BinaryOp::Ne: return c != 0;
    case BinaryOp::Lt: return c < 0;
    case BinaryOp::Le: return c <= 0;
    case BinaryOp::Gt: return c > 0;
    case BinaryOp::Ge: return c >= 0;
    default: break;
  }
  return false;
}

// Evaluation context: a source row, plus aggregate values in grouped mode.
struct Context {
  const std::vector<Cell>* row = nullptr;
  const std::vector<Cell>* aggregates = nullptr;
  const std::vector<Cell>* outputs = nullptr;
};

Cell eval(const Bound& b, const Context& ctx) {
  switch (b.kind) {
    case Bound::Kind::Column: return (*ctx.row)[b.index];
    case Bound::Kind::Value: return b.value;
    case Bound::Kind::Aggregate: return (*ctx.aggregates)[b.index];
    case Bound::Kind::Output: return (*ctx.outputs)[b.index];
    case Bound::Kind::Not: return !truthy(eval(b.children[0], ctx));
    case Bound::Kind::In: {
      Cell v = eval(b.children[0], ctx);
      if (is_null(v)) return false;
      for (const auto& item : b.list)
        if (!is_null(item) && compare_cells(v, item) == 0) return true;
      return false;
    }
    case Bound::Kind::Binary: {
      if (b.op == BinaryOp::And)
        return truthy(eval(b.children[0], ctx)) && truthy(eval(b.children[1], ctx));
      if (b.op == BinaryOp::Or)
        return truthy(eval(b.children[0], ctx)) || truthy(eval(b.children[1], ctx));
      Cell lhs = eval(b.children[0], ctx);
      Cell rhs = eval(b.children[1], ctx);
      if (sql::is_comparison(b.op)) return comparison(b.op, lhs, rhs);
      return arithmetic(b.op, b.type, lhs, rhs);
    }
  }
  return std::monostate{};
}

Cell compute_aggregate(const AggregateSlot& slot, const std::vector<const std::vector<Cell>*>& rows) {
  if (slot.fn == AggFn::Count) {
    std::int64_t n = 0;
    for (const auto* r : rows)
      if (!slot.column || !is_null((*r)[*slot.column])) ++n;
    return n;
  }
  const std::size_t col = *slot.column;
  switch (slot.fn) {
    case AggFn::Sum:
      if (slot.arg_type == SType::Real) {
        double sum = 0;
        bool any = false;
        for (const auto* r : rows) {
          if (auto v = as_double((*r)[col])) {
            sum += *v;
            any = true;
          }
        }
        return any ? finite_or_null(sum) : Cell{};
      } else {
        std::int64_t sum = 0;
        bool any = false;
        for (const auto* r : rows) {
          if (auto v = as_int((*r)[col])) {
            if (__builtin_add_overflow(sum, *v, &sum)) return std::monostate{};
            any = true;
          }
        }
        return any ? Cell{sum} : Cell{};
      }
    case AggFn::Avg: {
      double sum = 0;
      std::size_t n = 0;
      for (const auto* r : rows) {
        if (auto v = as_double((*r)[col])) {
          sum += *v;
          ++n;
        }
      }
      if (n == 0) return std::monostate{};
      return finite_or_null(sum / static_cast<double>(n));
    }
    case AggFn::Min:
    case AggFn::Max: {
      const Cell* best = nullptr;
      for (const auto* r : rows) {
        const Cell& v = (*r)[col];
        if (is_null(v)) continue;
        int c = best ? compare_cells(v, *best) : 0;
        if (!best || (slot.fn == AggFn::Min ? c < 0 : c > 0)) best = &v;
      }
      return best ? *best : Cell{};
    }
    case AggFn::Count: break;
  }
  return std::monostate{};
}

struct OutputRow {
  std::vector<Cell> values;
  std::vector<Cell> keys;
};

bool sort_before(const OutputRow& a, const OutputRow& b, const std::vector<sql::SortDir>& dirs) {
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Cell& x = a.keys[i];
    const Cell& y = b.keys[i];
    const bool xn = is_null(x);
    const bool yn = is_null(y);
    if (xn && yn) continue;
    if (xn) return false;
    if (yn) return true;
    int c = compare_cells(x, y);
    if (c == 0) continue;
    return dirs[i] == sql::SortDir::Desc ? c > 0 : c < 0;
  }
  return false;
}

std::string output_name(const sql::SelectItem& item) {
  if (item.alias) return *item.alias;
  if (auto* ref = std::get_if<sql::ColumnRef>(&item.expr.node)) return ref->name;
  return sql::print_expr(item.expr);
}

}  // namespace

std::optional<std::size_t> ResultTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (iequals(columns[i].name, name)) return i;
  return std::nullopt;
}

ResultTable execute(const sql::SqlAst& ast, const Dataset& dataset) {
  const TableProfile& profile = dataset.profile;

  std::vector<std::size_t> keys;
  std::vector<std::size_t> empty_keys;
  Binder key_binder(profile, empty_keys);
  for (const auto& k : ast.group_by) keys.push_back(key_binder.column_index(k.name));

  const bool grouped = !ast.group_by.empty() ||
                       std::any_of(ast.items.begin(), ast.items.end(),
                                   [](const sql::SelectItem& it) {
                                     return sql::contains_aggregate(it.expr);
                                   }) ||
                       std::any_of(ast.order_by.begin(), ast.order_by.end(),
                                   [](const sql::OrderItem& o) {
                                     return sql::contains_aggregate(o.expr);
                                   });
  const RefMode mode = grouped ? RefMode::GroupKey : RefMode::Row;

  Binder binder(profile, keys);
  std::optional<Bound> where;
  if (ast.where) {
    where = binder.bind(*ast.where, RefMode::Row, false);
    check_truthy(*where, "WHERE");
  }

  std::vector<Bound> items;
  for (const auto& item : ast.items) items.push_back(binder.bind(item.expr, mode, true));

  std::vector<std::string> names;
  for (const auto& item : ast.items) names.push_back(output_name(item));

  std::vector<Bound> order;
  std::vector<sql::SortDir> dirs;
  for (const auto& o : ast.order_by) {
    dirs.push_back(o.dir);
    std::optional<std::size_t> out;
    if (auto* ref = std::get_if<sql::ColumnRef>(&o.expr.node)) {
      for (std::size_t i = 0; i < ast.items.size() && !out; ++i)
        if (ast.items[i].alias && iequals(*ast.items[i].alias, ref->name)) out = i;
    }
    for (std::size_t i = 0; i < ast.items.size() && !out; ++i)
      if (ast.items[i].expr == o.expr) out = i;
    if (out) {
      Bound b;
      b.kind = Bound::Kind::Output;
      b.index = *out;
      b.type = items[*out].type;
      order.push_back(std::move(b));
    } else {
      if (ast.distinct)
        throw Error(ErrorCode::InvalidGrouping,
                    "ORDER BY term '" + sql::print_expr(o.expr) +
                        "' must appear in the select list of a DISTINCT query");
      order.push_back(binder.bind(o.expr, mode, true));
    }
  }

  std::vector<const std::vector<Cell>*> filtered;
  filtered.reserve(dataset.rows.size());
  for (const auto& row : dataset.rows) {
    if (!where || truthy(eval(*where, Context{&row, nullptr, nullptr}))) filtered.push_back(&row);
  }

  std::vector<OutputRow> out_rows;
  auto emit = [&](const Context& base) {
    OutputRow r;
    r.values.reserve(items.size());
    for (const auto& b : items) r.values.push_back(eval(b, base));
    Context ctx = base;
    ctx.outputs = &r.values;
    for (const auto& b : order) r.keys.push_back(eval(b, ctx));
    out_rows.push_back(std::move(r));
  };

  if (grouped) {
    std::vector<std::vector<const std::vector<Cell>*>> groups;
    if (keys.empty()) {
      groups.push_back(filtered);
    } else {
      std::map<std::vector<Cell>, std::size_t> lookup;
      for (const auto* row : filtered) {
        std::vector<Cell> key;
        key.reserve(keys.size());
        for (auto k : keys) key.push_back((*row)[k]);
        auto [it, inserted] = lookup.try_emplace(std::move(key), groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(row);
      }
    }
    const auto& slots = binder.slots();
    const std::vector<Cell> no_row(profile.columns.size());
    for (const auto& g : groups) {
      std::vector<Cell> aggregates;
      aggregates.reserve(slots.size());
      for (const auto& s : slots) aggregates.push_back(compute_aggregate(s, g));
      emit(Context{g.empty() ? &no_row : g.front(), &aggregates, nullptr});
    }
  } else {
    for (const auto* row : filtered) emit(Context{row, nullptr, nullptr});
  }

  if (ast.distinct) {
    std::set<std::vector<Cell>> seen;
    std::vector<OutputRow> unique;
    for (auto& r : out_rows)
      if (seen.insert(r.values).second) unique.push_back(std::move(r));
    out_rows = std::move(unique);
  }

  if (!dirs.empty()) {
    std::stable_sort(out_rows.begin(), out_rows.end(),
                     [&](const OutputRow& a, const OutputRow& b) { return sort_before(a, b, dirs); });
  }

  if (ast.limit && static_cast<std::uint64_t>(*ast.limit) < out_rows.size())
    out_rows.resize(static_cast<std::size_t>(*ast.limit));

  ResultTable result;
  std::set<std::string> used;
  for (std::size_t i = 0; i < items.size(); ++i) {
    ResultColumn col;
    std::string name = names[i];
    for (int k = 2; used.count(ascii_lower(name)); ++k) name = names[i] + "_" + std::to_string(k);
    used.insert(ascii_lower(name));
    col.name = std::move(name);
    col.type = column_type_of(items[i].type);
    result.columns.push_back(std::move(col));
  }
  result.rows.reserve(out_rows.size());
  for (auto& r : out_rows) result.rows.push_back(std::move(r.values));

  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& col = result.columns[i];
    const Bound& b = items[i];
    if (b.kind == Bound::Kind::Column) {
      if (grouped && is_numeric(col.type)) {
        col.role = ColumnRole::Categorical;
      } else {
        std::vector<Cell> values;
        values.reserve(result.rows.size());
        for (const auto& row : result.rows) values.push_back(row[i]);
        col.role = infer_role(col.name, col.type, values, false);
      }
    } else if (is_numeric(col.type)) {
      col.role = ColumnRole::Continuous;
    } else if (is_temporal(col.type)) {
      col.role = ColumnRole::Temporal;
    } else {
      col.role = ColumnRole::Categorical;
    }
  }
  return result;
}

Json to_json(const ResultTable& table) {
  Json j;
  j["columns"] = Json::array();
  for (const auto& c : table.columns) {
    Json col;
    col["name"] = c.name;
    col["type"] = std::string(to_string(c.type));
    col["role"] = std::string(to_string(c.role));
    j["columns"].push_back(std::move(col));
  }
  j["rows"] = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::array();
    for (const auto& cell : row) r.push_back(cell_to_json(cell));
    j["rows"].push_back(std::move(r));
  }
  return j;
}

}  // namespace t2i
