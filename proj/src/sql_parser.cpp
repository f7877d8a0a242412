#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "sql_lexer.hpp"
#include "t2i/sql.hpp"
#include "t2i/types.hpp"

namespace t2i::sql {

using detail::Tok;
using detail::Token;

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "AND";
    case BinaryOp::Or: return "OR";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
  }
  return "?";
}

std::string_view to_string(AggFn fn) {
  switch (fn) {
    case AggFn::Count: return "COUNT";
    case AggFn::Sum: return "SUM";
    case AggFn::Avg: return "AVG";
    case AggFn::Min: return "MIN";
    case AggFn::Max: return "MAX";
  }
  return "?";
}

bool is_comparison(BinaryOp op) {
  return op == BinaryOp::Eq || op == BinaryOp::Ne || op == BinaryOp::Lt ||
         op == BinaryOp::Le || op == BinaryOp::Gt || op == BinaryOp::Ge;
}

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul ||
         op == BinaryOp::Div;
}

Expr column(std::string name) { return Expr{ColumnRef{std::move(name)}}; }
Expr literal(std::int64_t v) { return Expr{Literal{v}}; }
Expr literal(double v) { return Expr{Literal{v}}; }
Expr literal(std::string v) { return Expr{Literal{std::move(v)}}; }
Expr null_literal() { return Expr{Literal{std::monostate{}}}; }
Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr{Binary{op, std::move(lhs), std::move(rhs)}};
}
Expr negate(Expr operand) { return Expr{Unary{std::move(operand)}}; }
Expr aggregate(AggFn fn, std::optional<std::string> col) {
  Aggregate a{fn, std::nullopt};
  if (col) a.arg = ColumnRef{std::move(*col)};
  return Expr{std::move(a)};
}

bool contains_aggregate(const Expr& e) {
  return std::visit(
      [](const auto& node) -> bool {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Aggregate>) {
          return true;
        } else if constexpr (std::is_same_v<N, Unary>) {
          return contains_aggregate(*node.operand);
        } else if constexpr (std::is_same_v<N, Binary>) {
          return contains_aggregate(*node.lhs) || contains_aggregate(*node.rhs);
        } else if constexpr (std::is_same_v<N, InList>) {
          return contains_aggregate(*node.operand);
        } else {
          return false;
        }
      },
      e.node);
}

namespace {

constexpr int kMaxDepth = 200;

std::optional<AggFn> aggregate_fn(std::string_view name) {
  if (iequals(name, "COUNT")) return AggFn::Count;
  if (iequals(name, "SUM")) return AggFn::Sum;
  if (iequals(name, "AVG")) return AggFn::Avg;
  if (iequals(name, "MIN")) return AggFn::Min;
  if (iequals(name, "MAX")) return AggFn::Max;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SqlAst parse_query() {
    SqlAst ast;
    expect_keyword("SELECT");
    ast.distinct = accept_keyword("DISTINCT");
    if (at_keyword("FROM") || peek().kind == Tok::End)
      fail({"expression"}, "empty select list");

    std::unordered_set<std::string> aliases;
    std::vector<std::size_t> item_offsets;
    do {
      std::size_t item_at = peek().offset;
      item_offsets.push_back(item_at);
      SelectItem item{parse_expr(), std::nullopt};
      if (accept_keyword("AS")) {
        item.alias = expect_identifier("alias");
      } else if (peek().kind == Tok::Ident || peek().kind == Tok::QuotedIdent) {
        item.alias = advance().text;
      }
      if (item.alias && !aliases.insert(ascii_lower(*item.alias)).second)
        fail_at(item_at, {}, "duplicate alias '" + *item.alias + "'");
      ast.items.push_back(std::move(item));
    } while (accept_symbol(","));

    expect_keyword("FROM");
    ast.source = expect_identifier("table name");

    if (accept_keyword("WHERE")) {
      std::size_t at = peek().offset;
      ast.where = parse_expr();
      if (contains_aggregate(*ast.where))
        fail_at(at, {}, "aggregate functions are not allowed in WHERE");
    }
    if (accept_keyword("GROUP")) {
      expect_keyword("BY");
      do {
        ast.group_by.push_back(ColumnRef{parse_column_name()});
      } while (accept_symbol(","));
    }
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      do {
        OrderItem item{parse_expr(), SortDir::Asc};
        if (accept_keyword("DESC")) {
          item.dir = SortDir::Desc;
        } else {
          accept_keyword("ASC");
        }
        ast.order_by.push_back(std::move(item));
      } while (accept_symbol(","));
    }
    if (accept_keyword("LIMIT")) {
      const Token& t = peek();
      if (t.kind != Tok::Integer) fail({"non-negative integer"}, "LIMIT needs a count");
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc()) fail({"non-negative integer"}, "LIMIT out of range");
      advance();
      ast.limit = v;
    }
    accept_symbol(";");
    if (peek().kind != Tok::End) {
      std::vector<std::string> expected{"end of input"};
      if (!ast.where && ast.group_by.empty() && ast.order_by.empty() && !ast.limit)
        expected.insert(expected.begin(), "WHERE");
      if (ast.group_by.empty() && ast.order_by.empty() && !ast.limit)
        expected.insert(expected.end() - 1, "GROUP BY");
      if (ast.order_by.empty() && !ast.limit) expected.insert(expected.end() - 1, "ORDER BY");
      if (!ast.limit) expected.insert(expected.end() - 1, "LIMIT");
      fail(expected, "unexpected " + std::string(detail::describe(peek())));
    }
    check_grouping(ast, item_offsets);
    return ast;
  }

 private:
  // expr := or
  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (accept_keyword("OR")) lhs = binary(BinaryOp::Or, std::move(lhs), parse_and());
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_not();
    while (accept_keyword("AND")) lhs = binary(BinaryOp::And, std::move(lhs), parse_not());
    return lhs;
  }

  Expr parse_not() {
    if (accept_keyword("NOT")) {
      DepthGuard g(*this);
      return negate(parse_not());
    }
    return parse_comparison();
  }

  Expr parse_comparison() {
    Expr lhs = parse_additive();
    static constexpr std::pair<std::string_view, BinaryOp> kOps[] = {
        {"=", BinaryOp::Eq}, {"!=", BinaryOp::Ne}, {"<>", BinaryOp::Ne}, {"<", BinaryOp::Lt},
        {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge}};
    if (peek().kind == Tok::Symbol) {
      for (const auto& [sym, op] : kOps) {
        if (peek().text == sym) {
          advance();
          return binary(op, std::move(lhs), parse_additive());
        }
      }
    }
    bool negated = false;
    if (at_keyword("NOT") && peek(1).kind == Tok::Keyword && peek(1).text == "IN") {
      advance();
      negated = true;
    }
    if (accept_keyword("IN")) {
      expect_symbol("(");
      InList list{std::move(lhs), {}};
      do {
        list.items.push_back(parse_literal_only());
      } while (accept_symbol(","));
      expect_symbol(")");
      Expr e{std::move(list)};
      return negated ? negate(std::move(e)) : e;
    }
    return lhs;
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    for (;;) {
      if (accept_symbol("+")) {
        lhs = binary(BinaryOp::Add, std::move(lhs), parse_multiplicative());
      } else if (accept_symbol("-")) {
        lhs = binary(BinaryOp::Sub, std::move(lhs), parse_multiplicative());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_primary();
    for (;;) {
      if (accept_symbol("*")) {
        lhs = binary(BinaryOp::Mul, std::move(lhs), parse_primary());
      } else if (accept_symbol("/")) {
        lhs = binary(BinaryOp::Div, std::move(lhs), parse_primary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Integer:
      case Tok::Real:
      case Tok::String:
        return Expr{parse_literal_only()};
      case Tok::Keyword:
        if (t.text == "NULL") return Expr{parse_literal_only()};
        break;
      case Tok::Symbol:
        if (t.text == "-") return Expr{parse_literal_only()};
        if (t.text == "(") {
          DepthGuard g(*this);
          advance();
          Expr inner = parse_expr();
          expect_symbol(")");
          return inner;
        }
        break;
      case Tok::Ident:
        if (peek(1).kind == Tok::Symbol && peek(1).text == "(") return parse_aggregate();
        return column(parse_column_name());
      case Tok::QuotedIdent:
        return column(parse_column_name());
      case Tok::End:
        break;
    }
    fail({"expression"}, t.kind == Tok::End ? "expected expression"
                                            : "unexpected " + std::string(detail::describe(t)));
  }

  Expr parse_aggregate() {
    const Token& name = peek();
    auto fn = aggregate_fn(name.text);
    if (!fn) fail({"COUNT", "SUM", "AVG", "MIN", "MAX"}, "unknown function '" + name.text + "'");
    advance();
    expect_symbol("(");
    Aggregate agg{*fn, std::nullopt};
    if (peek().kind == Tok::Symbol && peek().text == "*") {
      if (*fn != AggFn::Count) fail({"column"}, "'*' is only allowed in COUNT");
      advance();
    } else if (peek().kind == Tok::Ident || peek().kind == Tok::QuotedIdent) {
      if (peek(1).kind == Tok::Symbol && peek(1).text == "(")
        fail({"column"}, "aggregate functions cannot be nested");
      agg.arg = ColumnRef{parse_column_name()};
    } else {
      fail(*fn == AggFn::Count ? std::vector<std::string>{"*", "column"}
                               : std::vector<std::string>{"column"},
           "aggregate argument must be a column");
    }
    expect_symbol(")");
    return Expr{std::move(agg)};
  }

  Literal parse_literal_only() {
    bool negative = false;
    if (peek().kind == Tok::Symbol && peek().text == "-") {
      advance();
      negative = true;
      if (peek().kind != Tok::Integer && peek().kind != Tok::Real)
        fail({"number"}, "unary minus applies only to numeric literals");
    }
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Integer: {
        std::string digits = negative ? "-" + t.text : t.text;
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc()) fail({}, "integer literal out of range");
        advance();
        return Literal{v};
      }
      case Tok::Real: {
        auto v = parse_real(t.text);
        if (!v) fail({}, "real literal out of range");
        advance();
        return Literal{negative ? -*v : *v};
      }
      case Tok::String: {
        std::string s = t.text;
        advance();
        return Literal{std::move(s)};
      }
      case Tok::Keyword:
        if (t.text == "NULL") {
          advance();
          return Literal{std::monostate{}};
        }
        break;
      default:
        break;
    }
    fail({"literal"}, "expected literal");
  }

  std::string parse_column_name() {
    std::string name = expect_identifier("column");
    // table-qualified reference: the qualifier is dropped
    if (peek().kind == Tok::Symbol && peek().text == ".") {
      advance();
      name = expect_identifier("column");
    }
    return name;
  }

  void check_grouping(const SqlAst& ast, const std::vector<std::size_t>& item_offsets) {
    if (ast.group_by.empty()) return;
    auto is_key = [&](const ColumnRef& ref) {
      return std::any_of(ast.group_by.begin(), ast.group_by.end(),
                         [&](const ColumnRef& k) { return iequals(k.name, ref.name); });
    };
    for (std::size_t i = 0; i < ast.items.size(); ++i) {
      const auto& item = ast.items[i];
      bool ok = true;
      std::string offending;
      check_refs_outside_aggregates(item.expr, [&](const ColumnRef& ref) {
        if (ok && !is_key(ref)) {
          ok = false;
          offending = ref.name;
        }
      });
      if (!ok)
        fail_at(item_offsets[i], {}, "column '" + offending + "' must appear in GROUP BY or an aggregate");
    }
  }

  template <class F>
  static void check_refs_outside_aggregates(const Expr& e, F&& f) {
    std::visit(
        [&](const auto& node) {
          using N = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<N, ColumnRef>) {
            f(node);
          } else if constexpr (std::is_same_v<N, Unary>) {
            check_refs_outside_aggregates(*node.operand, f);
          } else if constexpr (std::is_same_v<N, Binary>) {
            check_refs_outside_aggregates(*node.lhs, f);
            check_refs_outside_aggregates(*node.rhs, f);
          } else if constexpr (std::is_same_v<N, InList>) {
            check_refs_outside_aggregates(*node.operand, f);
          }
        },
        e.node);
  }

  // --- token plumbing -----------------------------------------------------

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) parser.fail({}, "expression nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::Keyword && peek().text == kw;
  }
  bool accept_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    advance();
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail({std::string(kw)}, "expected " + std::string(kw));
  }
  bool accept_symbol(std::string_view sym) {
    if (peek().kind != Tok::Symbol || peek().text != sym) return false;
    advance();
    return true;
  }
  void expect_symbol(std::string_view sym) {
    if (!accept_symbol(sym)) fail({std::string(sym)}, "expected '" + std::string(sym) + "'");
  }
  std::string expect_identifier(std::string_view what) {
    if (peek().kind != Tok::Ident && peek().kind != Tok::QuotedIdent)
      fail({std::string(what)}, "expected " + std::string(what));
    return advance().text;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, std::string message) const {
    fail_at(peek().offset, std::move(expected), std::move(message));
  }
  [[noreturn]] static void fail_at(std::size_t offset, std::vector<std::string> expected,
                                   std::string message) {
    throw ParseException(ParseError{offset, std::move(expected), std::move(message)});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

SqlAst parse(std::string_view text) {
  Parser p(detail::tokenize(text));
  return p.parse_query();
}

Validation validate(std::string_view text) noexcept {
  try {
    parse(text);
    return {true, std::nullopt};
  } catch (const ParseException& e) {
    return {false, e.detail()};
  } catch (const std::exception& e) {
    return {false, ParseError{0, {}, e.what()}};
  }
}

}  // namespace t2i::sql
