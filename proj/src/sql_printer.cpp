#include "t2i/sql.hpp"
#include "t2i/types.hpp"

namespace t2i::sql {

namespace {

// Binding strength, loosest first. Must mirror the parser's levels.
constexpr int kPrecOr = 1;
constexpr int kPrecAnd = 2;
constexpr int kPrecNot = 3;
constexpr int kPrecCmp = 4;
constexpr int kPrecAdd = 5;
constexpr int kPrecMul = 6;
constexpr int kPrecAtom = 7;

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    switch (b->op) {
      case BinaryOp::Or: return kPrecOr;
      case BinaryOp::And: return kPrecAnd;
      case BinaryOp::Add:
      case BinaryOp::Sub: return kPrecAdd;
      case BinaryOp::Mul:
      case BinaryOp::Div: return kPrecMul;
      default: return kPrecCmp;
    }
  }
  if (std::holds_alternative<Unary>(e.node)) return kPrecNot;
  if (std::holds_alternative<InList>(e.node)) return kPrecCmp;
  return kPrecAtom;
}

std::string print_literal(const Literal& lit) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "NULL"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& s) const {
      std::string out = "'";
      for (char c : s) {
        if (c == '\'') out += '\'';
        out += c;
      }
      return out + "'";
    }
  };
  return std::visit(Visitor{}, lit.value);
}

void print(const Expr& e, int min_prec, std::string& out);

void print_node(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, ColumnRef>) {
          out += quote_identifier(node.name);
        } else if constexpr (std::is_same_v<N, Literal>) {
          out += print_literal(node);
        } else if constexpr (std::is_same_v<N, Unary>) {
          out += "NOT ";
          print(*node.operand, kPrecNot, out);
        } else if constexpr (std::is_same_v<N, Binary>) {
          const int p = precedence(e);
          // comparisons do not chain, so both sides bind tighter
          print(*node.lhs, is_comparison(node.op) ? p + 1 : p, out);
          out += ' ';
          out += to_string(node.op);
          out += ' ';
          print(*node.rhs, p + 1, out);
        } else if constexpr (std::is_same_v<N, InList>) {
          print(*node.operand, kPrecAdd, out);
          out += " IN (";
          for (std::size_t i = 0; i < node.items.size(); ++i) {
            if (i) out += ", ";
            out += print_literal(node.items[i]);
          }
          out += ')';
        } else if constexpr (std::is_same_v<N, Aggregate>) {
          out += to_string(node.fn);
          out += '(';
          out += node.arg ? quote_identifier(node.arg->name) : "*";
          out += ')';
        }
      },
      e.node);
}

void print(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print_node(e, out);
    out += ')';
  } else {
    print_node(e, out);
  }
}

}  // namespace

std::string print_expr(const Expr& expr) {
  std::string out;
  print(expr, 0, out);
  return out;
}

std::string print_canonical(const SqlAst& ast) {
  std::string out = "SELECT ";
  if (ast.distinct) out += "DISTINCT ";
  for (std::size_t i = 0; i < ast.items.size(); ++i) {
    if (i) out += ", ";
    print(ast.items[i].expr, 0, out);
    if (ast.items[i].alias) out += " AS " + quote_identifier(*ast.items[i].alias);
  }
  out += " FROM " + quote_identifier(ast.source);
  if (ast.where) {
    out += " WHERE ";
    print(*ast.where, 0, out);
  }
  if (!ast.group_by.empty()) {
    out += " GROUP BY ";
    for (std::size_t i = 0; i < ast.group_by.size(); ++i) {
      if (i) out += ", ";
      out += quote_identifier(ast.group_by[i].name);
    }
  }
  if (!ast.order_by.empty()) {
    out += " ORDER BY ";
    for (std::size_t i = 0; i < ast.order_by.size(); ++i) {
      if (i) out += ", ";
      print(ast.order_by[i].expr, 0, out);
      if (ast.order_by[i].dir == SortDir::Desc) out += " DESC";
    }
  }
  if (ast.limit) out += " LIMIT " + std::to_string(*ast.limit);
  return out;
}

}  // namespace t2i::sql
