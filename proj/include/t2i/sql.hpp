#pragma once

// SQL subset used by the pipeline: single-table SELECT with WHERE, GROUP BY,
// ORDER BY and LIMIT. Grammar in docs/grammar.md.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "t2i/error.hpp"

namespace t2i::sql {

/// Heap-allocated value with deep-copy semantics, for recursive AST nodes.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

enum class BinaryOp { Eq, Ne, Lt, Le, Gt, Ge, And, Or, Add, Sub, Mul, Div };
enum class AggFn { Count, Sum, Avg, Min, Max };
enum class SortDir { Asc, Desc };

std::string_view to_string(BinaryOp op);
std::string_view to_string(AggFn fn);

bool is_comparison(BinaryOp op);
bool is_arithmetic(BinaryOp op);

struct Expr;

struct ColumnRef {
  std::string name;
  bool operator==(const ColumnRef&) const = default;
};

struct Literal {
  // monostate = NULL
  std::variant<std::monostate, std::int64_t, double, std::string> value;
  bool operator==(const Literal&) const = default;
};

/// Logical NOT; the only unary operator in the grammar.
struct Unary {
  Box<Expr> operand;
  bool operator==(const Unary&) const = default;
};

struct Binary {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const Binary&) const = default;
};

struct InList {
  Box<Expr> operand;
  std::vector<Literal> items;
  bool operator==(const InList&) const = default;
};

struct Aggregate {
  AggFn fn;
  std::optional<ColumnRef> arg;  // nullopt = '*', COUNT only
  bool operator==(const Aggregate&) const = default;
};

struct Expr {
  std::variant<ColumnRef, Literal, Unary, Binary, InList, Aggregate> node;
  bool operator==(const Expr&) const = default;
};

struct SelectItem {
  Expr expr;
  std::optional<std::string> alias;
  bool operator==(const SelectItem&) const = default;
};

struct OrderItem {
  Expr expr;
  SortDir dir = SortDir::Asc;
  bool operator==(const OrderItem&) const = default;
};

struct SqlAst {
  bool distinct = false;
  std::vector<SelectItem> items;
  std::string source;
  std::optional<Expr> where;
  std::vector<ColumnRef> group_by;
  std::vector<OrderItem> order_by;
  std::optional<std::int64_t> limit;

  bool operator==(const SqlAst&) const = default;
};

// Expression helpers.
Expr column(std::string name);
Expr literal(std::int64_t v);
Expr literal(double v);
Expr literal(std::string v);
Expr null_literal();
Expr binary(BinaryOp op, Expr lhs, Expr rhs);
Expr negate(Expr operand);
Expr aggregate(AggFn fn, std::optional<std::string> column);

bool contains_aggregate(const Expr& e);

/// Visits every ColumnRef (including aggregate arguments) in evaluation order.
template <class F>
void for_each_column_ref(const Expr& e, F&& f);
template <class F>
void for_each_column_ref(Expr& e, F&& f);

struct ParseError {
  std::size_t offset = 0;
  std::vector<std::string> expected;
  std::string message;

  bool operator==(const ParseError&) const = default;
};

class ParseException : public Error {
 public:
  explicit ParseException(ParseError detail);
  const ParseError& detail() const noexcept { return detail_; }

 private:
  ParseError detail_;
};

/// Throws ParseException.
SqlAst parse(std::string_view text);

/// Upper-case keywords, single spaces, minimal parentheses, no semicolon.
std::string print_canonical(const SqlAst& ast);
std::string print_expr(const Expr& expr);

struct Validation {
  bool valid = false;
  std::optional<ParseError> error;
};

/// Never throws; a ParseError is returned as data.
Validation validate(std::string_view text) noexcept;

bool is_reserved_keyword(std::string_view word);

/// Bare when the name is a plain identifier that is not a keyword, otherwise
/// double-quoted with embedded quotes doubled.
std::string quote_identifier(std::string_view name);

// ---------------------------------------------------------------------------

template <class E, class F>
void visit_column_refs_impl(E& e, F& f) {
  std::visit(
      [&](auto& node) {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, ColumnRef>) {
          f(node);
        } else if constexpr (std::is_same_v<N, Unary>) {
          visit_column_refs_impl(*node.operand, f);
        } else if constexpr (std::is_same_v<N, Binary>) {
          visit_column_refs_impl(*node.lhs, f);
          visit_column_refs_impl(*node.rhs, f);
        } else if constexpr (std::is_same_v<N, InList>) {
          visit_column_refs_impl(*node.operand, f);
        } else if constexpr (std::is_same_v<N, Aggregate>) {
          if (node.arg) f(*node.arg);
        }
      },
      e.node);
}

template <class F>
void for_each_column_ref(const Expr& e, F&& f) {
  visit_column_refs_impl(e, f);
}

template <class F>
void for_each_column_ref(Expr& e, F&& f) {
  visit_column_refs_impl(e, f);
}

}  // namespace t2i::sql
