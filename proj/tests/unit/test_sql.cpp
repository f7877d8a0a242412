#include <gtest/gtest.h>

#include <random>

#include "random_sql.hpp"
#include "t2i/sql.hpp"

using namespace t2i;
using namespace t2i::sql;

namespace {

ParseError parse_error(std::string_view text) {
  auto v = validate(text);
  EXPECT_FALSE(v.valid) << text;
  return v.error.value_or(ParseError{});
}

}  // namespace

TEST(Parse, TopRunGetters) {
  auto ast = parse("SELECT player_name, runs FROM table_name ORDER BY runs DESC LIMIT 10;");
  ASSERT_EQ(ast.items.size(), 2u);
  EXPECT_EQ(ast.items[0].expr, column("player_name"));
  EXPECT_EQ(ast.source, "table_name");
  ASSERT_EQ(ast.order_by.size(), 1u);
  EXPECT_EQ(ast.order_by[0].expr, column("runs"));
  EXPECT_EQ(ast.order_by[0].dir, SortDir::Desc);
  EXPECT_EQ(ast.limit, std::optional<std::int64_t>(10));
}

TEST(Parse, Aliases) {
  auto ast = parse(
      "SELECT Player as Player_Name, Wkts as Wickets FROM sql_df_from_csv_file_ ORDER BY Wkts DESC "
      "LIMIT 10");
  ASSERT_EQ(ast.items.size(), 2u);
  EXPECT_EQ(ast.items[0].alias, std::optional<std::string>("Player_Name"));
  EXPECT_EQ(ast.items[1].alias, std::optional<std::string>("Wickets"));
}

TEST(Parse, EmptySelectList) {
  EXPECT_THROW(parse("SELECT FROM t"), ParseException);
  try {
    parse("SELECT FROM t");
  } catch (const ParseException& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_EQ(e.detail().offset, 7u);
  }
}

TEST(Parse, Precedence) {
  auto ast = parse("SELECT a FROM t WHERE a = 1 OR b = 2 AND NOT c > 3");
  auto expected = binary(BinaryOp::Or, binary(BinaryOp::Eq, column("a"), literal(std::int64_t{1})),
                         binary(BinaryOp::And, binary(BinaryOp::Eq, column("b"), literal(std::int64_t{2})),
                                negate(binary(BinaryOp::Gt, column("c"), literal(std::int64_t{3})))));
  EXPECT_EQ(ast.where, std::optional<Expr>(expected));
  auto arith = parse("SELECT a + b * 2 - c / 4 FROM t").items[0].expr;
  EXPECT_EQ(print_expr(arith), "a + b * 2 - c / 4");
  EXPECT_EQ(print_expr(parse("SELECT (a + b) * 2 FROM t").items[0].expr), "(a + b) * 2");
  EXPECT_EQ(print_expr(parse("SELECT a - (b - c) FROM t").items[0].expr), "a - (b - c)");
}

TEST(Parse, LiteralsAndIdentifiers) {
  auto ast = parse("select \"my col\", COUNT(*), avg(x) from \"Bowling ODI\" where s = 'it''s' "
                   "and r >= 2.5 and n in (1, -2, NULL) and m not in ('a')");
  EXPECT_EQ(ast.items[0].expr, column("my col"));
  EXPECT_EQ(ast.items[1].expr, aggregate(AggFn::Count, std::nullopt));
  EXPECT_EQ(ast.items[2].expr, aggregate(AggFn::Avg, "x"));
  EXPECT_EQ(ast.source, "Bowling ODI");
  EXPECT_EQ(print_canonical(ast),
            "SELECT \"my col\", COUNT(*), AVG(x) FROM \"Bowling ODI\" WHERE s = 'it''s' AND r >= 2.5 "
            "AND n IN (1, -2, NULL) AND NOT m IN ('a')");
}

TEST(Parse, RealVsInteger) {
  auto ast = parse("SELECT 1, 1.0, 2e3 FROM t");
  EXPECT_EQ(ast.items[0].expr, literal(std::int64_t{1}));
  EXPECT_EQ(ast.items[1].expr, literal(1.0));
  EXPECT_EQ(ast.items[2].expr, literal(2000.0));
}

TEST(Print, Canonical) {
  EXPECT_EQ(print_canonical(parse("select a from t")), "SELECT a FROM t");
  auto ast = parse("SELECT a FROM t LIMIT 0");
  auto text = print_canonical(ast);
  EXPECT_TRUE(text.ends_with("LIMIT 0")) << text;
  EXPECT_EQ(print_canonical(parse("  select distinct a ,b  from t group by a,b order by a desc, b ")),
            "SELECT DISTINCT a, b FROM t GROUP BY a, b ORDER BY a DESC, b");
}

TEST(Print, QuoteIdentifier) {
  EXPECT_EQ(quote_identifier("runs"), "runs");
  EXPECT_EQ(quote_identifier("select"), "\"select\"");
  EXPECT_EQ(quote_identifier("my col"), "\"my col\"");
  EXPECT_EQ(quote_identifier("we\"ird"), "\"we\"\"ird\"");
  EXPECT_EQ(quote_identifier("4w"), "\"4w\"");
}

TEST(Validate, Examples) {
  EXPECT_TRUE(validate("SELECT a FROM t").valid);
  auto e = parse_error("SELCT a FROM t");
  EXPECT_EQ(e.offset, 0u);
  auto w = parse_error("SELECT a FROM t WHERE");
  EXPECT_NE(std::find(w.expected.begin(), w.expected.end(), "expression"), w.expected.end());
  EXPECT_EQ(w.offset, 21u);
}

TEST(Validate, Rejections) {
  parse_error("SELECT a FROM t LIMIT -1");
  parse_error("SELECT SUM(*) FROM t");
  parse_error("SELECT SUM(COUNT(a)) FROM t");
  parse_error("SELECT a AS x, b AS X FROM t");
  parse_error("SELECT a FROM t; SELECT b FROM t");
  parse_error("SELECT a FROM t JOIN u");
  parse_error("SELECT 'unterminated FROM t");
  parse_error("SELECT a, b FROM t GROUP BY a");
  parse_error("SELECT a FROM t LIMIT 99999999999999999999");
}

TEST(Validate, DeepNestingIsAnErrorNotACrash) {
  std::string deep = "SELECT " + std::string(100000, '(') + "a" + std::string(100000, ')') + " FROM t";
  auto v = validate(deep);
  EXPECT_FALSE(v.valid);
}

TEST(SqlProperty, RoundTrip) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    SqlAst ast = gen::random_ast(rng);
    const std::string text = print_canonical(ast);
    SqlAst back;
    try {
      back = parse(text);
    } catch (const ParseException& e) {
      FAIL() << "case " << i << ": " << text << " -> " << e.what() << " at " << e.detail().offset;
    }
    ASSERT_EQ(back, ast) << "case " << i << ": " << text << "\nreprinted: " << print_canonical(back);
    ASSERT_EQ(print_canonical(back), text);
  }
}

TEST(SqlProperty, ValidateIsTotal) {
  std::mt19937_64 rng(7);
  std::size_t valid = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string input = gen::fuzz_input(rng);
    Validation v = validate(input);
    if (v.valid) {
      ++valid;
      EXPECT_NO_THROW(parse(input));
    } else {
      ASSERT_TRUE(v.error.has_value());
      EXPECT_LE(v.error->offset, input.size());
    }
  }
  EXPECT_GT(valid, 0u);
}
