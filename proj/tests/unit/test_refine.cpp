#include <gtest/gtest.h>

#include <random>

#include "t2i/refine.hpp"

using namespace t2i;
using namespace t2i::sql;

namespace {

TableProfile bowling_schema() {
  TableProfile p;
  p.table_name = "bowling_odi";
  for (const char* name : {"Player", "Span", "Mat", "Inns", "Balls", "Runs", "Wkts", "BBI", "Ave",
                           "Econ", "SR", "4w", "5w"}) {
    ColumnProfile c;
    c.name = name;
    p.columns.push_back(c);
  }
  p.column_count = p.columns.size();
  return p;
}

TableProfile batting_schema() {
  TableProfile p;
  p.table_name = "odi_batting";
  for (const char* name : {"player_name", "country", "span", "matches", "innings", "not_outs", "runs",
                           "highest_score", "average", "balls_faced", "strike_rate", "one_hundred",
                           "fifty", "ducks"}) {
    ColumnProfile c;
    c.name = name;
    p.columns.push_back(c);
  }
  p.column_count = p.columns.size();
  return p;
}

std::vector<std::string> refs_of(const SqlAst& ast) {
  std::vector<std::string> out;
  auto collect = [&](const ColumnRef& r) { out.push_back(r.name); };
  for (const auto& item : ast.items) for_each_column_ref(item.expr, collect);
  if (ast.where) for_each_column_ref(*ast.where, collect);
  for (const auto& g : ast.group_by) out.push_back(g.name);
  for (const auto& o : ast.order_by) for_each_column_ref(o.expr, collect);
  return out;
}

std::string random_identifier(std::mt19937_64& rng) {
  const char alphabet[] = "abcdefgwkts_-ABCRUN 0";
  std::string s;
  int n = static_cast<int>(rng() % 10);
  for (int i = 0; i < n; ++i) s += alphabet[rng() % (sizeof alphabet - 1)];
  return s;
}

}  // namespace

TEST(Similarity, Examples) {
  EXPECT_DOUBLE_EQ(name_similarity("runs", "runs"), 1.0);
  EXPECT_NEAR(name_similarity("wickets", "Wkts"), 8.0 / 11.0, 1e-12);
  EXPECT_NEAR(name_similarity("runs", "venue"), 2.0 / 9.0, 1e-12);
  EXPECT_LT(name_similarity("runs", "venue"), kRefineThreshold);
}

TEST(Similarity, Components) {
  EXPECT_EQ(fold_identifier("Player_Name"), "playername");
  EXPECT_EQ(fold_identifier("strike-rate x"), "strikeratex");
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(lcs_length("wickets", "wkts"), 4u);
  EXPECT_DOUBLE_EQ(name_similarity("strike_rate", "StrikeRate"), 1.0);
}

TEST(Refine, WicketsQueryAgainstBowlingSchema) {
  auto ast = parse("SELECT player_name, wickets FROM players ORDER BY wickets DESC LIMIT 10");
  auto refined = refine_query(ast, bowling_schema());
  EXPECT_EQ(refined.ast.source, "bowling_odi");
  auto refs = refs_of(refined.ast);
  EXPECT_EQ(refs, (std::vector<std::string>{"Player", "Wkts", "Wkts"}));
  ASSERT_EQ(refined.report.substitutions.size(), 2u);
  EXPECT_EQ(refined.report.substitutions[1].original, "wickets");
  EXPECT_EQ(refined.report.substitutions[1].replacement, "Wkts");
  EXPECT_NEAR(refined.report.substitutions[1].score, 8.0 / 11.0, 1e-12);
  EXPECT_TRUE(refined.report.unresolved.empty());
}

TEST(Refine, ExistingRefsUnchanged) {
  auto ast = parse("SELECT Player, Wkts FROM bowling_odi ORDER BY Wkts DESC LIMIT 10");
  auto refined = refine_query(ast, bowling_schema());
  EXPECT_EQ(refined.ast, ast);
  EXPECT_TRUE(refined.report.substitutions.empty());
}

TEST(Refine, UnresolvedIdentifier) {
  auto ast = parse("SELECT prime_minister FROM india");
  try {
    refine_query(ast, batting_schema());
    FAIL() << "expected UnresolvedIdentifiers";
  } catch (const UnresolvedIdentifiers& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvedIdentifiers);
    EXPECT_EQ(e.report().unresolved, std::vector<std::string>{"prime_minister"});
  }
  for (const auto& c : batting_schema().columns)
    EXPECT_LT(name_similarity("prime_minister", c.name), kRefineThreshold) << c.name;
}

TEST(Refine, AllClausesAndAggregates) {
  auto ast = parse("SELECT cntry, AVG(strikerate) FROM x WHERE hundreds > 2 GROUP BY cntry "
                   "ORDER BY AVG(strikerate) DESC");
  auto refined = refine_query(ast, batting_schema());
  auto refs = refs_of(refined.ast);
  for (const auto& r : refs) EXPECT_TRUE(batting_schema().find(r) != nullptr) << r;
}

TEST(Refine, TieBreakIsLexicographic) {
  TableProfile p;
  p.table_name = "t";
  p.columns = {{"abd", ColumnType::Integer}, {"abc", ColumnType::Integer}};
  p.column_count = 2;
  auto m = best_schema_match("abx", p);
  EXPECT_EQ(m.column, "abc");
}

TEST(RefineProperty, ScoreBoundsAndSymmetry) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    auto a = random_identifier(rng);
    auto b = random_identifier(rng);
    double s = name_similarity(a, b);
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, 1.0);
    ASSERT_EQ(s, name_similarity(b, a)) << a << " / " << b;
    ASSERT_EQ(name_similarity(a, a), 1.0);
  }
}

TEST(RefineProperty, IdempotenceAndClosure) {
  std::mt19937_64 rng(6);
  const auto schema = batting_schema();
  const char* noisy[] = {"player",   "players", "runs",  "Runs",   "avg",    "average_",
                         "strikert", "hundred", "fifty", "ducks",  "innings", "country_",
                         "matchs",   "balls",   "Span",  "notout", "high"};
  int resolved = 0;
  for (int i = 0; i < 500; ++i) {
    std::string a = noisy[rng() % std::size(noisy)];
    std::string b = noisy[rng() % std::size(noisy)];
    std::string sql = "SELECT " + a + ", " + b + " FROM t WHERE " + a + " > 1 ORDER BY " + b + " DESC";
    RefinedQuery once;
    try {
      once = refine_query(parse(sql), schema);
    } catch (const UnresolvedIdentifiers&) {
      continue;
    }
    ++resolved;
    for (const auto& r : refs_of(once.ast)) {
      const auto* c = schema.find(r);
      ASSERT_NE(c, nullptr) << r;
      EXPECT_EQ(c->name, r);
    }
    auto twice = refine_query(once.ast, schema);
    EXPECT_EQ(twice.ast, once.ast) << sql;
    EXPECT_TRUE(twice.report.substitutions.empty()) << sql;
  }
  EXPECT_GT(resolved, 100);
}
