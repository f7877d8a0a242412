#include <gtest/gtest.h>

#include "chart_reference.hpp"
#include "t2i/chart.hpp"
#include "t2i/error.hpp"

using namespace t2i;

namespace {

ResultColumn col(std::string name, ColumnRole role) {
  ColumnType type = ColumnType::Text;
  if (role == ColumnRole::Continuous) type = ColumnType::Real;
  if (role == ColumnRole::Temporal) type = ColumnType::Date;
  return {std::move(name), type, role};
}

// Table with the given role census; the first categorical column carries
// exactly `card` distinct labels.
ResultTable shaped_table(const ref::Shape& s) {
  ResultTable t;
  for (int i = 0; i < s.cat; ++i) t.columns.push_back(col("cat" + std::to_string(i), ColumnRole::Categorical));
  for (int i = 0; i < s.cont; ++i) t.columns.push_back(col("m" + std::to_string(i), ColumnRole::Continuous));
  for (int i = 0; i < s.temp; ++i) t.columns.push_back(col("d" + std::to_string(i), ColumnRole::Temporal));
  for (int r = 0; r < s.rows; ++r) {
    std::vector<Cell> row;
    for (int i = 0; i < s.cat; ++i) {
      int label = i == 0 ? r % std::max(1, s.card) : r;
      row.emplace_back("L" + std::to_string(label));
    }
    for (int i = 0; i < s.cont; ++i) row.emplace_back(!s.nonneg && r == 0 ? -1.0 : r + 0.5 * i);
    for (int i = 0; i < s.temp; ++i) row.emplace_back(Date{2000 + r, 1, 1 + i});
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string predicted_name(const DataShape& shape, std::optional<ChartType> requested) {
  try {
    return std::string(to_string(predict_chart(shape, requested)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyDataset) return "empty";
    EXPECT_EQ(e.code(), ErrorCode::NoSuitableChart);
    return "";
  }
}

ChartType predicted(const ResultTable& t, std::optional<ChartType> requested = std::nullopt) {
  return predict_chart(classify_shape(t), requested);
}

ResultTable table(std::vector<ResultColumn> cols, std::vector<std::vector<Cell>> rows) {
  ResultTable t;
  t.columns = std::move(cols);
  t.rows = std::move(rows);
  return t;
}

}  // namespace

TEST(Shape, Examples) {
  auto a = classify_shape(table({col("Player", ColumnRole::Categorical), col("Runs", ColumnRole::Continuous)},
                                {{std::string("x"), 1.0}}));
  EXPECT_EQ(a.n_categorical, 1u);
  EXPECT_EQ(a.n_continuous, 1u);
  EXPECT_EQ(a.arity, Arity::Univariate);

  auto b = classify_shape(table({col("date", ColumnRole::Temporal), col("runs", ColumnRole::Continuous)},
                                {{Date{2024, 4, 9}, 1.0}}));
  EXPECT_EQ(b.n_temporal, 1u);
  EXPECT_EQ(b.n_continuous, 1u);

  auto c = classify_shape(table({col("Player", ColumnRole::Categorical), col("runs", ColumnRole::Continuous),
                                 col("average", ColumnRole::Continuous),
                                 col("strike_rate", ColumnRole::Continuous),
                                 col("one_hundred", ColumnRole::Continuous)},
                                {}));
  EXPECT_EQ(c.n_categorical, 1u);
  EXPECT_EQ(c.n_continuous, 4u);
  EXPECT_EQ(c.arity, Arity::Multivariate);
  EXPECT_EQ(c.n_rows, 0u);
}

TEST(Shape, IdentifiersCountAsCategorical) {
  auto s = classify_shape(table({col("id", ColumnRole::Identifier), col("x", ColumnRole::Continuous)},
                                {{std::int64_t{1}, 2.0}, {std::int64_t{2}, -1.0}}));
  EXPECT_EQ(s.n_categorical, 1u);
  EXPECT_EQ(s.category_cardinality, 2u);
  EXPECT_FALSE(s.measures_nonnegative);
}

TEST(Detect, Examples) {
  EXPECT_EQ(detect_requested_chart("Provide me pie chart for top 5 player with their 100?"), ChartType::Pie);
  EXPECT_EQ(detect_requested_chart("show runs per team"), std::nullopt);
  EXPECT_EQ(detect_requested_chart("not a bar chart, show wickets by team"), std::nullopt);
  EXPECT_EQ(detect_requested_chart("Show a line chart of average and strike rate"), ChartType::Line);
  EXPECT_EQ(detect_requested_chart("heatmap of runs"), ChartType::Heatmap);
  EXPECT_EQ(detect_requested_chart("bar of chocolate"), std::nullopt);
  EXPECT_EQ(detect_requested_chart("without a pie, give me a scatter"), ChartType::Scatter);
  EXPECT_EQ(detect_requested_chart("BOXPLOT please"), ChartType::Box);
}

TEST(Predict, TableRowsByCascade) {
  auto bar = table({col("Player", ColumnRole::Categorical), col("Runs", ColumnRole::Continuous)},
                   {{std::string("a"), 1.0}, {std::string("b"), 2.0}});
  EXPECT_EQ(predicted(bar), ChartType::Bar);
  auto box = table({col("runs", ColumnRole::Continuous)}, {{1.0}, {2.0}});
  EXPECT_EQ(predicted(box), ChartType::Box);
  auto line = table({col("date", ColumnRole::Temporal), col("runs", ColumnRole::Continuous)},
                    {{Date{2020, 1, 1}, 1.0}, {Date{2021, 1, 1}, 2.0}});
  EXPECT_EQ(predicted(line), ChartType::Line);
  auto scatter = table({col("average", ColumnRole::Continuous), col("strike_rate", ColumnRole::Continuous)},
                       {{1.0, 2.0}});
  EXPECT_EQ(predicted(scatter), ChartType::Scatter);
  auto bubble = table({col("a", ColumnRole::Continuous), col("b", ColumnRole::Continuous),
                       col("c", ColumnRole::Continuous)},
                      {{1.0, 2.0, 3.0}});
  EXPECT_EQ(predicted(bubble), ChartType::Bubble);
}

TEST(Predict, TableRowsByRequest) {
  auto pie = table({col("Player", ColumnRole::Categorical), col("100", ColumnRole::Continuous)},
                   {{std::string("a"), 49.0}, {std::string("b"), 43.0}, {std::string("c"), 30.0}});
  EXPECT_EQ(predicted(pie, ChartType::Pie), ChartType::Pie);
  auto hist = table({col("runs", ColumnRole::Continuous)}, {{1.0}, {2.0}});
  EXPECT_EQ(predicted(hist, ChartType::Histogram), ChartType::Histogram);
  auto area = table({col("date", ColumnRole::Temporal), col("runs", ColumnRole::Continuous)},
                    {{Date{2020, 1, 1}, 1.0}});
  EXPECT_EQ(predicted(area, ChartType::Area), ChartType::Area);
  auto multi = table({col("Player", ColumnRole::Categorical), col("runs", ColumnRole::Continuous),
                      col("average", ColumnRole::Continuous), col("strike_rate", ColumnRole::Continuous)},
                     {{std::string("a"), 1.0, 2.0, 3.0}});
  EXPECT_EQ(predicted(multi, ChartType::Radar), ChartType::Radar);
  EXPECT_EQ(predicted(multi, ChartType::Heatmap), ChartType::Heatmap);
}

TEST(Predict, Errors) {
  auto empty = table({col("Player", ColumnRole::Categorical), col("Runs", ColumnRole::Continuous)}, {});
  try {
    predicted(empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyDataset);
  }
  auto text_only = table({col("Player", ColumnRole::Categorical)}, {{std::string("a")}});
  try {
    predicted(text_only);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSuitableChart);
  }
}

TEST(Predict, InapplicableRequestFallsBackToCascade) {
  auto bar = table({col("Player", ColumnRole::Categorical), col("Runs", ColumnRole::Continuous)},
                   {{std::string("a"), 1.0}, {std::string("b"), 2.0}});
  EXPECT_EQ(predicted(bar, ChartType::Bubble), ChartType::Bar);
}

TEST(ChartProperty, ExhaustiveCascadeMatchesReference) {
  int cases = 0;
  for (int cat = 0; cat <= 4; ++cat)
    for (int cont = 0; cont <= 4; ++cont)
      for (int temp = 0; temp <= 4; ++temp)
        for (int card : {1, 2, 5, 12, 13, 50, 51})
          for (bool nonneg : {true, false})
            for (bool empty : {false, true}) {
              if (cat == 0 && card != 1) continue;
              ref::Shape s{cat, cont, temp, cat + cont + temp, empty ? 0 : std::max(card, 2),
                           cat ? card : 0, nonneg || cont == 0 || empty};
              auto t = shaped_table(s);
              auto shape = classify_shape(t);
              ASSERT_EQ(shape.n_categorical, static_cast<std::size_t>(cat));
              ASSERT_EQ(shape.n_continuous, static_cast<std::size_t>(cont));
              ASSERT_EQ(shape.n_temporal, static_cast<std::size_t>(temp));
              if (!empty) ASSERT_EQ(shape.category_cardinality, static_cast<std::size_t>(s.card));
              ASSERT_EQ(shape.measures_nonnegative, s.nonneg);
              ASSERT_EQ(predicted_name(shape, std::nullopt), ref::expected_chart(s))
                  << "cat=" << cat << " cont=" << cont << " temp=" << temp << " card=" << card
                  << " nonneg=" << nonneg << " rows=" << s.rows;
              ++cases;
            }
  EXPECT_GT(cases, 1000);
}

TEST(ChartProperty, RequestDominance) {
  for (int cat = 0; cat <= 3; ++cat)
    for (int cont = 0; cont <= 4; ++cont)
      for (int temp = 0; temp <= 2; ++temp)
        for (int card : {2, 13}) {
          ref::Shape s{cat, cont, temp, cat + cont + temp, card, cat ? card : 0, true};
          auto t = shaped_table(s);
          auto shape = classify_shape(t);
          for (ChartType type : kCascadeOrder) {
            if (!constructible(type, shape)) continue;
            EXPECT_EQ(predict_chart(shape, type), type);
            auto spec = build_chart_spec(t, type, "q");
            EXPECT_EQ(spec.chart_type, type);
          }
        }
}

TEST(ChartProperty, CascadeConditionsImplyConstructible) {
  for (int cat = 0; cat <= 4; ++cat)
    for (int cont = 0; cont <= 4; ++cont)
      for (int temp = 0; temp <= 4; ++temp)
        for (int card : {2, 12, 51}) {
          ref::Shape s{cat, cont, temp, cat + cont + temp, card, cat ? card : 0, true};
          auto shape = classify_shape(shaped_table(s));
          for (ChartType type : kCascadeOrder)
            if (cascade_condition(type, shape)) EXPECT_TRUE(constructible(type, shape)) << to_string(type);
        }
}

TEST(BuildSpec, Axes) {
  auto bar = table({col("Player", ColumnRole::Categorical), col("Runs", ColumnRole::Continuous)},
                   {{std::string("a"), 1.0}});
  auto spec = build_chart_spec(bar, ChartType::Bar, "t");
  EXPECT_EQ(spec.x, std::optional<std::string>("Player"));
  EXPECT_EQ(spec.y, std::vector<std::string>{"Runs"});

  auto scatter = table({col("average", ColumnRole::Continuous), col("strike_rate", ColumnRole::Continuous)},
                       {{1.0, 2.0}});
  auto s = build_chart_spec(scatter, ChartType::Scatter, "t");
  EXPECT_EQ(s.x, std::optional<std::string>("average"));
  EXPECT_EQ(s.y, std::vector<std::string>{"strike_rate"});

  auto bubble = table({col("who", ColumnRole::Categorical), col("a", ColumnRole::Continuous),
                       col("b", ColumnRole::Continuous), col("c", ColumnRole::Continuous)},
                      {{std::string("p"), 1.0, 2.0, 3.0}});
  auto b = build_chart_spec(bubble, ChartType::Bubble, "t");
  EXPECT_EQ(b.x, std::optional<std::string>("a"));
  EXPECT_EQ(b.y, std::vector<std::string>{"b"});
  EXPECT_EQ(b.size, std::optional<std::string>("c"));
  EXPECT_EQ(b.color, std::optional<std::string>("who"));
}

TEST(BuildSpec, PieOverThirteenCategories) {
  ref::Shape s{1, 1, 0, 2, 13, 13, true};
  try {
    build_chart_spec(shaped_table(s), ChartType::Pie, "t");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InapplicableChart);
  }
  ref::Shape ok{1, 1, 0, 2, 12, 12, true};
  EXPECT_EQ(build_chart_spec(shaped_table(ok), ChartType::Pie, "t").chart_type, ChartType::Pie);
}

TEST(VegaLite, DocumentShape) {
  auto bar = table({col("Player", ColumnRole::Categorical), col("Runs", ColumnRole::Continuous)},
                   {{std::string("a"), 1.0}, {std::string("b"), Cell{}}});
  auto spec = build_chart_spec(bar, ChartType::Bar, "Top players");
  Json doc = to_vega_lite(spec);
  EXPECT_TRUE(doc["$schema"].get<std::string>().find("vega-lite/v5") != std::string::npos);
  EXPECT_EQ(doc["mark"], "bar");
  EXPECT_EQ(doc["encoding"]["x"]["field"], "Player");
  EXPECT_EQ(doc["encoding"]["y"]["field"], "Runs");
  EXPECT_EQ(doc["data"]["values"].size(), 2u);
  EXPECT_TRUE(doc["data"]["values"][1]["Runs"].is_null());

  auto pie = build_chart_spec(shaped_table({1, 1, 0, 2, 3, 3, true}), ChartType::Pie, "p");
  EXPECT_TRUE(to_vega_lite(pie)["encoding"].contains("theta"));
}

TEST(VegaLite, Deterministic) {
  for (ChartType type : kCascadeOrder) {
    ref::Shape s{1, 3, 1, 5, 4, 4, true};
    auto t = shaped_table(s);
    if (!constructible(type, classify_shape(t))) continue;
    auto a = build_chart_spec(t, type, "x");
    auto b = build_chart_spec(t, type, "x");
    EXPECT_EQ(to_vega_lite(a).dump(), to_vega_lite(b).dump());
    EXPECT_EQ(to_html(a), to_html(b));
    EXPECT_NE(to_html(a).find("vega-embed"), std::string::npos);
  }
}

TEST(ChartNames, RoundTrip) {
  for (ChartType type : kCascadeOrder) EXPECT_EQ(chart_type_from_string(to_string(type)), type);
  EXPECT_EQ(chart_type_from_string("HeatMap"), ChartType::Heatmap);
  EXPECT_EQ(chart_type_from_string("donut"), std::nullopt);
}
