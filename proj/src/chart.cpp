#include "t2i/chart.hpp"

#include <algorithm>
#include <set>

#include "t2i/error.hpp"

namespace t2i {

namespace {

constexpr std::array<std::string_view, 10> kChartNames = {
    "bar", "box", "line", "pie", "scatter", "histogram", "area", "bubble", "radar", "heatmap"};

struct Columns {
  std::vector<std::size_t> categorical;
  std::vector<std::size_t> temporal;
  std::vector<std::size_t> continuous;
};

Columns split_columns(const ResultTable& t) {
  Columns c;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    switch (t.columns[i].role) {
      case ColumnRole::Continuous: c.continuous.push_back(i); break;
      case ColumnRole::Temporal: c.temporal.push_back(i); break;
      case ColumnRole::Categorical:
      case ColumnRole::Identifier: c.categorical.push_back(i); break;
    }
  }
  return c;
}

std::vector<std::string> tokenize_question(std::string_view q) {
  std::string s;
  s.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    // U+2019 RIGHT SINGLE QUOTATION MARK
    if (q.compare(i, 3, "\xE2\x80\x99") == 0) {
      s += '\'';
      i += 2;
      continue;
    }
    char c = q[i];
    s += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'') {
      cur += c;
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

bool is_negation(std::string_view w) {
  return w == "not" || w == "no" || w == "don't" || w == "dont" || w == "without";
}

bool is_chart_noun(std::string_view w) {
  return w == "chart" || w == "charts" || w == "plot" || w == "plots" || w == "graph" ||
         w == "graphs";
}

// Chart named by the mention starting at token i, if any.
std::optional<ChartType> chart_mention(const std::vector<std::string>& tokens, std::size_t i) {
  const std::string& w = tokens[i];
  const bool noun_follows = i + 1 < tokens.size() && is_chart_noun(tokens[i + 1]);
  if (w == "pie") return ChartType::Pie;
  if (w == "scatter" || w == "scatterplot") return ChartType::Scatter;
  if (w == "histogram" || w == "histograms") return ChartType::Histogram;
  if (w == "heatmap" || w == "heatmaps") return ChartType::Heatmap;
  if (w == "boxplot") return ChartType::Box;
  if (w == "heat" && i + 1 < tokens.size() && tokens[i + 1] == "map") return ChartType::Heatmap;
  if (!noun_follows) return std::nullopt;
  if (w == "bar") return ChartType::Bar;
  if (w == "box") return ChartType::Box;
  if (w == "line") return ChartType::Line;
  if (w == "area") return ChartType::Area;
  if (w == "bubble") return ChartType::Bubble;
  if (w == "radar") return ChartType::Radar;
  return std::nullopt;
}

[[noreturn]] void inapplicable(ChartType type, const std::string& why) {
  throw Error(ErrorCode::InapplicableChart,
              std::string(to_string(type)) + " chart is not applicable: " + why);
}

}  // namespace

std::string_view to_string(ChartType type) { return kChartNames[static_cast<std::size_t>(type)]; }

std::optional<ChartType> chart_type_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kChartNames.size(); ++i)
    if (iequals(kChartNames[i], s)) return static_cast<ChartType>(i);
  return std::nullopt;
}

std::string_view to_string(Arity arity) {
  switch (arity) {
    case Arity::None: return "none";
    case Arity::Univariate: return "univariate";
    case Arity::Bivariate: return "bivariate";
    case Arity::Multivariate: return "multivariate";
  }
  return "none";
}

Arity arity_for(std::size_t n_continuous) {
  switch (n_continuous) {
    case 0: return Arity::None;
    case 1: return Arity::Univariate;
    case 2: return Arity::Bivariate;
    default: return Arity::Multivariate;
  }
}

DataShape classify_shape(const ResultTable& result) {
  DataShape s;
  s.n_rows = result.rows.size();
  s.n_columns = result.columns.size();
  auto cols = split_columns(result);
  s.n_categorical = cols.categorical.size();
  s.n_continuous = cols.continuous.size();
  s.n_temporal = cols.temporal.size();
  s.arity = arity_for(s.n_continuous);
  if (!cols.categorical.empty()) {
    std::set<Cell> distinct;
    for (const auto& row : result.rows)
      if (!is_null(row[cols.categorical.front()])) distinct.insert(row[cols.categorical.front()]);
    s.category_cardinality = distinct.size();
  }
  for (auto c : cols.continuous) {
    for (const auto& row : result.rows) {
      const Cell& v = row[c];
      if (auto* i = std::get_if<std::int64_t>(&v); i && *i < 0) s.measures_nonnegative = false;
      if (auto* d = std::get_if<double>(&v); d && *d < 0) s.measures_nonnegative = false;
    }
  }
  return s;
}

std::optional<ChartType> detect_requested_chart(std::string_view question) {
  auto tokens = tokenize_question(question);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto type = chart_mention(tokens, i);
    if (!type) continue;
    bool negated = false;
    for (std::size_t k = 1; k <= 3 && k <= i; ++k) negated = negated || is_negation(tokens[i - k]);
    if (!negated) return type;
  }
  return std::nullopt;
}

bool cascade_condition(ChartType type, const DataShape& s) {
  const auto cat = s.n_categorical;
  const auto cont = s.n_continuous;
  const auto temp = s.n_temporal;
  switch (type) {
    case ChartType::Bar:
      return cat >= 1 && cont >= 1 && s.category_cardinality <= kMaxBarCategories;
    case ChartType::Box:
    case ChartType::Histogram: return cont == 1 && cat == 0 && temp == 0;
    case ChartType::Line:
    case ChartType::Area: return temp >= 1 && cont >= 1;
    case ChartType::Pie:
      return cat >= 1 && cont == 1 && s.category_cardinality >= kMinPieSlices &&
             s.category_cardinality <= kMaxPieSlices && s.measures_nonnegative;
    case ChartType::Scatter: return cont == 2 && cat == 0 && temp == 0;
    case ChartType::Bubble: return cont >= 3;
    case ChartType::Radar: return cat == 1 && cont >= 3;
    case ChartType::Heatmap: return (cat == 1 && cont >= 2) || cont >= 3;
  }
  return false;
}

bool constructible(ChartType type, const DataShape& s) {
  const auto cat = s.n_categorical;
  const auto cont = s.n_continuous;
  const auto temp = s.n_temporal;
  switch (type) {
    case ChartType::Bar:
      if (cont == 0) return false;
      if (cat >= 1) return s.category_cardinality <= kMaxBarCategories;
      return temp >= 1;
    case ChartType::Box:
    case ChartType::Histogram: return cont >= 1;
    case ChartType::Line:
    case ChartType::Area:
    case ChartType::Heatmap: return cont >= 1 && (cat + temp >= 1 || cont >= 2);
    case ChartType::Pie:
      return cat >= 1 && cont == 1 && s.category_cardinality >= kMinPieSlices &&
             s.category_cardinality <= kMaxPieSlices && s.measures_nonnegative;
    case ChartType::Scatter: return cont == 2;
    case ChartType::Bubble: return cont >= 3;
    case ChartType::Radar: return cat >= 1 && cont >= 3;
  }
  return false;
}

ChartType predict_chart(const DataShape& shape, std::optional<ChartType> requested) {
  if (shape.n_rows == 0) throw Error(ErrorCode::EmptyDataset, "the provided dataset is empty");
  if (requested && constructible(*requested, shape)) return *requested;
  if (shape.n_columns > 5) {
    if (cascade_condition(ChartType::Bar, shape)) return ChartType::Bar;
    if (shape.n_continuous == shape.n_columns) return ChartType::Line;
  }
  for (ChartType t : kCascadeOrder)
    if (cascade_condition(t, shape)) return t;
  throw Error(ErrorCode::NoSuitableChart, "no suitable chart type could be generated from the data");
}

ChartSpec build_chart_spec(const ResultTable& result, ChartType type, std::string title) {
  const DataShape shape = classify_shape(result);
  if (!constructible(type, shape)) {
    std::string why = std::to_string(shape.n_categorical) + " categorical, " +
                      std::to_string(shape.n_continuous) + " continuous, " +
                      std::to_string(shape.n_temporal) + " temporal columns";
    if (type == ChartType::Pie && shape.n_categorical >= 1 && shape.n_continuous == 1)
      why = std::to_string(shape.category_cardinality) + " categories (allowed " +
            std::to_string(kMinPieSlices) + "-" + std::to_string(kMaxPieSlices) +
            ", non-negative)";
    if (type == ChartType::Bar && shape.category_cardinality > kMaxBarCategories)
      why = std::to_string(shape.category_cardinality) + " categories (max " +
            std::to_string(kMaxBarCategories) + ")";
    inapplicable(type, why);
  }

  const auto cols = split_columns(result);
  auto name = [&](std::size_t i) { return result.columns[i].name; };
  std::optional<std::size_t> label;
  if (type == ChartType::Line || type == ChartType::Area) {
    if (!cols.temporal.empty()) {
      label = cols.temporal.front();
    } else if (!cols.categorical.empty()) {
      label = cols.categorical.front();
    }
  } else if (!cols.categorical.empty()) {
    label = cols.categorical.front();
  } else if (!cols.temporal.empty()) {
    label = cols.temporal.front();
  }

  ChartSpec spec;
  spec.chart_type = type;
  spec.title = std::move(title);
  spec.data = result;
  switch (type) {
    case ChartType::Scatter:
    case ChartType::Bubble:
      spec.x = name(cols.continuous[0]);
      spec.y = {name(cols.continuous[1])};
      if (type == ChartType::Bubble) spec.size = name(cols.continuous[2]);
      if (!cols.categorical.empty()) spec.color = name(cols.categorical.front());
      break;
    case ChartType::Line:
    case ChartType::Area:
    case ChartType::Heatmap:
      if (label) {
        spec.x = name(*label);
        for (auto c : cols.continuous) spec.y.push_back(name(c));
      } else if (type == ChartType::Heatmap) {
        for (auto c : cols.continuous) spec.y.push_back(name(c));
      } else {
        spec.x = name(cols.continuous[0]);
        for (std::size_t k = 1; k < cols.continuous.size(); ++k)
          spec.y.push_back(name(cols.continuous[k]));
      }
      break;
    case ChartType::Histogram:
      for (auto c : cols.continuous) spec.y.push_back(name(c));
      break;
    case ChartType::Box:
      if (!cols.categorical.empty()) spec.x = name(cols.categorical.front());
      for (auto c : cols.continuous) spec.y.push_back(name(c));
      break;
    case ChartType::Pie:
      spec.x = name(cols.categorical.front());
      spec.y = {name(cols.continuous.front())};
      break;
    case ChartType::Bar:
    case ChartType::Radar:
      spec.x = name(*label);
      for (auto c : cols.continuous) spec.y.push_back(name(c));
      break;
  }
  return spec;
}

Json to_json(const ChartSpec& spec) {
  Json j;
  j["chart_type"] = std::string(to_string(spec.chart_type));
  j["title"] = spec.title;
  j["x"] = spec.x ? Json(*spec.x) : Json(nullptr);
  j["y"] = spec.y;
  j["size"] = spec.size ? Json(*spec.size) : Json(nullptr);
  j["color"] = spec.color ? Json(*spec.color) : Json(nullptr);
  j["vega_lite"] = to_vega_lite(spec);
  return j;
}

}  // namespace t2i
