#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "t2i/engine.hpp"
#include "t2i/types.hpp"

namespace t2i {

enum class ChartType { Bar, Box, Line, Pie, Scatter, Histogram, Area, Bubble, Radar, Heatmap };

/// The cascade walks the types in exactly this order.
inline constexpr std::array<ChartType, 10> kCascadeOrder = {
    ChartType::Bar,     ChartType::Box,       ChartType::Line, ChartType::Pie,
    ChartType::Scatter, ChartType::Histogram, ChartType::Area, ChartType::Bubble,
    ChartType::Radar,   ChartType::Heatmap};

std::string_view to_string(ChartType type);
/// Accepts the lower-case names ("bar", "heatmap", ...) case-insensitively.
std::optional<ChartType> chart_type_from_string(std::string_view s);

enum class Arity { None, Univariate, Bivariate, Multivariate };
std::string_view to_string(Arity arity);

inline constexpr std::size_t kMaxBarCategories = 50;
inline constexpr std::size_t kMinPieSlices = 2;
inline constexpr std::size_t kMaxPieSlices = 12;

/// Role census of a result table. Identifier columns count as categorical.
struct DataShape {
  std::size_t n_rows = 0;
  std::size_t n_categorical = 0;
  std::size_t n_continuous = 0;
  std::size_t n_temporal = 0;
  std::size_t n_columns = 0;
  Arity arity = Arity::None;
  /// Distinct non-null values of the first categorical column (0 if none).
  std::size_t category_cardinality = 0;
  /// Every non-null continuous value is >= 0.
  bool measures_nonnegative = true;

  bool operator==(const DataShape&) const = default;
};

Arity arity_for(std::size_t n_continuous);

DataShape classify_shape(const ResultTable& result);

/// Keyword scan for a chart preference. "bar", "box", "line", "area",
/// "bubble" and "radar" count only when followed by chart/plot/graph;
/// "pie", "scatter", "histogram", "heatmap" and "boxplot" count alone.
/// A mention with not/no/don't/without among the three preceding words is
/// skipped. The first remaining mention wins.
std::optional<ChartType> detect_requested_chart(std::string_view question);

/// Stated data condition for a type, including the construction limits
/// (bar cardinality, pie slice count and sign).
bool cascade_condition(ChartType type, const DataShape& shape);

/// Whether build_chart_spec can lay the type out for this shape. Used to
/// decide if an explicit request is honoured.
bool constructible(ChartType type, const DataShape& shape);

/// Throws EmptyDataset for zero rows and NoSuitableChart when nothing fits.
/// Without a usable request and with more than five columns, falls back to
/// Bar (categorical + measure) or Line (all continuous) before the cascade.
ChartType predict_chart(const DataShape& shape, std::optional<ChartType> requested);

struct ChartSpec {
  ChartType chart_type = ChartType::Bar;
  std::optional<std::string> x;
  std::vector<std::string> y;
  std::optional<std::string> size;
  std::optional<std::string> color;
  std::string title;
  ResultTable data;
};

/// Axis assignment: the first categorical or temporal column is x and the
/// continuous columns are y in table order. Scatter and Bubble put the
/// continuous columns on x/y(/size) and use a categorical column as color.
/// Throws InapplicableChart when the type cannot be built from the table.
ChartSpec build_chart_spec(const ResultTable& result, ChartType type, std::string title);

/// Vega-Lite v5 document with inline data.
Json to_vega_lite(const ChartSpec& spec);

/// Standalone HTML page rendering the Vega-Lite document with vega-embed.
std::string to_html(const ChartSpec& spec);

/// {chart_type, title, x, y, size, color, vega_lite}
Json to_json(const ChartSpec& spec);

}  // namespace t2i
