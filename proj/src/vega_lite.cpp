#include "t2i/chart.hpp"

namespace t2i {

namespace {

constexpr const char* kSchema = "https://vega.github.io/schema/vega-lite/v5.json";
constexpr const char* kSeries = "series";
constexpr const char* kValue = "value";
constexpr const char* kRow = "row";

std::string measure_type(const ResultTable& t, const std::string& field) {
  auto idx = t.index_of(field);
  if (!idx) return "nominal";
  switch (t.columns[*idx].role) {
    case ColumnRole::Continuous: return "quantitative";
    case ColumnRole::Temporal: return "temporal";
    case ColumnRole::Categorical:
    case ColumnRole::Identifier: break;
  }
  return "nominal";
}

Json field(const ResultTable& t, const std::string& name) {
  Json j;
  j["field"] = name;
  j["type"] = measure_type(t, name);
  return j;
}

Json inline_values(const ResultTable& t) {
  Json values = Json::array();
  for (const auto& row : t.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i].name] = cell_to_json(row[i]);
    values.push_back(std::move(obj));
  }
  return values;
}

Json fold(const std::vector<std::string>& fields) {
  Json f;
  f["fold"] = fields;
  f["as"] = Json::array({kSeries, kValue});
  return f;
}

Json quantitative(const char* name) {
  Json j;
  j["field"] = name;
  j["type"] = "quantitative";
  return j;
}

Json nominal(const char* name) {
  Json j;
  j["field"] = name;
  j["type"] = "nominal";
  return j;
}

// x against one or more measures; several measures are folded into
// (series, value) and told apart by color.
void encode_series(Json& doc, const ChartSpec& spec, bool offset_bars) {
  const auto& t = spec.data;
  Json enc;
  Json x = field(t, *spec.x);
  if (x["type"] == "nominal") x["sort"] = nullptr;
  enc["x"] = std::move(x);
  if (spec.y.size() == 1) {
    enc["y"] = field(t, spec.y.front());
  } else {
    doc["transform"] = Json::array({fold(spec.y)});
    enc["y"] = quantitative(kValue);
    enc["color"] = nominal(kSeries);
    if (offset_bars) enc["xOffset"] = nominal(kSeries);
  }
  doc["encoding"] = std::move(enc);
}

}  // namespace

Json to_vega_lite(const ChartSpec& spec) {
  const auto& t = spec.data;
  Json doc;
  doc["$schema"] = kSchema;
  doc["title"] = spec.title;
  doc["data"]["values"] = inline_values(t);
  Json enc;
  switch (spec.chart_type) {
    case ChartType::Bar:
      doc["mark"] = "bar";
      encode_series(doc, spec, true);
      break;
    case ChartType::Line:
    case ChartType::Area:
      doc["mark"]["type"] = spec.chart_type == ChartType::Line ? "line" : "area";
      if (spec.chart_type == ChartType::Line) doc["mark"]["point"] = true;
      encode_series(doc, spec, false);
      break;
    case ChartType::Pie:
      doc["mark"] = "arc";
      enc["theta"] = field(t, spec.y.front());
      enc["color"] = field(t, *spec.x);
      enc["color"]["sort"] = nullptr;
      doc["encoding"] = std::move(enc);
      break;
    case ChartType::Scatter:
    case ChartType::Bubble:
      doc["mark"] = spec.chart_type == ChartType::Scatter ? "point" : "circle";
      enc["x"] = field(t, *spec.x);
      enc["y"] = field(t, spec.y.front());
      if (spec.size) enc["size"] = field(t, *spec.size);
      if (spec.color) enc["color"] = field(t, *spec.color);
      doc["encoding"] = std::move(enc);
      break;
    case ChartType::Box:
      doc["mark"] = "boxplot";
      if (spec.y.size() == 1) {
        enc["y"] = field(t, spec.y.front());
        if (spec.x) enc["x"] = field(t, *spec.x);
      } else {
        doc["transform"] = Json::array({fold(spec.y)});
        enc["x"] = nominal(kSeries);
        enc["y"] = quantitative(kValue);
      }
      doc["encoding"] = std::move(enc);
      break;
    case ChartType::Histogram: {
      doc["mark"] = "bar";
      const bool folded = spec.y.size() > 1;
      if (folded) doc["transform"] = Json::array({fold(spec.y)});
      enc["x"] = folded ? quantitative(kValue) : field(t, spec.y.front());
      enc["x"]["bin"] = true;
      enc["y"]["aggregate"] = "count";
      enc["y"]["type"] = "quantitative";
      if (folded) enc["color"] = nominal(kSeries);
      doc["encoding"] = std::move(enc);
      break;
    }
    case ChartType::Radar:
      // Vega-Lite has no polar line mark; each label becomes one profile
      // line across the dimensions.
      doc["mark"]["type"] = "line";
      doc["mark"]["point"] = true;
      doc["transform"] = Json::array({fold(spec.y)});
      enc["x"] = nominal(kSeries);
      enc["x"]["sort"] = spec.y;
      enc["y"] = quantitative(kValue);
      enc["color"] = field(t, *spec.x);
      doc["encoding"] = std::move(enc);
      break;
    case ChartType::Heatmap: {
      doc["mark"] = "rect";
      Json transforms = Json::array();
      std::string label;
      if (spec.x) {
        label = *spec.x;
      } else {
        Json w;
        w["window"] = Json::array({Json{{"op", "row_number"}, {"as", kRow}}});
        transforms.push_back(std::move(w));
        label = kRow;
      }
      transforms.push_back(fold(spec.y));
      doc["transform"] = std::move(transforms);
      enc["x"] = nominal(kSeries);
      enc["x"]["sort"] = spec.y;
      enc["y"]["field"] = label;
      enc["y"]["type"] = spec.x ? measure_type(t, label) : "ordinal";
      enc["y"]["sort"] = nullptr;
      enc["color"] = quantitative(kValue);
      doc["encoding"] = std::move(enc);
      break;
    }
  }
  return doc;
}

std::string to_html(const ChartSpec& spec) {
  std::string title;
  for (char c : spec.title) {
    switch (c) {
      case '<': title += "&lt;"; break;
      case '>': title += "&gt;"; break;
      case '&': title += "&amp;"; break;
      case '"': title += "&quot;"; break;
      default: title += c;
    }
  }
  std::string json = to_vega_lite(spec).dump(2);
  std::string safe;
  safe.reserve(json.size());
  for (char c : json) {
    if (c == '<') {
      safe += "\\u003c";
    } else {
      safe += c;
    }
  }
  std::string html;
  html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>";
  html += title;
  html += "</title>\n";
  html += "<script src=\"https://cdn.jsdelivr.net/npm/vega@5\"></script>\n";
  html += "<script src=\"https://cdn.jsdelivr.net/npm/vega-lite@5\"></script>\n";
  html += "<script src=\"https://cdn.jsdelivr.net/npm/vega-embed@6\"></script>\n";
  html += "</head>\n<body>\n<div id=\"chart\"></div>\n<script type=\"application/json\" id=\"spec\">\n";
  html += safe;
  html += "\n</script>\n<script>\n";
  html += "vegaEmbed('#chart', JSON.parse(document.getElementById('spec').textContent));\n";
  html += "</script>\n</body>\n</html>\n";
  return html;
}

}  // namespace t2i
