#pragma once

// Straight-line restatement of the chart cascade, kept deliberately naive:
// one if per rule, in the documented order, no shared helpers with the
// library.

#include <optional>
#include <string>

namespace ref {

struct Shape {
  int cat = 0, cont = 0, temp = 0, cols = 0;
  int rows = 1;
  int card = 0;  // distinct values in the first categorical column
  bool nonneg = true;
};

// "" = NoSuitableChart, "empty" = EmptyDataset.
inline std::string expected_chart(const Shape& s) {
  if (s.rows == 0) return "empty";
  if (s.cols > 5) {
    if (s.cat >= 1 && s.cont >= 1 && s.card <= 50) return "bar";
    if (s.cont == s.cols) return "line";
  }
  if (s.cat >= 1 && s.cont >= 1 && s.card <= 50) return "bar";
  if (s.cont == 1 && s.cat == 0 && s.temp == 0) return "box";
  if (s.temp >= 1 && s.cont >= 1) return "line";
  if (s.cat >= 1 && s.cont == 1 && s.card >= 2 && s.card <= 12 && s.nonneg) return "pie";
  if (s.cont == 2 && s.cat == 0 && s.temp == 0) return "scatter";
  if (s.cont == 1 && s.cat == 0 && s.temp == 0) return "histogram";
  if (s.temp >= 1 && s.cont >= 1) return "area";
  if (s.cont >= 3) return "bubble";
  if (s.cat == 1 && s.cont >= 3) return "radar";
  if ((s.cat == 1 && s.cont >= 2) || s.cont >= 3) return "heatmap";
  return "";
}

}  // namespace ref
