#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cabalsim::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal polyline chart. Display only; all numbers come in precomputed.
void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

struct QuartileBox {
  std::string label;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

// Quartile summaries rendered as boxes with a median tick.
void write_quartile_chart(const std::filesystem::path& path,
                          const std::string& title, const std::string& y_label,
                          const std::vector<QuartileBox>& boxes);

}  // namespace cabalsim::svg
