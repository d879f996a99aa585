#include "cabalsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "cabalsim/csv.hpp"
#include "cabalsim/errors.hpp"

namespace cabalsim::svg {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
  double clamp(double v) const { return std::min(hi, std::max(lo, v)); }
};

Range expand(Range r) {
  if (r.hi <= r.lo) r.hi = r.lo + 1.0;
  const double pad = 0.05 * (r.hi - r.lo);
  return {r.lo - pad, r.hi + pad};
}

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void begin_svg(std::ofstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"15\">"
      << title << "</text>\n";
}

}  // namespace

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series) {
  Range xr{1e300, -1e300}, yr{1e300, -1e300};
  for (const auto& s : series) {
    for (double v : s.x) xr = {std::min(xr.lo, v), std::max(xr.hi, v)};
    for (double v : s.y) yr = {std::min(yr.lo, v), std::max(yr.hi, v)};
  }
  if (series.empty()) xr = yr = {0.0, 1.0};
  xr = expand(xr);
  yr = expand(yr);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double v) {
    return kMarginLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto py = [&](double v) {
    return kMarginTop + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  auto out = open(path);
  begin_svg(out, title);
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      out << csv_number(px(s.x[j])) << ',' << csv_number(py(s.y[j])) << ' ';
    }
    out << "\"/>\n";
    const double ly = kMarginTop + 14.0 * (static_cast<double>(i) + 1);
    out << "<line x1=\"" << kWidth - kMarginRight + 10 << "\" y1=\"" << ly
        << "\" x2=\"" << kWidth - kMarginRight + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << kWidth - kMarginRight + 35 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed for " + path.string());
}

void write_quartile_chart(const std::filesystem::path& path,
                          const std::string& title, const std::string& y_label,
                          const std::vector<QuartileBox>& boxes) {
  Range yr{0.0, 1.0};
  if (!boxes.empty()) {
    yr = {boxes[0].q1, boxes[0].q3};
    for (const auto& b : boxes) {
      yr.lo = std::min(yr.lo, b.q1);
      yr.hi = std::max(yr.hi, b.q3);
    }
  }
  yr = expand(yr);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto py = [&](double v) {
    return kMarginTop + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  auto out = open(path);
  begin_svg(out, title);
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  out << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  const double slot = plot_w / std::max<std::size_t>(1, boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const double cx = kMarginLeft + slot * (static_cast<double>(i) + 0.5);
    const double half = std::min(22.0, slot * 0.3);
    out << "<rect x=\"" << csv_number(cx - half) << "\" y=\""
        << csv_number(py(b.q3)) << "\" width=\"" << csv_number(2 * half)
        << "\" height=\"" << csv_number(py(b.q1) - py(b.q3))
        << "\" fill=\"#9ecae1\" stroke=\"#3182bd\"/>\n";
    out << "<line x1=\"" << csv_number(cx - half) << "\" y1=\""
        << csv_number(py(b.median)) << "\" x2=\"" << csv_number(cx + half)
        << "\" y2=\"" << csv_number(py(b.median))
        << "\" stroke=\"#08306b\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << csv_number(cx) << "\" y=\"" << kHeight - 28
        << "\" text-anchor=\"middle\" font-size=\"10\">" << b.label
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace cabalsim::svg
