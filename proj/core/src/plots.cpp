// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include "fdik/plots.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "fdik/errors.hpp"
#include "fdik/io.hpp"

namespace fdik {

namespace {

// All geometry below is emitted through format_double, so identical CSV
// input yields byte-identical SVG output.

double cell_to_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("plot input: bad number in column " + what + ": " + text);
  return value;
}

void require_schema(const CsvTable& table, const std::string& expected,
                    const std::filesystem::path& path) {
  std::string header;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) header += ',';
    header += table.header[i];
  }
  if (header != expected)
    throw ParseError("plot input " + path.string() + ": expected header '" +
                     expected + "', found '" + header + "'");
  if (table.rows.empty())
    throw ParseError("plot input " + path.string() + ": no data rows");
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw ParseError("plot input " + path.string() +
                       ": row width differs from header");
  }
}

std::string num(double v) { return format_double(v); }

class Svg {
 public:
  Svg(double width, double height) : width_(width), height_(height) {
    body_ += "<rect x=\"0\" y=\"0\" width=\"" + num(width_) + "\" height=\"" +
             num(height_) + "\" fill=\"white\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double width = 1.0,
            const std::string& dash = "") {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" +
             num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(width) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke, double width = 1.0) {
    if (pts.size() < 2) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(width) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) body_ += ' ';
      body_ += num(pts[i].first) + "," + num(pts[i].second);
    }
    body_ += "\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none") {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
             num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill +
             "\" stroke=\"" + stroke + "\"/>\n";
  }

  void text(double x, double y, const std::string& content, double size = 11.0,
            const std::string& anchor = "start",
            const std::string& fill = "#333333") {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) +
             "\" font-family=\"monospace\" font-size=\"" + num(size) +
             "\" text-anchor=\"" + anchor + "\" fill=\"" + fill + "\">" +
             content + "</text>\n";
  }

  void write(const std::filesystem::path& path) const {
    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) +
        "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) +
        " " + num(height_) + "\">\n";
    out += body_;
    out += "</svg>\n";
    write_text_file(path, out);
  }

 private:
  double width_;
  double height_;
  std::string body_;
};

// Maps [lo, hi] onto [out0, out1]; degenerate input ranges are padded.
struct LinScale {
  double lo = 0.0;
  double hi = 1.0;
  double out0 = 0.0;
  double out1 = 1.0;

  LinScale(double l, double h, double o0, double o1)
      : lo(l), hi(h), out0(o0), out1(o1) {
    if (!(hi > lo)) {
      const double pad = std::max(1e-12, std::abs(lo) * 1e-6 + 1e-12);
      lo -= pad;
      hi += pad;
    }
  }

  double operator()(double v) const {
    return out0 + (v - lo) / (hi - lo) * (out1 - out0);
  }
};

const char* kDimColors[6] = {"#d62728", "#2ca02c", "#1f77b4",
                             "#ff7f0e", "#9467bd", "#8c564b"};
const char* kDimNames[6] = {"ex", "ey", "ez", "erx", "ery", "erz"};
const char* kSeriesColors[8] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string blend(double t, int r0, int g0, int b0, int r1, int g1, int b1) {
  t = std::clamp(t, 0.0, 1.0);
  const auto mix = [t](int a, int b) {
    return static_cast<int>(std::lround(a + t * (b - a)));
  };
  return "rgb(" + std::to_string(mix(r0, r1)) + "," +
         std::to_string(mix(g0, g1)) + "," + std::to_string(mix(b0, b1)) + ")";
}

// White -> blue for nonnegative data.
std::string heat_sequential(double v, double vmax) {
  const double t = vmax > 0.0 ? v / vmax : 0.0;
  return blend(t, 255, 255, 255, 8, 64, 152);
}

// Red -> white -> blue for signed data.
std::string heat_diverging(double v, double vmax) {
  if (vmax <= 0.0) return "rgb(255,255,255)";
  const double t = std::clamp(v / vmax, -1.0, 1.0);
  if (t < 0.0) return blend(-t, 255, 255, 255, 178, 24, 43);
  return blend(t, 255, 255, 255, 8, 64, 152);
}

struct Panel {
  double x0, y0, w, h;
  void frame(Svg& svg) const {
    svg.rect(x0, y0, w, h, "none", "#888888");
  }
};

}  // namespace

void emit_step_plot(const std::filesystem::path& csv_path,
                    const std::filesystem::path& svg_path) {
  const CsvTable table = read_csv(csv_path);
  require_schema(table, "iter,ex,ey,ez,erx,ery,erz,solver", csv_path);

  // series[solver][dim] -> (iter, value)
  std::map<std::string, std::array<std::vector<std::pair<double, double>>, 6>>
      series;
  double max_iter = 1.0;
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& row : table.rows) {
    const double iter = cell_to_double(row[0], "iter");
    max_iter = std::max(max_iter, iter);
    auto& dims = series[row[7]];
    for (int d = 0; d < 6; ++d) {
      const double v =
          cell_to_double(row[static_cast<std::size_t>(d) + 1], kDimNames[d]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      dims[static_cast<std::size_t>(d)].emplace_back(iter, v);
    }
  }

  const double panel_w = 420.0;
  const double panel_h = 300.0;
  const double margin = 50.0;
  const double gap = 40.0;
  const auto n_panels = static_cast<double>(series.size());
  Svg svg(margin * 2 + panel_w * n_panels + gap * (n_panels - 1.0),
          margin * 2 + panel_h + 20.0);

  double px = margin;
  for (const auto& [solver, dims] : series) {
    const Panel panel{px, margin, panel_w, panel_h};
    panel.frame(svg);
    LinScale xs(1.0, max_iter, panel.x0, panel.x0 + panel.w);
    LinScale ys(lo, hi, panel.y0 + panel.h, panel.y0);
    if (lo < 0.0 && hi > 0.0) {
      svg.line(panel.x0, ys(0.0), panel.x0 + panel.w, ys(0.0), "#bbbbbb", 1.0,
               "4,3");
    }
    for (int d = 0; d < 6; ++d) {
      std::vector<std::pair<double, double>> pts;
      pts.reserve(dims[static_cast<std::size_t>(d)].size());
      for (const auto& [it, v] : dims[static_cast<std::size_t>(d)])
        pts.emplace_back(xs(it), ys(v));
      svg.polyline(pts, kDimColors[d], 1.5);
    }
    svg.text(panel.x0 + panel.w / 2.0, panel.y0 - 10.0, "solver: " + solver,
             13.0, "middle");
    svg.text(panel.x0, panel.y0 + panel.h + 16.0, "iteration 1.." +
             format_double(max_iter), 10.0);
    svg.text(panel.x0 - 6.0, ys(hi) + 10.0, format_double(hi), 10.0, "end");
    svg.text(panel.x0 - 6.0, ys(lo), format_double(lo), 10.0, "end");
    px += panel_w + gap;
  }

  // Legend along the top edge.
  double lx = margin;
  for (int d = 0; d < 6; ++d) {
    svg.rect(lx, 8.0, 14.0, 4.0, kDimColors[d]);
    svg.text(lx + 18.0, 14.0, kDimNames[d], 10.0);
    lx += 64.0;
  }
  svg.write(svg_path);
}

void emit_homogenization_plot(const std::filesystem::path& csv_path,
                              const std::filesystem::path& svg_path) {
  const CsvTable table = read_csv(csv_path);
  require_schema(table, "variant,entry_row,entry_col,mean,variance,std",
                 csv_path);

  struct VariantData {
    Eigen::Matrix<double, 6, 6> metric[3];  // mean, variance, std
  };
  std::vector<std::string> order;
  std::map<std::string, VariantData> data;
  for (const auto& row : table.rows) {
    const std::string& variant = row[0];
    if (data.find(variant) == data.end()) {
      order.push_back(variant);
      data[variant].metric[0].setZero();
      data[variant].metric[1].setZero();
      data[variant].metric[2].setZero();
    }
    const int r = static_cast<int>(cell_to_double(row[1], "entry_row"));
    const int c = static_cast<int>(cell_to_double(row[2], "entry_col"));
    if (r < 0 || r > 5 || c < 0 || c > 5)
      throw ParseError("plot input: entry index out of range");
    for (int m = 0; m < 3; ++m) {
      data[variant].metric[m](r, c) =
          cell_to_double(row[static_cast<std::size_t>(m) + 3],
                         table.header[static_cast<std::size_t>(m) + 3]);
    }
  }

  // One color scale per metric column, shared across variants.
  const char* metric_names[3] = {"mean", "variance", "std"};
  double vmax[3] = {0.0, 0.0, 0.0};
  for (const auto& [variant, vd] : data) {
    for (int m = 0; m < 3; ++m) {
      vmax[m] = std::max(vmax[m], vd.metric[m].cwiseAbs().maxCoeff());
    }
  }

  const double cell = 18.0;
  const double panel = cell * 6.0;
  const double gap = 46.0;
  const double margin = 70.0;
  const auto n_var = static_cast<double>(order.size());
  Svg svg(margin * 2 + 3.0 * panel + 2.0 * gap,
          margin * 2 + n_var * panel + (n_var - 1.0) * gap);

  for (std::size_t vi = 0; vi < order.size(); ++vi) {
    const VariantData& vd = data[order[vi]];
    const double y0 = margin + static_cast<double>(vi) * (panel + gap);
    svg.text(margin - 12.0, y0 + panel / 2.0, order[vi], 12.0, "end");
    for (int m = 0; m < 3; ++m) {
      const double x0 = margin + m * (panel + gap);
      for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 6; ++c) {
          const double v = vd.metric[m](r, c);
          const std::string fill = m == 0 ? heat_diverging(v, vmax[0])
                                          : heat_sequential(v, vmax[m]);
          svg.rect(x0 + c * cell, y0 + r * cell, cell, cell, fill, "#dddddd");
        }
      }
      svg.rect(x0, y0, panel, panel, "none", "#888888");
      if (vi == 0) {
        svg.text(x0 + panel / 2.0, margin - 28.0, metric_names[m], 13.0,
                 "middle");
        svg.text(x0 + panel / 2.0, margin - 12.0,
                 "scale max " + format_double(vmax[m]), 10.0, "middle");
      }
    }
  }
  svg.write(svg_path);
}

namespace {

// Equal-aspect mapping of (y, z) data onto a panel.
struct PlaneMap {
  double scale, cx, cy, py, pz;
  PlaneMap(const Panel& p, double y_lo, double y_hi, double z_lo, double z_hi) {
    const double dy = std::max(y_hi - y_lo, 1e-9);
    const double dz = std::max(z_hi - z_lo, 1e-9);
    scale = std::min(p.w / dy, p.h / dz) * 0.9;
    py = (y_lo + y_hi) / 2.0;
    pz = (z_lo + z_hi) / 2.0;
    cx = p.x0 + p.w / 2.0;
    cy = p.y0 + p.h / 2.0;
  }
  std::pair<double, double> operator()(double y, double z) const {
    // +y right, +z up.
    return {cx + (y - py) * scale, cy - (z - pz) * scale};
  }
};

}  // namespace

void emit_square_plot(const std::filesystem::path& csv_path,
                      const std::filesystem::path& svg_path) {
  const CsvTable table = read_csv(csv_path);
  require_schema(table, "solver,corner,step,x,y,z", csv_path);

  // paths[solver][corner] -> (y, z) sequence
  std::map<std::string, std::map<int, std::vector<std::pair<double, double>>>>
      paths;
  double y_lo = 1e300, y_hi = -1e300, z_lo = 1e300, z_hi = -1e300;
  for (const auto& row : table.rows) {
    const int corner = static_cast<int>(cell_to_double(row[1], "corner"));
    const double y = cell_to_double(row[4], "y");
    const double z = cell_to_double(row[5], "z");
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
    z_lo = std::min(z_lo, z);
    z_hi = std::max(z_hi, z);
    paths[row[0]][corner].emplace_back(y, z);
  }

  const double panel_w = 340.0;
  const double panel_h = 340.0;
  const double margin = 50.0;
  const double gap = 40.0;
  const auto n_panels = static_cast<double>(paths.size());
  Svg svg(margin * 2 + panel_w * n_panels + gap * (n_panels - 1.0),
          margin * 2 + panel_h);

  double px = margin;
  for (const auto& [solver, segments] : paths) {
    const Panel panel{px, margin, panel_w, panel_h};
    panel.frame(svg);
    const PlaneMap map(panel, y_lo, y_hi, z_lo, z_hi);
    int color = 0;
    for (const auto& [corner, pts] : segments) {
      std::vector<std::pair<double, double>> mapped;
      mapped.reserve(pts.size());
      for (const auto& [y, z] : pts) mapped.push_back(map(y, z));
      svg.polyline(mapped, kSeriesColors[color % 8], 1.5);
      ++color;
    }
    svg.text(panel.x0 + panel_w / 2.0, panel.y0 - 10.0, "solver: " + solver,
             13.0, "middle");
    svg.text(panel.x0, panel.y0 + panel_h + 16.0,
             "y-z plane, equal aspect", 10.0);
    px += panel_w + gap;
  }
  svg.write(svg_path);
}

void emit_track_plot(const std::filesystem::path& csv_path,
                     const std::filesystem::path& svg_path) {
  const CsvTable table = read_csv(csv_path);
  require_schema(table, "gain,t,x,y,z,err_trans,err_rot", csv_path);

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> plane;
  std::map<std::string, std::vector<std::pair<double, double>>> err;
  double y_lo = 1e300, y_hi = -1e300, z_lo = 1e300, z_hi = -1e300;
  double t_hi = 0.0;
  double e_lo = 1e300, e_hi = -1e300;
  for (const auto& row : table.rows) {
    const std::string& gain = row[0];
    if (plane.find(gain) == plane.end()) order.push_back(gain);
    const double t = cell_to_double(row[1], "t");
    const double y = cell_to_double(row[3], "y");
    const double z = cell_to_double(row[4], "z");
    const double e = std::max(cell_to_double(row[5], "err_trans"), 1e-9);
    t_hi = std::max(t_hi, t);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
    z_lo = std::min(z_lo, z);
    z_hi = std::max(z_hi, z);
    const double loge = std::log10(e);
    e_lo = std::min(e_lo, loge);
    e_hi = std::max(e_hi, loge);
    plane[gain].emplace_back(y, z);
    err[gain].emplace_back(t, loge);
  }

  const double panel_w = 360.0;
  const double panel_h = 330.0;
  const double margin = 54.0;
  const double gap = 60.0;
  Svg svg(margin * 2 + 2.0 * panel_w + gap, margin * 2 + panel_h + 20.0);

  const Panel left{margin, margin, panel_w, panel_h};
  left.frame(svg);
  const PlaneMap map(left, y_lo, y_hi, z_lo, z_hi);
  for (std::size_t g = 0; g < order.size(); ++g) {
    std::vector<std::pair<double, double>> mapped;
    mapped.reserve(plane[order[g]].size());
    for (const auto& [y, z] : plane[order[g]]) mapped.push_back(map(y, z));
    svg.polyline(mapped, kSeriesColors[g % 8], 1.5);
  }
  svg.text(left.x0 + panel_w / 2.0, left.y0 - 10.0, "tip path (y-z)", 13.0,
           "middle");

  const Panel right{margin + panel_w + gap, margin, panel_w, panel_h};
  right.frame(svg);
  LinScale xs(0.0, t_hi, right.x0, right.x0 + right.w);
  LinScale ys(e_lo, e_hi, right.y0 + right.h, right.y0);
  for (std::size_t g = 0; g < order.size(); ++g) {
    std::vector<std::pair<double, double>> mapped;
    mapped.reserve(err[order[g]].size());
    for (const auto& [t, e] : err[order[g]])
      mapped.emplace_back(xs(t), ys(e));
    svg.polyline(mapped, kSeriesColors[g % 8], 1.5);
  }
  svg.text(right.x0 + panel_w / 2.0, right.y0 - 10.0,
           "translational error, log10 scale", 13.0, "middle");
  svg.text(right.x0, right.y0 + right.h + 16.0,
           "t = 0.." + format_double(t_hi) + " s", 10.0);
  svg.text(right.x0 - 6.0, ys(e_hi) + 10.0, format_double(e_hi), 10.0, "end");
  svg.text(right.x0 - 6.0, ys(e_lo), format_double(e_lo), 10.0, "end");

  double lx = margin;
  for (std::size_t g = 0; g < order.size(); ++g) {
    svg.rect(lx, 8.0, 14.0, 4.0, kSeriesColors[g % 8]);
    svg.text(lx + 18.0, 14.0, "kp=" + order[g], 10.0);
    lx += 90.0;
  }
  svg.write(svg_path);
}

}  // namespace fdik
