#include "cogedit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace cogedit {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile p outside [0,1]");
  double h = p * (double(sorted.size()) - 1.0);
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - double(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<CellSummary> summarize(const std::vector<BenchRow>& rows) {
  std::vector<CellSummary> cells;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<double>> drel;
  for (const auto& r : rows) {
    auto it = index.find(r.cell_id);
    if (it == index.end()) {
      it = index.emplace(r.cell_id, cells.size()).first;
      CellSummary c;
      c.cell_id = r.cell_id;
      c.n = r.n;
      c.density = r.density_intended;
      c.noise = r.noise_rate;
      c.variant = r.variant;
      cells.push_back(std::move(c));
      drel.emplace_back();
    }
    CellSummary& c = cells[it->second];
    ++c.rows;
    c.fit_fraction += r.fit ? 1.0 : 0.0;
    c.mean_runtime_ms += r.runtime_ms;
    drel[it->second].push_back(r.dist_rel);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CellSummary& c = cells[i];
    c.fit_fraction /= c.rows;
    c.mean_runtime_ms /= c.rows;
    auto& v = drel[i];
    std::sort(v.begin(), v.end());
    c.q0 = v.front();
    c.q1 = quantile_sorted(v, 0.25);
    c.q2 = quantile_sorted(v, 0.5);
    c.q3 = quantile_sorted(v, 0.75);
    c.q4 = v.back();
  }
  return cells;
}

void print_summary(std::ostream& out, const std::vector<CellSummary>& cells) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-28s %5s %6s %8s %8s %8s %8s %10s\n", "cell",
                "rows", "fit", "drel_q1", "drel_med", "drel_q3", "drel_max",
                "mean_ms");
  out << buf;
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof buf,
                  "%-28s %5d %6.3f %8.3f %8.3f %8.3f %8.3f %10.3f\n",
                  c.cell_id.c_str(), c.rows, c.fit_fraction, c.q1, c.q2, c.q3,
                  c.q4, c.mean_runtime_ms);
    out << buf;
  }
}

namespace {

const char* kPalette[] = {"#4878d0", "#ee854a", "#6acc64", "#d65f5f",
                          "#956cb4", "#8c613c", "#dc7ec0", "#797979"};

struct SvgCanvas {
  std::ofstream out;
  double w, h;

  SvgCanvas(const std::string& path, double width, double height)
      : out(path), w(width), h(height) {
    if (!out) throw std::runtime_error("cannot write " + path);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                  "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  w, h, w, h);
    out << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  ~SvgCanvas() { out << "</svg>\n"; }

  void line(double x1, double y1, double x2, double y2, const char* color,
            double width = 1.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
                  x1, y1, x2, y2, color, width);
    out << buf;
  }
  void rect(double x, double y, double rw, double rh, const char* fill) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"%s\" stroke=\"#333\" stroke-width=\"0.5\"/>\n",
                  x, y, rw, rh, fill);
    out << buf;
  }
  void text(double x, double y, const std::string& s, double size = 11.0,
            const char* anchor = "start", double rotate = 0.0) {
    char buf[320];
    if (rotate != 0.0) {
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.2f\" y=\"%.2f\" font-size=\"%.1f\" "
                    "font-family=\"sans-serif\" text-anchor=\"%s\" "
                    "transform=\"rotate(%.1f %.2f %.2f)\">%s</text>\n",
                    x, y, size, anchor, rotate, x, y, s.c_str());
    } else {
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.2f\" y=\"%.2f\" font-size=\"%.1f\" "
                    "font-family=\"sans-serif\" text-anchor=\"%s\">%s</text>\n",
                    x, y, size, anchor, s.c_str());
    }
    out << buf;
  }
};

struct Frame {
  double left, top, right, bottom; // plot rectangle in canvas coordinates
  double x0, x1, y0, y1;           // data ranges

  double px(double x) const { return left + (x - x0) / (x1 - x0) * (right - left); }
  double py(double y) const { return bottom - (y - y0) / (y1 - y0) * (bottom - top); }
};

void draw_axes(SvgCanvas& svg, const Frame& f, const std::string& title) {
  svg.line(f.left, f.bottom, f.right, f.bottom, "#000");
  svg.line(f.left, f.bottom, f.left, f.top, "#000");
  svg.text((f.left + f.right) / 2, f.top - 8, title, 13.0, "middle");
}

std::string fmt(double v, const char* spec = "%g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void write_fit_rates(const std::string& path, const std::vector<CellSummary>& cells) {
  double w = std::max(360.0, 60.0 + 26.0 * double(cells.size()) + 20.0);
  SvgCanvas svg(path, w, 420);
  Frame f{52, 40, w - 16, 300, 0, double(cells.size()), 0, 1};
  draw_axes(svg, f, "fit fraction per cell");
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg.line(f.left - 4, f.py(t), f.left, f.py(t), "#000");
    svg.text(f.left - 7, f.py(t) + 4, fmt(t, "%.2f"), 10.0, "end");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    double x = f.px(double(i) + 0.15), xw = (f.px(1) - f.px(0)) * 0.7;
    svg.rect(x, f.py(cells[i].fit_fraction), xw,
             f.bottom - f.py(cells[i].fit_fraction), kPalette[0]);
    svg.text(f.px(double(i) + 0.5), f.bottom + 12, cells[i].cell_id, 9.0, "end",
             -55.0);
  }
}

void write_dist_boxes(const std::string& path, const std::vector<CellSummary>& cells) {
  double ymax = 1.0;
  for (const auto& c : cells) ymax = std::max(ymax, c.q4);
  ymax *= 1.05;
  double w = std::max(360.0, 60.0 + 26.0 * double(cells.size()) + 20.0);
  SvgCanvas svg(path, w, 420);
  Frame f{52, 40, w - 16, 300, 0, double(cells.size()), 0, ymax};
  draw_axes(svg, f, "relative distance to ground truth per cell");
  for (int i = 0; i <= 4; ++i) {
    double t = ymax * i / 4;
    svg.line(f.left - 4, f.py(t), f.left, f.py(t), "#000");
    svg.text(f.left - 7, f.py(t) + 4, fmt(t, "%.2f"), 10.0, "end");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    double xc = f.px(double(i) + 0.5), bw = (f.px(1) - f.px(0)) * 0.6;
    svg.line(xc, f.py(c.q0), xc, f.py(c.q4), "#333");
    svg.rect(xc - bw / 2, f.py(c.q3), bw, f.py(c.q1) - f.py(c.q3), "#cfe2f3");
    svg.line(xc - bw / 2, f.py(c.q2), xc + bw / 2, f.py(c.q2), "#d62728", 1.6);
    svg.text(xc, f.bottom + 12, c.cell_id, 9.0, "end", -55.0);
  }
}

void write_runtime_curves(const std::string& path,
                          const std::vector<CellSummary>& cells) {
  // one curve per (variant, density, noise), mean runtime over n, log y
  std::map<std::string, std::vector<std::pair<int, double>>> curves;
  std::vector<int> ns;
  double ymin = 1e300, ymax = 0.0;
  for (const auto& c : cells) {
    std::string key = c.variant + " d=" + fmt(c.density, "%.2f") +
                      " r=" + fmt(c.noise, "%.2f");
    curves[key].emplace_back(c.n, c.mean_runtime_ms);
    ns.push_back(c.n);
    ymin = std::min(ymin, std::max(c.mean_runtime_ms, 1e-3));
    ymax = std::max(ymax, std::max(c.mean_runtime_ms, 1e-3));
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  double ly0 = std::floor(std::log10(ymin)), ly1 = std::ceil(std::log10(ymax));
  if (ly1 <= ly0) ly1 = ly0 + 1;

  SvgCanvas svg(path, 640, 420);
  Frame f{64, 40, 430, 370, -0.5, double(ns.size()) - 0.5, ly0, ly1};
  draw_axes(svg, f, "mean heuristic runtime (ms), log scale");
  for (int e = int(ly0); e <= int(ly1); ++e) {
    svg.line(f.left - 4, f.py(e), f.left, f.py(e), "#000");
    svg.text(f.left - 7, f.py(e) + 4, "1e" + std::to_string(e), 10.0, "end");
  }
  for (std::size_t i = 0; i < ns.size(); ++i) {
    svg.line(f.px(double(i)), f.bottom, f.px(double(i)), f.bottom + 4, "#000");
    svg.text(f.px(double(i)), f.bottom + 16, "n=" + std::to_string(ns[i]), 10.0,
             "middle");
  }
  int ci = 0;
  for (auto& [key, pts] : curves) {
    std::sort(pts.begin(), pts.end());
    const char* color = kPalette[std::size_t(ci % 8)];
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      auto xi = [&](int n) {
        return double(std::lower_bound(ns.begin(), ns.end(), n) - ns.begin());
      };
      svg.line(f.px(xi(pts[i].first)), f.py(std::log10(std::max(pts[i].second, 1e-3))),
               f.px(xi(pts[i + 1].first)),
               f.py(std::log10(std::max(pts[i + 1].second, 1e-3))), color, 1.5);
    }
    svg.text(440, 56 + 14 * ci, key, 10.0);
    svg.line(434 - 14, 52 + 14 * ci, 434, 52 + 14 * ci, color, 2.0);
    ++ci;
  }
}

} // namespace

void write_report_svgs(const std::string& dir, const std::vector<CellSummary>& cells) {
  if (cells.empty()) return;
  std::filesystem::create_directories(dir);
  auto path = [&](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };
  write_fit_rates(path("fit_rates.svg"), cells);
  write_dist_boxes(path("dist_rel_box.svg"), cells);
  write_runtime_curves(path("runtime_curves.svg"), cells);
}

} // namespace cogedit
