#include "ergolab/cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ergolab/errors.hpp"

namespace ergolab::cli {

namespace {

constexpr double kWidth = 720, kHeight = 450;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

bool parse_positive(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v) || v <= 0.0) return false;
  out = v;
  return true;
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Decade range covering [lo, hi].
std::pair<int, int> decades(double lo, double hi) {
  int a = static_cast<int>(std::floor(std::log10(lo)));
  int b = static_cast<int>(std::ceil(std::log10(hi)));
  if (b <= a) b = a + 1;
  return {a, b};
}

}  // namespace

std::optional<PlotSpec> default_plot_spec(const CsvTable& table) {
  const long col = table.column("experiment");
  if (col < 0 || table.rows.empty()) return std::nullopt;
  const std::string& name = table.rows.front()[static_cast<std::size_t>(col)];
  if (name == "rt-convergence-table") return PlotSpec{"N", {"abs"}, "instance", "|return-times average| vs N"};
  if (name == "ww-transfer") return PlotSpec{"N", {"ww_sup", "l2_estimate"}, std::nullopt, "WW sup and L2 estimate vs N"};
  if (name == "ww-rt-bound") return PlotSpec{"N", {"lhs", "rhs"}, std::nullopt, "mean squared WW sup vs bound"};
  return std::nullopt;
}

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
  std::vector<std::string> missing;
  std::vector<std::string> needed{spec.x};
  needed.insert(needed.end(), spec.y.begin(), spec.y.end());
  if (spec.group) needed.push_back(*spec.group);
  for (const auto& name : needed)
    if (table.column(name) < 0) missing.push_back(name);
  if (spec.y.empty() || !missing.empty()) {
    std::string what = "missing columns";
    for (std::size_t i = 0; i < missing.size(); ++i) what += (i ? ", " : ": ") + missing[i];
    if (spec.y.empty()) what += " (no y column)";
    throw InvalidArgument(what);
  }

  const auto xcol = static_cast<std::size_t>(table.column(spec.x));
  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  for (const auto& ycol_name : spec.y) {
    const auto ycol = static_cast<std::size_t>(table.column(ycol_name));
    for (const auto& row : table.rows) {
      std::string label = ycol_name;
      if (spec.group) label += " " + *spec.group + "=" + row[static_cast<std::size_t>(table.column(*spec.group))];
      auto [it, fresh] = index.emplace(label, series.size());
      if (fresh) series.push_back({label, {}});
      double x = 0, y = 0;
      if (parse_positive(row[xcol], x) && parse_positive(row[ycol], y)) series[it->second].points.emplace_back(x, y);
    }
  }

  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      xlo = std::min(xlo, x), xhi = std::max(xhi, x);
      ylo = std::min(ylo, y), yhi = std::max(yhi, y);
    }
  if (!std::isfinite(xlo)) xlo = 1, xhi = 10, ylo = 1, yhi = 10;
  const auto [xa, xb] = decades(xlo, xhi);
  const auto [ya, yb] = decades(ylo, yhi);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (std::log10(x) - xa) / (xb - xa) * pw; };
  const auto py = [&](double y) { return kTop + ph - (std::log10(y) - ya) / (yb - ya) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fmt(kLeft) << "\" y=\"24\" font-size=\"14\">" << xml_escape(spec.title) << "</text>\n";
  o << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = xa; d <= xb; ++d) {
    const double x = kLeft + static_cast<double>(d - xa) / (xb - xa) * pw;
    o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(kTop + ph)
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">1e" << d
      << "</text>\n";
  }
  for (int d = ya; d <= yb; ++d) {
    const double y = kTop + ph - static_cast<double>(d - ya) / (yb - ya) * ph;
    o << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft + pw) << "\" y2=\"" << fmt(y)
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 16) << "\" text-anchor=\"middle\">"
    << xml_escape(spec.x) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    auto pts = series[i].points;
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!pts.empty()) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t j = 0; j < pts.size(); ++j)
        o << (j ? " " : "") << fmt(px(pts[j].first)) << "," << fmt(py(pts[j].second));
      o << "\"/>\n";
      for (const auto& [x, y] : pts)
        o << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 14 + 16 * static_cast<double>(i);
    o << "<line x1=\"" << fmt(kLeft + pw + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(kLeft + pw + 32)
      << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << fmt(kLeft + pw + 38) << "\" y=\"" << fmt(ly) << "\">" << xml_escape(series[i].label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void emit_plot(const std::string& csv_path, const std::string& out_path, const std::optional<PlotSpec>& spec) {
  const CsvTable table = read_csv_file(csv_path);
  std::optional<PlotSpec> chosen = spec ? spec : default_plot_spec(table);
  if (!chosen) {
    if (table.header.empty()) throw InvalidArgument("missing columns: empty table");
    throw InvalidArgument("missing columns: no default plot for this table; pass --y");
  }
  const std::string svg = render_svg(table, *chosen);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + out_path);
  out << svg;
}

}  // namespace ergolab::cli
