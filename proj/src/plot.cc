//
// Copyright 2026 The PAPRIKA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "paprika/plot.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace paprika {

namespace {

constexpr std::string_view kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

constexpr double kWidth = 760, kHeight = 440;
constexpr double kLeft = 70, kRight = 230, kTop = 40, kBottom = 60;

std::string Escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string Num(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Pad() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      const double pad = std::max(std::abs(lo) * 0.1, 1e-3);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

PlotKind ParsePlotKind(std::string_view name) {
  if (name == "fdr_vs_pi1") return PlotKind::kFdrVsPi1;
  if (name == "power_vs_pi1") return PlotKind::kPowerVsPi1;
  if (name == "wealth_trace") return PlotKind::kWealthTrace;
  if (name == "alpha_trace") return PlotKind::kAlphaTrace;
  throw std::invalid_argument("unknown plot kind '" + std::string(name) + "'");
}

std::string_view PlotKindName(PlotKind kind) {
  switch (kind) {
    case PlotKind::kFdrVsPi1: return "fdr_vs_pi1";
    case PlotKind::kPowerVsPi1: return "power_vs_pi1";
    case PlotKind::kWealthTrace: return "wealth_trace";
    case PlotKind::kAlphaTrace: return "alpha_trace";
  }
  return "";
}

PlotLabels DefaultLabels(PlotKind kind) {
  switch (kind) {
    case PlotKind::kFdrVsPi1: return {"FDR vs fraction of non-nulls", "pi1", "FDR", true};
    case PlotKind::kPowerVsPi1: return {"Power vs fraction of non-nulls", "pi1", "power", true};
    case PlotKind::kWealthTrace: return {"Wealth vs hypothesis index", "t", "wealth", false};
    case PlotKind::kAlphaTrace:
      return {"Rejection threshold vs hypothesis index", "t", "alpha_t", false};
  }
  return {};
}

void WriteSvgPlot(std::span<const PlotSeries> series, const PlotLabels& labels,
                  std::ostream& out) {
  if (series.empty()) throw std::invalid_argument("plot needs at least one series");
  Range xr, yr;
  for (const auto& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw std::invalid_argument("plot series '" + s.label + "' is empty or ragged");
    }
    for (double v : s.x) xr.Add(v);
    for (double v : s.y) yr.Add(v);
  }
  xr.Pad();
  yr.Pad();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << Escape(labels.title) << "</text>\n";

  // Axes and ticks.
  out << "<g stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/>\n</g>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    out << "<line x1=\"" << px(xv) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px(xv)
        << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(xv) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << Num(xv) << "</text>\n"
        << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << kLeft
        << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
        << Num(yv) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << Escape(labels.x_label) << "</text>\n"
      << "<text transform=\"translate(18," << kTop + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(labels.y_label) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const std::string_view color = kColors[i % std::size(kColors)];
    out << "<g class=\"series\" data-label=\"" << Escape(s.label) << "\">\n";
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      out << (j > 0 ? " " : "") << px(s.x[j]) << ',' << py(s.y[j]);
    }
    out << "\"/>\n";
    if (labels.point_markers) {
      for (std::size_t j = 0; j < s.x.size(); ++j) {
        out << "<circle class=\"marker\" cx=\"" << px(s.x[j]) << "\" cy=\"" << py(s.y[j])
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    for (double ex : s.event_x) {
      // Tick at the curve height for the event index.
      const auto it = std::lower_bound(s.x.begin(), s.x.end(), ex);
      const double ey = it == s.x.end() ? s.y.back() : s.y[it - s.x.begin()];
      out << "<line class=\"event\" x1=\"" << px(ex) << "\" y1=\"" << py(ey) - 6 << "\" x2=\""
          << px(ex) << "\" y2=\"" << py(ey) + 6 << "\" stroke=\"" << color << "\"/>\n";
    }
    out << "</g>\n";
    const double ly = kTop + 10 + 18 * static_cast<double>(i);
    const double lx = kLeft + plot_w + 15;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << lx + 26 << "\" y=\"" << ly + 4 << "\">" << Escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

std::vector<PlotSeries> SeriesFromRows(const std::vector<ResultRow>& rows, PlotKind kind) {
  if (kind != PlotKind::kFdrVsPi1 && kind != PlotKind::kPowerVsPi1) {
    throw std::invalid_argument("summary rows only support fdr_vs_pi1 and power_vs_pi1");
  }
  std::set<double> thetas, shifts;
  for (const auto& r : rows) {
    thetas.insert(r.theta_alt);
    if (r.s) shifts.insert(*r.s);
  }
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> points;
  for (const auto& r : rows) {
    std::string label(ProcedureName(r.procedure));
    if (r.epsilon) label += " eps=" + Num(*r.epsilon);
    if (r.s && shifts.size() > 1) label += " s=" + Num(*r.s);
    if (thetas.size() > 1) label += " theta=" + Num(r.theta_alt);
    if (!points.contains(label)) order.push_back(label);
    const double y = kind == PlotKind::kFdrVsPi1 ? r.summary.mean_fdr : r.summary.mean_power;
    points[label].emplace_back(r.pi1, y);
  }
  std::vector<PlotSeries> series;
  for (const auto& label : order) {
    auto pts = points[label];
    std::sort(pts.begin(), pts.end());
    PlotSeries s;
    s.label = label;
    for (const auto& [x, y] : pts) {
      s.x.push_back(x);
      s.y.push_back(y);
    }
    series.push_back(std::move(s));
  }
  return series;
}

PlotSeries TraceSeries(std::string label, std::span<const StepRecord> records,
                       const ProcedureConfig& config, WealthRule rule, PlotKind kind) {
  PlotSeries s;
  s.label = std::move(label);
  const std::vector<double> wealth = kind == PlotKind::kWealthTrace
                                         ? WealthTrace(records, config, rule)
                                         : std::vector<double>{};
  for (std::size_t i = 0; i < records.size(); ++i) {
    s.x.push_back(records[i].t);
    s.y.push_back(kind == PlotKind::kWealthTrace ? wealth[i] : records[i].alpha_t);
    if (records[i].rejected) s.event_x.push_back(records[i].t);
  }
  return s;
}

namespace {

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

void EmitPlot(const std::vector<ResultRow>& rows, PlotKind kind, const std::string& path) {
  const auto series = SeriesFromRows(rows, kind);
  std::ofstream out = OpenOut(path);
  WriteSvgPlot(series, DefaultLabels(kind), out);
}

void EmitTracePlot(std::span<const PlotSeries> series, PlotKind kind, const std::string& path) {
  std::ofstream out = OpenOut(path);
  WriteSvgPlot(series, DefaultLabels(kind), out);
}

}  // namespace paprika
