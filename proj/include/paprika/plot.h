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

// Static SVG line plots of summary rows and single-stream traces.

#ifndef PAPRIKA_PLOT_H_
#define PAPRIKA_PLOT_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paprika/experiment.h"

namespace paprika {

enum class PlotKind { kFdrVsPi1, kPowerVsPi1, kWealthTrace, kAlphaTrace };

// "fdr_vs_pi1", "power_vs_pi1", "wealth_trace", "alpha_trace".
PlotKind ParsePlotKind(std::string_view name);
std::string_view PlotKindName(PlotKind kind);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Drawn as short vertical ticks on the curve, e.g. rejection times.
  std::vector<double> event_x;
};

struct PlotLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool point_markers = true;
};

// Throws std::invalid_argument if there are no series or a series is empty.
void WriteSvgPlot(std::span<const PlotSeries> series, const PlotLabels& labels,
                  std::ostream& out);

// One series per (procedure, epsilon) pair, plus s and theta_alt in the key
// when the rows span more than one value of either. Points sorted by pi1.
std::vector<PlotSeries> SeriesFromRows(const std::vector<ResultRow>& rows, PlotKind kind);

// Wealth or alpha_t against hypothesis index with ticks at rejections.
PlotSeries TraceSeries(std::string label, std::span<const StepRecord> records,
                       const ProcedureConfig& config, WealthRule rule, PlotKind kind);

PlotLabels DefaultLabels(PlotKind kind);

void EmitPlot(const std::vector<ResultRow>& rows, PlotKind kind, const std::string& path);
void EmitTracePlot(std::span<const PlotSeries> series, PlotKind kind, const std::string& path);

}  // namespace paprika

#endif  // PAPRIKA_PLOT_H_
