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

// Command-line front end for the experiment harness.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "paprika/experiment.h"
#include "paprika/experiment_spec.h"
#include "paprika/plot.h"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct CommonFlags {
  std::optional<uint64_t> seed;
  int jobs = 0;
  std::string out;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Override the master seed");
  cmd->add_option("--jobs", flags.jobs, "Maximum concurrent trials (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", flags.out, "Output directory");
}

void Apply(const CommonFlags& flags, paprika::ExperimentSpec& spec) {
  if (flags.seed) spec.master_seed = *flags.seed;
  if (!flags.out.empty()) spec.output_dir = flags.out;
}

std::string OutPath(const paprika::ExperimentSpec& spec, const std::string& file) {
  fs::create_directories(spec.output_dir);
  return (fs::path(spec.output_dir) / file).string();
}

void RunAndWrite(const paprika::ExperimentSpec& spec, int jobs) {
  const auto rows = paprika::RunExperiment(spec, {jobs});
  const std::string csv = OutPath(spec, spec.name + "_summary.csv");
  paprika::WriteSummaryCsvFile(rows, csv);
  for (auto kind : {paprika::PlotKind::kFdrVsPi1, paprika::PlotKind::kPowerVsPi1}) {
    paprika::EmitPlot(rows, kind,
                      OutPath(spec, spec.name + "_" + std::string(PlotKindName(kind)) + ".svg"));
  }
  std::cout << "wrote " << rows.size() << " rows to " << csv << '\n';
}

int CmdRun(const std::string& spec_path, const CommonFlags& flags) {
  auto spec = paprika::LoadSpecFile(spec_path);
  Apply(flags, spec);
  RunAndWrite(spec, flags.jobs);
  return kOk;
}

int CmdTables(const CommonFlags& flags) {
  for (auto model : {paprika::ModelKind::kBernoulli, paprika::ModelKind::kTruncExp}) {
    auto spec = paprika::TableSpec(model);
    Apply(flags, spec);
    RunAndWrite(spec, flags.jobs);
  }
  return kOk;
}

int CmdPlot(const std::string& csv_path, const std::string& kind_name, std::string out) {
  const auto kind = paprika::ParsePlotKind(kind_name);
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open '" + csv_path + "'");
  const auto rows = paprika::ReadSummaryCsv(in);
  if (out.empty()) {
    out = (fs::path(csv_path).replace_extension("").string()) + "_" + kind_name + ".svg";
  }
  paprika::EmitPlot(rows, kind, out);
  std::cout << "wrote " << out << '\n';
  return kOk;
}

struct TraceFlags {
  std::string procedure;
  std::optional<double> epsilon, pi1, theta_alt, s;
  int trial = 0;
};

int CmdTrace(const std::string& spec_path, const TraceFlags& tf, const CommonFlags& flags) {
  auto spec = paprika::LoadSpecFile(spec_path);
  Apply(flags, spec);
  const auto id = paprika::ParseProcedureId(tf.procedure);
  const double eps = tf.epsilon.value_or(spec.epsilon_grid.front());
  const double pi1 = tf.pi1.value_or(spec.pi1_grid.front());
  const double theta = tf.theta_alt.value_or(spec.ThetaAltGrid().front());
  const double s = tf.s.value_or(spec.s_grid.front());
  const auto trace = paprika::RunTrace(spec, id, pi1, theta, eps, s, tf.trial);

  const std::string stem = spec.name + "_" + tf.procedure;
  {
    std::ofstream out(OutPath(spec, stem + "_transcript.csv"), std::ios::binary);
    paprika::WriteTranscriptCsv(trace.records, out);
  }
  {
    std::ofstream out(OutPath(spec, stem + "_stream.csv"), std::ios::binary);
    paprika::WriteStreamCsv(trace.stream, out);
  }
  const auto rule = paprika::WealthRuleFor(id);
  for (auto kind : {paprika::PlotKind::kWealthTrace, paprika::PlotKind::kAlphaTrace}) {
    const auto series = paprika::TraceSeries(tf.procedure, trace.records, trace.config, rule, kind);
    paprika::EmitTracePlot(std::span(&series, 1), kind,
                           OutPath(spec, stem + "_" + std::string(PlotKindName(kind)) + ".svg"));
  }
  int rejections = 0;
  for (const auto& r : trace.records) rejections += r.rejected ? 1 : 0;
  std::cout << tf.procedure << ": " << rejections << " rejections over " << trace.records.size()
            << " hypotheses; outputs in " << spec.output_dir << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private online false discovery rate control experiments"};
  app.require_subcommand(1);

  CommonFlags common;
  std::string spec_path, csv_path, kind, plot_out;
  TraceFlags trace_flags;

  auto* run = app.add_subcommand("run", "Run the experiment grid in a spec file");
  run->add_option("spec", spec_path, "Spec file")->required();
  AddCommonFlags(run, common);

  auto* tables = app.add_subcommand("tables", "Reproduce the Bernoulli and truncated-exponential tables");
  AddCommonFlags(tables, common);

  auto* plot = app.add_subcommand("plot", "Render a summary CSV as SVG");
  plot->add_option("csv", csv_path, "Summary CSV")->required();
  plot->add_option("--kind", kind, "fdr_vs_pi1 | power_vs_pi1")->required();
  plot->add_option("--out", plot_out, "Output SVG path");

  auto* trace = app.add_subcommand("trace", "Single-stream transcript and wealth plot");
  trace->add_option("spec", spec_path, "Spec file")->required();
  trace->add_option("--procedure", trace_flags.procedure, "Procedure id")->required();
  trace->add_option("--epsilon", trace_flags.epsilon, "Privacy epsilon");
  trace->add_option("--pi1", trace_flags.pi1, "Non-null fraction");
  trace->add_option("--theta-alt", trace_flags.theta_alt, "Alternative parameter");
  trace->add_option("--s", trace_flags.s, "Shift magnitude");
  trace->add_option("--trial", trace_flags.trial, "Trial index for the seed");
  AddCommonFlags(trace, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kConfigError;
  }

  try {
    if (*run) return CmdRun(spec_path, common);
    if (*tables) return CmdTables(common);
    if (*plot) return CmdPlot(csv_path, kind, plot_out);
    if (*trace) return CmdTrace(spec_path, trace_flags, common);
  } catch (const paprika::SpecError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kConfigError;
}
