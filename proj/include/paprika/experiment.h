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

// Replication engine: expands an ExperimentSpec into grid cells, runs the
// independent trials on a bounded worker pool, and reduces them in (cell,
// trial) order so results never depend on scheduling.

#ifndef PAPRIKA_EXPERIMENT_H_
#define PAPRIKA_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "paprika/experiment_spec.h"
#include "paprika/metrics.h"
#include "paprika/procedures.h"
#include "paprika/pvalue_models.h"

namespace paprika {

struct ResultRow {
  ModelKind model = ModelKind::kBernoulli;
  double pi1 = 0.0;
  double theta_alt = 0.0;
  std::optional<double> epsilon;  // empty for procedures that ignore it
  std::optional<double> s;        // empty outside the PAPRIKA family
  ProcedureId procedure = ProcedureId::kPaprika;
  AggregateSummary summary;
};

struct RunOptions {
  int jobs = 0;  // 0 = hardware concurrency
};

StreamModel MakeModel(const ExperimentSpec& spec, double pi1, double theta_alt);

// Full procedure configuration for one grid cell. epsilon and s are
// ignored by procedures that do not use them.
ProcedureConfig MakeProcedureConfig(const ExperimentSpec& spec, ProcedureId id, double epsilon,
                                    double s);

// Seed of the stream for a model cell and trial. Keyed by parameter
// values, so editing one cell never moves another cell's streams.
uint64_t StreamSeed(const ExperimentSpec& spec, double pi1, double theta_alt, int trial);

// Seed of the procedure noise for one (procedure cell, trial).
uint64_t NoiseSeed(const ExperimentSpec& spec, double pi1, double theta_alt, ProcedureId id,
                   double epsilon, double s, int trial);

// One row per (theta_alt, pi1, procedure, epsilon, s) cell, in that nesting
// order; epsilon and s only vary for procedures that use them. Errors are
// rethrown as std::runtime_error with the failing cell named.
std::vector<ResultRow> RunExperiment(const ExperimentSpec& spec, RunOptions options = {});

struct TraceResult {
  HypothesisStream stream;
  std::vector<StepRecord> records;
  ProcedureConfig config;
};

// Single-stream transcript for one procedure at the given cell.
TraceResult RunTrace(const ExperimentSpec& spec, ProcedureId id, double pi1, double theta_alt,
                     double epsilon, double s, int trial = 0);

// Summary CSV. Columns, in order:
//   model,pi1,theta_alt,epsilon,s,procedure,trials,mean_fdr,se_fdr,
//   mean_power,se_power,mfdr
// Reals at 17 significant digits; epsilon, s and mfdr are empty when not
// applicable. LF line endings.
void WriteSummaryCsv(const std::vector<ResultRow>& rows, std::ostream& out);
void WriteSummaryCsvFile(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> ReadSummaryCsv(std::istream& in);

}  // namespace paprika

#endif  // PAPRIKA_EXPERIMENT_H_
