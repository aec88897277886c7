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

#include "paprika/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "format_util.h"
#include "paprika/random.h"

namespace paprika {

namespace {

constexpr uint64_t kStreamTag = 0x5354524541ULL;  // "STREA"
constexpr uint64_t kNoiseTag = 0x4E4F495345ULL;   // "NOISE"

// A procedure evaluated at one (epsilon, s) point.
struct ProcedureCell {
  ProcedureId id;
  double epsilon;
  double s;
};

// Observation-model parameters that define a stream.
struct ModelCell {
  double theta_alt;
  double pi1;
};

std::vector<ProcedureCell> ExpandProcedures(const ExperimentSpec& spec) {
  std::vector<ProcedureCell> cells;
  for (ProcedureId id : spec.procedures) {
    const std::vector<double> eps =
        UsesPrivacyBudget(id) ? spec.epsilon_grid : std::vector<double>{0.0};
    const std::vector<double> shifts = UsesShift(id) ? spec.s_grid : std::vector<double>{0.0};
    for (double e : eps) {
      for (double s : shifts) cells.push_back({id, e, s});
    }
  }
  return cells;
}

std::vector<ModelCell> ExpandModels(const ExperimentSpec& spec) {
  std::vector<ModelCell> cells;
  for (double theta : spec.ThetaAltGrid()) {
    for (double pi1 : spec.pi1_grid) cells.push_back({theta, pi1});
  }
  return cells;
}

std::string CellName(const ExperimentSpec& spec, const ModelCell& m, const ProcedureCell* p) {
  std::ostringstream out;
  out << ModelName(spec.model) << " pi1=" << m.pi1 << " theta_alt=" << m.theta_alt;
  if (p != nullptr) {
    out << " procedure=" << ProcedureName(p->id);
    if (UsesPrivacyBudget(p->id)) out << " epsilon=" << p->epsilon;
    if (UsesShift(p->id)) out << " s=" << p->s;
  }
  return out.str();
}

uint64_t ProcedureKey(ProcedureId id, double epsilon, double s) {
  return DeriveSeed(static_cast<uint64_t>(id) + 1,
                    {KeyOf(UsesPrivacyBudget(id) ? epsilon : 0.0),
                     KeyOf(UsesShift(id) ? s : 0.0)});
}

}  // namespace

StreamModel MakeModel(const ExperimentSpec& spec, double pi1, double theta_alt) {
  if (spec.model == ModelKind::kBernoulli) {
    return BernoulliModel{spec.n, spec.k, pi1, theta_alt};
  }
  return TruncExpModel{spec.n, spec.k, pi1, spec.trunc_b, theta_alt};
}

ProcedureConfig MakeProcedureConfig(const ExperimentSpec& spec, ProcedureId id, double epsilon,
                                    double s) {
  ProcedureConfig config;
  config.alpha = spec.alpha;
  config.w0 = spec.InitialWealth();
  config.gamma = spec.gamma == "power" ? GammaSequence::PowerDecay(spec.k, spec.gamma_exponent)
                                       : GammaSequence::Constant(spec.k);
  config.c = spec.c;
  config.k = spec.k;
  config.budget = PrivacyBudget(UsesPrivacyBudget(id) ? epsilon : 1.0, spec.delta);
  config.s = UsesShift(id) ? s : 1.0;
  switch (id) {
    case ProcedureId::kPaprika:
      config.lambda = ConstantLambda{spec.paprika_lambda};
      break;
    case ProcedureId::kSaffron:
    case ProcedureId::kLapSaffron:
      config.lambda = ConstantLambda{spec.saffron_lambda};
      break;
    default:
      config.lambda = MatchAlpha{};
      break;
  }
  return config;
}

uint64_t StreamSeed(const ExperimentSpec& spec, double pi1, double theta_alt, int trial) {
  return DeriveSeed(spec.master_seed,
                    {kStreamTag, static_cast<uint64_t>(spec.model), static_cast<uint64_t>(spec.n),
                     static_cast<uint64_t>(spec.k), KeyOf(spec.trunc_b), KeyOf(pi1),
                     KeyOf(theta_alt), static_cast<uint64_t>(trial)});
}

uint64_t NoiseSeed(const ExperimentSpec& spec, double pi1, double theta_alt, ProcedureId id,
                   double epsilon, double s, int trial) {
  return DeriveSeed(StreamSeed(spec, pi1, theta_alt, trial),
                    {kNoiseTag, ProcedureKey(id, epsilon, s)});
}

std::vector<ResultRow> RunExperiment(const ExperimentSpec& spec, RunOptions options) {
  spec.Validate();
  const std::vector<ModelCell> models = ExpandModels(spec);
  const std::vector<ProcedureCell> procs = ExpandProcedures(spec);
  const std::size_t trials = static_cast<std::size_t>(spec.trials);

  std::vector<ProcedureConfig> configs;
  for (const auto& p : procs) {
    configs.push_back(MakeProcedureConfig(spec, p.id, p.epsilon, p.s));
    configs.back().Validate(p.id);
  }

  // summaries[(model * procs + proc) * trials + trial]
  std::vector<TrialSummary> summaries(models.size() * procs.size() * trials);
  const std::size_t work_items = models.size() * trials;

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_item = work_items;

  auto run_item = [&](std::size_t item) {
    const std::size_t m = item / trials;
    const int trial = static_cast<int>(item % trials);
    const ModelCell& cell = models[m];
    const StreamModel model = MakeModel(spec, cell.pi1, cell.theta_alt);
    std::optional<HypothesisStream> shared;
    if (spec.paired) {
      Rng rng(StreamSeed(spec, cell.pi1, cell.theta_alt, trial));
      shared = GenerateStream(model, rng);
    }
    for (std::size_t p = 0; p < procs.size(); ++p) {
      const ProcedureCell& pc = procs[p];
      const uint64_t noise_seed =
          NoiseSeed(spec, cell.pi1, cell.theta_alt, pc.id, pc.epsilon, pc.s, trial);
      std::optional<HypothesisStream> own;
      if (!spec.paired) {
        Rng rng(DeriveSeed(StreamSeed(spec, cell.pi1, cell.theta_alt, trial),
                           {ProcedureKey(pc.id, pc.epsilon, pc.s)}));
        own = GenerateStream(model, rng);
      }
      const HypothesisStream& stream = spec.paired ? *shared : *own;
      Rng noise(noise_seed);
      try {
        const auto records = RunProcedure(pc.id, configs[p], stream, noise);
        summaries[(m * procs.size() + p) * trials + trial] = Summarize(records, stream.is_null);
      } catch (const std::exception& e) {
        throw std::runtime_error(CellName(spec, cell, &pc) + " trial " +
                                 std::to_string(trial) + ": " + e.what());
      }
    }
  };

  auto worker = [&] {
    while (true) {
      const std::size_t item = next.fetch_add(1);
      if (item >= work_items) return;
      try {
        run_item(item);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        // Report the lowest failing item so the message is deterministic.
        if (item < first_error_item) {
          first_error_item = item;
          first_error = std::current_exception();
        }
      }
    }
  };

  int jobs = options.jobs > 0 ? options.jobs
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = static_cast<int>(std::min<std::size_t>(jobs, work_items));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<ResultRow> rows;
  rows.reserve(models.size() * procs.size());
  for (std::size_t m = 0; m < models.size(); ++m) {
    for (std::size_t p = 0; p < procs.size(); ++p) {
      ResultRow row;
      row.model = spec.model;
      row.pi1 = models[m].pi1;
      row.theta_alt = models[m].theta_alt;
      row.procedure = procs[p].id;
      if (UsesPrivacyBudget(procs[p].id)) row.epsilon = procs[p].epsilon;
      if (UsesShift(procs[p].id)) row.s = procs[p].s;
      const auto begin = summaries.begin() + (m * procs.size() + p) * trials;
      row.summary = Aggregate(std::span<const TrialSummary>(&*begin, trials));
      rows.push_back(row);
    }
  }
  return rows;
}

TraceResult RunTrace(const ExperimentSpec& spec, ProcedureId id, double pi1, double theta_alt,
                     double epsilon, double s, int trial) {
  spec.Validate();
  TraceResult result;
  Rng stream_rng(StreamSeed(spec, pi1, theta_alt, trial));
  result.stream = GenerateStream(MakeModel(spec, pi1, theta_alt), stream_rng);
  result.config = MakeProcedureConfig(spec, id, epsilon, s);
  Rng noise(NoiseSeed(spec, pi1, theta_alt, id, epsilon, s, trial));
  result.records = RunProcedure(id, result.config, result.stream, noise);
  return result;
}

namespace {

constexpr std::string_view kSummaryHeader =
    "model,pi1,theta_alt,epsilon,s,procedure,trials,mean_fdr,se_fdr,mean_power,se_power,mfdr";

std::string Optional(const std::optional<double>& value) {
  return value ? internal::FormatReal(*value) : std::string();
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double ToDouble(const std::string& field, int line) {
  double value = 0.0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument("summary CSV line " + std::to_string(line) + ": bad number '" +
                                field + "'");
  }
  return value;
}

std::optional<double> ToOptional(const std::string& field, int line) {
  if (field.empty()) return std::nullopt;
  return ToDouble(field, line);
}

}  // namespace

void WriteSummaryCsv(const std::vector<ResultRow>& rows, std::ostream& out) {
  using internal::FormatReal;
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << ModelName(r.model) << ',' << FormatReal(r.pi1) << ',' << FormatReal(r.theta_alt) << ','
        << Optional(r.epsilon) << ',' << Optional(r.s) << ',' << ProcedureName(r.procedure) << ','
        << r.summary.trials << ',' << FormatReal(r.summary.mean_fdr) << ','
        << FormatReal(r.summary.se_fdr) << ',' << FormatReal(r.summary.mean_power) << ','
        << FormatReal(r.summary.se_power) << ',' << Optional(r.summary.mfdr) << '\n';
  }
}

void WriteSummaryCsvFile(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  WriteSummaryCsv(rows, out);
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

std::vector<ResultRow> ReadSummaryCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw std::invalid_argument("summary CSV header mismatch");
  }
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsv(line);
    if (f.size() != 12) {
      throw std::invalid_argument("summary CSV line " + std::to_string(line_no) +
                                  ": expected 12 fields");
    }
    ResultRow r;
    r.model = ParseModelKind(f[0]);
    r.pi1 = ToDouble(f[1], line_no);
    r.theta_alt = ToDouble(f[2], line_no);
    r.epsilon = ToOptional(f[3], line_no);
    r.s = ToOptional(f[4], line_no);
    r.procedure = ParseProcedureId(f[5]);
    r.summary.trials = static_cast<int>(ToDouble(f[6], line_no));
    r.summary.mean_fdr = ToDouble(f[7], line_no);
    r.summary.se_fdr = ToDouble(f[8], line_no);
    r.summary.mean_power = ToDouble(f[9], line_no);
    r.summary.se_power = ToDouble(f[10], line_no);
    r.summary.mfdr = ToOptional(f[11], line_no);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace paprika
