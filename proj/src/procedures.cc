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

#include "paprika/procedures.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "format_util.h"

namespace paprika {

namespace {

struct NameEntry {
  ProcedureId id;
  std::string_view name;
};

constexpr NameEntry kNames[] = {
    {ProcedureId::kPaprikaAi, "paprika_ai"},
    {ProcedureId::kPaprika, "paprika"},
    {ProcedureId::kSaffronAi, "saffron_ai"},
    {ProcedureId::kSaffron, "saffron"},
    {ProcedureId::kLord, "lord"},
    {ProcedureId::kAlphaInvesting, "alpha_investing"},
    {ProcedureId::kLapSaffron, "lap_saffron"},
};

bool IsPaprika(ProcedureId id) {
  return id == ProcedureId::kPaprika || id == ProcedureId::kPaprikaAi;
}

bool ForcesMatchAlpha(ProcedureId id) {
  return id == ProcedureId::kPaprikaAi || id == ProcedureId::kSaffronAi ||
         id == ProcedureId::kAlphaInvesting;
}

ProcedureConfig Specialize(ProcedureId id, const ProcedureConfig& config) {
  ProcedureConfig out = config;
  if (ForcesMatchAlpha(id)) out.lambda = MatchAlpha{};
  return out;
}

}  // namespace

std::string_view ProcedureName(ProcedureId id) {
  for (const auto& entry : kNames) {
    if (entry.id == id) return entry.name;
  }
  throw std::logic_error("unnamed procedure id");
}

ProcedureId ParseProcedureId(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.id;
  }
  throw std::invalid_argument("unknown procedure '" + std::string(name) + "'");
}

bool UsesPrivacyBudget(ProcedureId id) {
  return IsPaprika(id) || id == ProcedureId::kLapSaffron;
}

bool UsesShift(ProcedureId id) { return IsPaprika(id); }

GammaSequence GammaSequence::Constant(int k) {
  if (k < 1) throw std::invalid_argument("gamma horizon k must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(k) + 1, 1.0 / k);
  values[0] = 0.0;
  return GammaSequence(std::move(values));
}

GammaSequence GammaSequence::PowerDecay(int k, double exponent) {
  if (k < 1) throw std::invalid_argument("gamma horizon k must be >= 1");
  if (!(exponent > 0.0)) throw std::invalid_argument("gamma decay exponent must be positive");
  std::vector<double> values(static_cast<std::size_t>(k) + 1, 0.0);
  double total = 0.0;
  for (int j = 1; j <= k; ++j) {
    values[j] = std::pow(static_cast<double>(j), -exponent);
    total += values[j];
  }
  for (double& v : values) v /= total;
  return GammaSequence(std::move(values));
}

double GammaSequence::Sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

void ProcedureConfig::Validate(ProcedureId id) const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("invariant 0 < alpha < 1 violated");
  }
  if (!(w0 > 0.0 && w0 < alpha)) {
    throw std::invalid_argument("invariant 0 < w0 < alpha violated");
  }
  if (gamma.Sum() > 1.0 + 1e-12) {
    throw std::invalid_argument("invariant sum(gamma) <= 1 violated");
  }
  if (c < 1) throw std::invalid_argument("invariant c >= 1 violated");
  if (k < 1) throw std::invalid_argument("invariant k >= 1 violated");
  if (!(s > 0.0)) throw std::invalid_argument("invariant s > 0 violated");
  if (!ForcesMatchAlpha(id)) {
    const auto* constant = std::get_if<ConstantLambda>(&lambda);
    if (constant != nullptr) {
      const double upper = IsPaprika(id) ? 0.5 : 1.0;
      if (!(constant->value > 0.0 && constant->value < upper)) {
        throw std::invalid_argument(
            IsPaprika(id) ? "invariant 0 < lambda < 1/2 violated (candidacy uses 2 lambda)"
                          : "invariant 0 < lambda < 1 violated");
      }
    }
  }
  if (UsesPrivacyBudget(id) && !(budget.delta() > 0.0)) {
    throw std::invalid_argument("invariant delta > 0 violated for private procedure");
  }
}

void RecordOutcome(ProcedureState& state, bool candidate, bool rejected) {
  ++state.t;
  if (candidate) {
    for (int& tally : state.candidate_counts) ++tally;
  }
  if (rejected) {
    state.rejection_times.push_back(state.t);
    state.candidate_counts.push_back(0);
    ++state.count;
  }
}

double SaffronBracket(const ProcedureState& state, const ProcedureConfig& config, int t) {
  const auto& g = config.gamma;
  double bracket = config.w0 * g(t - state.candidate_counts[0]);
  for (std::size_t j = 0; j < state.rejection_times.size(); ++j) {
    const double payout = j == 0 ? config.alpha - config.w0 : config.alpha;
    const long index = static_cast<long>(t) - state.rejection_times[j] -
                       state.candidate_counts[j + 1];
    bracket += payout * g(index);
  }
  return bracket;
}

double PaprikaBracket(const ProcedureState& state, const ProcedureConfig& config, int t) {
  const auto& g = config.gamma;
  double bracket = config.w0 * g(t);
  for (std::size_t j = 0; j < state.rejection_times.size(); ++j) {
    const double payout = j == 0 ? config.alpha - config.w0 : config.alpha;
    bracket += payout * g(static_cast<long>(t) - state.rejection_times[j]);
  }
  return bracket;
}

double SaffronAlpha(const ProcedureState& state, const ProcedureConfig& config, int t) {
  const double bracket = SaffronBracket(state, config, t);
  if (const auto* constant = std::get_if<ConstantLambda>(&config.lambda)) {
    return (1.0 - constant->value) * bracket;
  }
  // alpha = (1 - alpha) B  =>  alpha = B / (1 + B)
  return bracket / (1.0 + bracket);
}

double PaprikaAlpha(const ProcedureState& state, const ProcedureConfig& config, int t) {
  const double bracket = PaprikaBracket(state, config, t);
  if (config.candidacy_disabled) return bracket;
  if (const auto* constant = std::get_if<ConstantLambda>(&config.lambda)) {
    return (1.0 - 2.0 * constant->value) * bracket;
  }
  // alpha = (1 - 2 alpha) B  =>  alpha = B / (1 + 2B)
  return bracket / (1.0 + 2.0 * bracket);
}

namespace {

double LambdaFor(const ProcedureConfig& config, double alpha_t) {
  if (const auto* constant = std::get_if<ConstantLambda>(&config.lambda)) {
    return constant->value;
  }
  return alpha_t;
}

LaplaceScale ThresholdNoiseScale(const ProcedureConfig& config, double eta) {
  return LaplaceScale(2.0 * eta * config.c / config.budget.epsilon());
}

LaplaceScale QueryNoiseScale(const ProcedureConfig& config, double eta) {
  return LaplaceScale(4.0 * eta * config.c / config.budget.epsilon());
}

}  // namespace

ProcedureState InitState(ProcedureId id, const ProcedureConfig& config, double eta,
                         RandomSource& rng) {
  ProcedureState state;
  state.eta = eta;
  if (IsPaprika(id)) {
    if (!(eta > 0.0)) throw std::invalid_argument("PAPRIKA needs a positive sensitivity eta");
    state.shift_a = config.shift_override.value_or(
        ComputeShift(config.s, config.c, eta, config.budget, config.k));
    state.z_alpha = SampleLaplace(ThresholdNoiseScale(config, eta), rng);
  }
  return state;
}

StepRecord StepSaffron(ProcedureState& state, const ProcedureConfig& config, double p) {
  StepRecord rec;
  rec.t = state.t + 1;
  rec.alpha_t = SaffronAlpha(state, config, rec.t);
  rec.lambda_t = LambdaFor(config, rec.alpha_t);
  rec.candidate = p < rec.lambda_t;
  // Candidacy gates rejection; it only matters when p == alpha_t == lambda_t.
  rec.rejected = rec.candidate && p <= rec.alpha_t;
  RecordOutcome(state, rec.candidate, rec.rejected);
  return rec;
}

StepRecord StepAlphaInvesting(ProcedureState& state, const ProcedureConfig& config, double p) {
  ProcedureConfig matched = config;
  matched.lambda = MatchAlpha{};
  return StepSaffron(state, matched, p);
}

StepRecord StepLord(ProcedureState& state, const ProcedureConfig& config, double p) {
  StepRecord rec;
  rec.t = state.t + 1;
  rec.alpha_t = PaprikaBracket(state, config, rec.t);
  rec.rejected = p <= rec.alpha_t;
  rec.candidate = rec.rejected;
  RecordOutcome(state, rec.candidate, rec.rejected);
  return rec;
}

StepRecord StepPaprika(ProcedureState& state, const ProcedureConfig& config, double p,
                       RandomSource& rng) {
  StepRecord rec;
  rec.t = state.t + 1;
  if (state.count >= config.c) {
    // Past the cap: no noise, no wealth, R_t = 0.
    RecordOutcome(state, false, false);
    return rec;
  }
  rec.noise_zt = SampleLaplace(QueryNoiseScale(config, state.eta), rng);
  rec.noise_zalpha = state.z_alpha;
  rec.alpha_t = PaprikaAlpha(state, config, rec.t);
  const double log_p = std::log(std::max(p, kPValueFloor));
  if (config.candidacy_disabled) {
    rec.lambda_t = 0.0;
    rec.candidate = true;
  } else {
    rec.lambda_t = LambdaFor(config, rec.alpha_t);
    rec.candidate = log_p < std::log(2.0 * rec.lambda_t);
  }
  rec.rejected = rec.candidate && rec.alpha_t > 0.0 &&
                 log_p + rec.noise_zt <=
                     std::log(rec.alpha_t) - state.shift_a + state.z_alpha;
  RecordOutcome(state, rec.candidate, rec.rejected);
  if (rec.rejected) {
    state.z_alpha = SampleLaplace(ThresholdNoiseScale(config, state.eta), rng);
  }
  return rec;
}

std::vector<SvtAnswer> SparseVector(std::span<const double> queries, double sensitivity,
                                    double threshold, int c, double epsilon,
                                    RandomSource& rng) {
  if (!(sensitivity > 0.0) || c < 1 || !(epsilon > 0.0)) {
    throw std::invalid_argument("SparseVector needs sensitivity > 0, c >= 1, epsilon > 0");
  }
  const LaplaceScale threshold_scale(2.0 * sensitivity * c / epsilon);
  const LaplaceScale query_scale(4.0 * sensitivity * c / epsilon);
  double noisy_threshold = threshold + SampleLaplace(threshold_scale, rng);
  int count = 0;
  std::vector<SvtAnswer> answers;
  for (double q : queries) {
    const double noisy = q + SampleLaplace(query_scale, rng);
    if (noisy > noisy_threshold) {
      answers.push_back(SvtAnswer::kAbove);
      ++count;
      noisy_threshold = threshold + SampleLaplace(threshold_scale, rng);
    } else {
      answers.push_back(SvtAnswer::kBelow);
    }
    if (count >= c) break;
  }
  return answers;
}

std::vector<StepRecord> RunProcedure(ProcedureId id, const ProcedureConfig& config,
                                     const HypothesisStream& stream, RandomSource& rng) {
  if (stream.size() > static_cast<std::size_t>(config.k)) {
    throw std::invalid_argument("stream length " + std::to_string(stream.size()) +
                                " exceeds k = " + std::to_string(config.k));
  }
  const ProcedureConfig cfg = Specialize(id, config);
  cfg.Validate(id);

  std::vector<StepRecord> records;
  records.reserve(stream.size());
  if (id == ProcedureId::kLapSaffron) {
    const HypothesisStream noisy = LaplacePrivatizeStream(stream, cfg.budget, rng);
    ProcedureState state;
    for (double p : noisy.pvalues) records.push_back(StepSaffron(state, cfg, p));
    return records;
  }

  ProcedureState state = InitState(id, cfg, stream.sensitivity_eta, rng);
  for (double p : stream.pvalues) {
    switch (id) {
      case ProcedureId::kPaprika:
      case ProcedureId::kPaprikaAi:
        records.push_back(StepPaprika(state, cfg, p, rng));
        break;
      case ProcedureId::kSaffron:
      case ProcedureId::kSaffronAi:
        records.push_back(StepSaffron(state, cfg, p));
        break;
      case ProcedureId::kAlphaInvesting:
        records.push_back(StepAlphaInvesting(state, cfg, p));
        break;
      case ProcedureId::kLord:
        records.push_back(StepLord(state, cfg, p));
        break;
      case ProcedureId::kLapSaffron:
        break;
    }
  }
  return records;
}

void WriteTranscriptCsv(std::span<const StepRecord> records, std::ostream& out) {
  using internal::FormatReal;
  out << "t,lambda_t,candidate,alpha_t,rejected,noise_zt,noise_zalpha\n";
  for (const auto& r : records) {
    out << r.t << ',' << FormatReal(r.lambda_t) << ',' << (r.candidate ? 1 : 0) << ','
        << FormatReal(r.alpha_t) << ',' << (r.rejected ? 1 : 0) << ','
        << FormatReal(r.noise_zt) << ',' << FormatReal(r.noise_zalpha) << '\n';
  }
}

}  // namespace paprika
