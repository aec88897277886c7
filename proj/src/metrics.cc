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

#include "paprika/metrics.h"

#include <cmath>
#include <stdexcept>

namespace paprika {

namespace {

void CheckLengths(std::span<const StepRecord> records, const std::vector<bool>& is_null) {
  if (records.size() != is_null.size()) {
    throw std::invalid_argument("transcript and null flags differ in length");
  }
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe MeanAndStandardError(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / xs.size();
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / (xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
  }
  return out;
}

}  // namespace

double Fdp(std::span<const StepRecord> records, const std::vector<bool>& is_null) {
  const TrialSummary s = Summarize(records, is_null);
  return s.fdp;
}

double Power(std::span<const StepRecord> records, const std::vector<bool>& is_null) {
  const TrialSummary s = Summarize(records, is_null);
  if (!s.power) throw std::invalid_argument("power is undefined without non-null hypotheses");
  return *s.power;
}

TrialSummary Summarize(std::span<const StepRecord> records, const std::vector<bool>& is_null) {
  CheckLengths(records, is_null);
  TrialSummary s;
  int non_nulls = 0;
  int true_rejections = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!is_null[i]) ++non_nulls;
    if (!records[i].rejected) continue;
    ++s.rejections;
    if (is_null[i]) {
      ++s.false_rejections;
    } else {
      ++true_rejections;
    }
  }
  s.fdp = static_cast<double>(s.false_rejections) / std::max(s.rejections, 1);
  if (non_nulls > 0) s.power = static_cast<double>(true_rejections) / non_nulls;
  return s;
}

std::vector<double> FdpHat(std::span<const StepRecord> records, FdpHatVariant variant) {
  const double lambda_factor = variant == FdpHatVariant::kSaffron ? 1.0 : 2.0;
  std::vector<double> trace;
  trace.reserve(records.size());
  double numerator = 0.0;
  int rejections = 0;
  for (const auto& r : records) {
    if (!r.candidate) numerator += r.alpha_t / (1.0 - lambda_factor * r.lambda_t);
    if (r.rejected) ++rejections;
    trace.push_back(numerator / std::max(rejections, 1));
  }
  return trace;
}

WealthRule WealthRuleFor(ProcedureId id) {
  switch (id) {
    case ProcedureId::kPaprika:
    case ProcedureId::kPaprikaAi:
      return WealthRule::kPaprika;
    case ProcedureId::kLord:
      return WealthRule::kLord;
    default:
      return WealthRule::kSaffron;
  }
}

std::vector<double> WealthTrace(std::span<const StepRecord> records,
                                const ProcedureConfig& config, WealthRule rule) {
  std::vector<double> trace;
  trace.reserve(records.size());
  double wealth = config.w0;
  int rejections = 0;
  for (const auto& r : records) {
    switch (rule) {
      case WealthRule::kSaffron:
        if (!r.candidate) wealth -= r.alpha_t / (1.0 - r.lambda_t);
        break;
      case WealthRule::kPaprika:
        wealth -= r.alpha_t / (1.0 - 2.0 * r.lambda_t);
        break;
      case WealthRule::kLord:
        wealth -= r.alpha_t;
        break;
    }
    if (r.rejected) {
      wealth += rejections == 0 ? config.alpha - config.w0 : config.alpha;
      ++rejections;
    }
    trace.push_back(wealth);
  }
  return trace;
}

AggregateSummary Aggregate(std::span<const TrialSummary> trials) {
  if (trials.empty()) throw std::invalid_argument("cannot aggregate zero trials");
  AggregateSummary out;
  out.trials = static_cast<int>(trials.size());
  std::vector<double> fdps, powers;
  long total_rejections = 0;
  long total_false = 0;
  for (const auto& t : trials) {
    fdps.push_back(t.fdp);
    if (t.power) powers.push_back(*t.power);
    total_rejections += t.rejections;
    total_false += t.false_rejections;
  }
  const MeanSe fdr = MeanAndStandardError(fdps);
  const MeanSe pw = MeanAndStandardError(powers);
  out.mean_fdr = fdr.mean;
  out.se_fdr = fdr.se;
  out.mean_power = pw.mean;
  out.se_power = pw.se;
  out.power_trials = static_cast<int>(powers.size());
  out.mean_rejections = static_cast<double>(total_rejections) / out.trials;
  if (total_rejections > 0) {
    out.mfdr = static_cast<double>(total_false) / static_cast<double>(total_rejections);
  }
  return out;
}

}  // namespace paprika
