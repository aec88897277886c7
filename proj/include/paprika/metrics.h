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

// Error and power metrics over procedure transcripts.

#ifndef PAPRIKA_METRICS_H_
#define PAPRIKA_METRICS_H_

#include <optional>
#include <span>
#include <vector>

#include "paprika/procedures.h"

namespace paprika {

struct TrialSummary {
  double fdp = 0.0;
  // Empty when the stream had no non-null hypotheses.
  std::optional<double> power;
  int rejections = 0;
  int false_rejections = 0;
};

struct AggregateSummary {
  int trials = 0;
  int power_trials = 0;  // trials whose power was defined
  double mean_fdr = 0.0;
  double se_fdr = 0.0;
  double mean_power = 0.0;
  double se_power = 0.0;
  double mean_rejections = 0.0;
  // sum(false rejections) / sum(rejections); empty when nothing was rejected.
  std::optional<double> mfdr;
};

// |rejected and null| / max(|rejected|, 1). Throws on length mismatch.
double Fdp(std::span<const StepRecord> records, const std::vector<bool>& is_null);

// Fraction of non-null hypotheses rejected. Throws on length mismatch or
// when there are no non-nulls.
double Power(std::span<const StepRecord> records, const std::vector<bool>& is_null);

TrialSummary Summarize(std::span<const StepRecord> records, const std::vector<bool>& is_null);

enum class FdpHatVariant {
  kSaffron,  // sum alpha_j 1{p_j > lambda_j} / (1 - lambda_j)
  kPaprika,  // sum alpha_j 1{p_j > 2 lambda_j} / (1 - 2 lambda_j)
};

// Prefix-wise estimator trace with denominator max(|R(t)|, 1). The
// indicator 1{p_j above the candidacy level} is read as 1 - C_j.
std::vector<double> FdpHat(std::span<const StepRecord> records, FdpHatVariant variant);

enum class WealthRule {
  kSaffron,  // spends alpha_j / (1 - lambda_j) on non-candidates only
  kPaprika,  // spends alpha_j / (1 - 2 lambda_j) at every step
  kLord,     // spends alpha_j at every step
};

WealthRule WealthRuleFor(ProcedureId id);

// W(t) = W0 - cumulative spending + earnings, where the first rejection
// earns alpha - W0 and every later one earns alpha.
std::vector<double> WealthTrace(std::span<const StepRecord> records,
                                const ProcedureConfig& config, WealthRule rule);

// Means, standard errors (sample sd / sqrt(n)) and mFDR as a ratio of
// sums. Throws on empty input.
AggregateSummary Aggregate(std::span<const TrialSummary> trials);

}  // namespace paprika

#endif  // PAPRIKA_METRICS_H_
