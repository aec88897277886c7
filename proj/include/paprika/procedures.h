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

// Online FDR procedures as sequential state machines, plus the SparseVector
// primitive the private rule builds on.
//
// Time is 1-based. A ProcedureState has processed hypotheses 1..state.t;
// the next step evaluates t = state.t + 1.

#ifndef PAPRIKA_PROCEDURES_H_
#define PAPRIKA_PROCEDURES_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "paprika/noise.h"
#include "paprika/pvalue_models.h"
#include "paprika/random.h"

namespace paprika {

enum class ProcedureId {
  kPaprikaAi,
  kPaprika,
  kSaffronAi,
  kSaffron,
  kLord,
  kAlphaInvesting,
  kLapSaffron,
};

inline constexpr ProcedureId kAllProcedures[] = {
    ProcedureId::kPaprikaAi, ProcedureId::kPaprika,        ProcedureId::kSaffronAi,
    ProcedureId::kSaffron,   ProcedureId::kLord,           ProcedureId::kAlphaInvesting,
    ProcedureId::kLapSaffron};

// Stable identifiers used in spec files and CSVs: "paprika_ai", "paprika",
// "saffron_ai", "saffron", "lord", "alpha_investing", "lap_saffron".
std::string_view ProcedureName(ProcedureId id);
ProcedureId ParseProcedureId(std::string_view name);

// Whether results depend on epsilon (and, for the PAPRIKA family, on s).
bool UsesPrivacyBudget(ProcedureId id);
bool UsesShift(ProcedureId id);

// Nonnegative decay weights gamma_j, j >= 0. gamma_0 = 0 and gamma_j = 0
// beyond the horizon k.
class GammaSequence {
 public:
  // gamma_j = 1/k for 1 <= j <= k.
  static GammaSequence Constant(int k);
  // gamma_j proportional to j^-exponent on 1..k, normalized to sum to one.
  static GammaSequence PowerDecay(int k, double exponent);

  double operator()(long j) const {
    return j >= 1 && j < static_cast<long>(values_.size()) ? values_[j] : 0.0;
  }
  int horizon() const { return static_cast<int>(values_.size()) - 1; }
  double Sum() const;

 private:
  explicit GammaSequence(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;  // values_[0] == 0
};

struct ConstantLambda {
  double value;
};
// lambda_t = alpha_t, resolved as a fixed point.
struct MatchAlpha {};
using LambdaSchedule = std::variant<ConstantLambda, MatchAlpha>;

struct ProcedureConfig {
  double alpha = 0.2;
  double w0 = 0.1;
  LambdaSchedule lambda = ConstantLambda{0.2};
  GammaSequence gamma = GammaSequence::Constant(800);
  int c = 40;
  PrivacyBudget budget{5.0, 2.5e-4};
  double s = 1.0;
  int k = 800;

  // Diagnostics for formula-collapse checks; not used by experiments.
  // Replaces the computed shift A.
  std::optional<double> shift_override;
  // PAPRIKA treats every hypothesis as a candidate and drops the (1 - 2 lambda)
  // factor, leaving the bare LORD rule plus noise.
  bool candidacy_disabled = false;

  // Throws std::invalid_argument naming the violated invariant.
  void Validate(ProcedureId id) const;
};

struct ProcedureState {
  int t = 0;
  std::vector<int> rejection_times;  // tau_1 < tau_2 < ...
  // candidate_counts[j] = C_{j+}: candidates strictly after tau_j (tau_0 = 0)
  // up to and including time t.
  std::vector<int> candidate_counts{0};
  int count = 0;
  double z_alpha = 0.0;
  double shift_a = 0.0;
  double eta = 0.0;
};

struct StepRecord {
  int t = 0;
  double lambda_t = 0.0;
  bool candidate = false;
  double alpha_t = 0.0;
  bool rejected = false;
  double noise_zt = 0.0;
  double noise_zalpha = 0.0;
};

// Appends the step outcome at time state.t + 1 to the bookkeeping.
void RecordOutcome(ProcedureState& state, bool candidate, bool rejected);

// Bracket of the SAFFRON rule at time t (the factor multiplying 1 - lambda_t):
//   W0 g(t - C0+) + (alpha - W0) g(t - tau1 - C1+) + sum_{j>=2} alpha g(t - tauj - Cj+).
double SaffronBracket(const ProcedureState& state, const ProcedureConfig& config, int t);

// Same without candidate adjustment: W0 g(t) + (alpha - W0) g(t - tau1) + ...
// This is also the LORD threshold.
double PaprikaBracket(const ProcedureState& state, const ProcedureConfig& config, int t);

// alpha_t = (1 - lambda_t) B, or B / (1 + B) under MatchAlpha.
double SaffronAlpha(const ProcedureState& state, const ProcedureConfig& config, int t);

// alpha_t = (1 - 2 lambda_t) B, or B / (1 + 2B) under MatchAlpha.
double PaprikaAlpha(const ProcedureState& state, const ProcedureConfig& config, int t);

// Sets up a fresh state. For the PAPRIKA family this computes A and draws
// the initial threshold noise Z_alpha^0 ~ Lap(2 eta c / eps) from rng.
ProcedureState InitState(ProcedureId id, const ProcedureConfig& config, double eta,
                         RandomSource& rng);

StepRecord StepSaffron(ProcedureState& state, const ProcedureConfig& config, double p);
StepRecord StepPaprika(ProcedureState& state, const ProcedureConfig& config, double p,
                       RandomSource& rng);
StepRecord StepLord(ProcedureState& state, const ProcedureConfig& config, double p);
// SAFFRON with lambda_t = alpha_t regardless of config.lambda.
StepRecord StepAlphaInvesting(ProcedureState& state, const ProcedureConfig& config, double p);

enum class SvtAnswer { kBelow, kAbove };

// SparseVector over a finite query list: threshold noise Lap(2 D c / eps),
// query noise Lap(4 D c / eps), threshold redrawn after every "above", and
// a halt after c "above" answers. The result holds one answer per query
// processed before the halt.
std::vector<SvtAnswer> SparseVector(std::span<const double> queries, double sensitivity,
                                    double threshold, int c, double epsilon,
                                    RandomSource& rng);

// Folds the procedure over the stream. The AI variants and alpha-investing
// force MatchAlpha; LapSAFFRON privatizes the stream with rng first and then
// runs SAFFRON. Throws if the stream is longer than config.k.
std::vector<StepRecord> RunProcedure(ProcedureId id, const ProcedureConfig& config,
                                     const HypothesisStream& stream, RandomSource& rng);

// Columns t,lambda_t,candidate,alpha_t,rejected,noise_zt,noise_zalpha with
// reals at 17 significant digits.
void WriteTranscriptCsv(std::span<const StepRecord> records, std::ostream& out);

}  // namespace paprika

#endif  // PAPRIKA_PROCEDURES_H_
