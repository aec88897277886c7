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

// Synthetic hypothesis streams with ground truth: Bernoulli features tested
// with exact binomial tails, truncated-exponential features tested with a
// normal approximation, and the naive Laplace privatization of p-values.

#ifndef PAPRIKA_PVALUE_MODELS_H_
#define PAPRIKA_PVALUE_MODELS_H_

#include <iosfwd>
#include <variant>
#include <vector>

#include "paprika/noise.h"
#include "paprika/random.h"

namespace paprika {

// Floor applied to p-values before logarithms are taken.
inline constexpr double kPValueFloor = 1e-300;

struct HypothesisStream {
  std::vector<double> pvalues;
  std::vector<bool> is_null;  // true when the null hypothesis holds
  double sensitivity_eta = 1.0;
  double sensitivity_mu = kPValueFloor;

  std::size_t size() const { return pvalues.size(); }

  // Throws std::invalid_argument on length mismatch, p-values outside
  // [0, 1], or non-positive eta.
  void Validate() const;
};

// n Bernoulli(theta) observations per feature; H0: theta <= 1/2.
struct BernoulliModel {
  int n = 1000;
  int k = 800;
  double pi1 = 0.05;
  double theta_alt = 0.75;

  void Validate() const;
};

// n truncated-exponential observations on [0, b] with density
// theta exp(-theta x) / (1 - exp(-b theta)); H0: theta = 1.
struct TruncExpModel {
  int n = 1000;
  int k = 800;
  double pi1 = 0.05;
  double b = 1.0;
  double theta_alt = 1.95;

  void Validate() const;
};

using StreamModel = std::variant<BernoulliModel, TruncExpModel>;

// Exact upper tail Pr(Binomial(n, 1/2) >= t). Log-sum-exp in extended
// precision over cumulative log-factorials. Throws if t is outside [0, n].
double BinomTailPValue(int n, int t);

struct Moments {
  double mean;
  double variance;
};

// Mean and variance of the truncated exponential. Only b == 1 is supported:
//   mean = 1/theta + 1/(1 - e^theta),
//   var  = 1/theta^2 - e^theta / (e^theta - 1)^2.
Moments TruncExpMoments(double theta, double b = 1.0);

enum class Tail { kUpper, kLower };

// Normal-approximation p-value of the sum of n null (theta = 1, b = 1)
// observations: the survival function at (t_sum - n mean) / sqrt(n var) for
// Tail::kUpper, the CDF for Tail::kLower. Clamped to [kPValueFloor, 1].
// Requires n >= 30.
double TruncExpPValue(int n, double t_sum, Tail tail = Tail::kUpper);

// Draws one stream. Each of the k features is non-null with probability
// pi1; its n observations are drawn and summed, and the p-value computed
// from the sum. Truncated-exponential alternatives have theta > 1 and thus
// smaller sums, so that model is tested with the lower tail. The stream
// carries eta = 1/sqrt(n) and mu = kPValueFloor.
HypothesisStream GenerateStream(const StreamModel& model, RandomSource& rng);

// Per-query budget under advanced composition across k queries:
// eps / sqrt(8 k ln(1/delta)).
double PerQueryEpsilon(const PrivacyBudget& budget, int k);

// Adds Lap(1 / PerQueryEpsilon) to every p-value and clamps to [0, 1].
// Null flags and sensitivity metadata pass through.
HypothesisStream LaplacePrivatizeStream(const HypothesisStream& stream,
                                        const PrivacyBudget& budget,
                                        RandomSource& rng);

// CSV with header "index,pvalue,is_null"; p-values at 17 significant digits
// so they round-trip exactly.
void WriteStreamCsv(const HypothesisStream& stream, std::ostream& out);
HypothesisStream ReadStreamCsv(std::istream& in, double eta, double mu);

}  // namespace paprika

#endif  // PAPRIKA_PVALUE_MODELS_H_
