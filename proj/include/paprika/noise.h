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

// Laplace noise and the threshold shift of the private procedure.

#ifndef PAPRIKA_NOISE_H_
#define PAPRIKA_NOISE_H_

#include "paprika/random.h"

namespace paprika {

// Scale b of the Laplace density (1/2b) exp(-|x|/b). Always positive.
class LaplaceScale {
 public:
  explicit LaplaceScale(double b);
  double value() const { return b_; }

 private:
  double b_;
};

// (epsilon, delta) differential-privacy budget.
class PrivacyBudget {
 public:
  PrivacyBudget(double epsilon, double delta);
  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

 private:
  double epsilon_;
  double delta_;
};

// Draws Lap(b) by inverting the CDF at a single uniform draw, so identical
// uniform streams give identical noise.
double SampleLaplace(const LaplaceScale& scale, RandomSource& rng);

// Inverse Laplace CDF at u in (0, 1).
double LaplaceQuantile(double b, double u);

// Laplace CDF.
double LaplaceCdf(double b, double x);

// Pr(Z1 >= Z2 - C) for Z1 ~ Lap(2b), Z2 ~ Lap(b):
//   1 - (2/3) exp(-C / 2b) + (1/6) exp(-C / b).
// Requires b > 0 and C >= 0.
double ProbShiftDominates(double b, double c);

// Threshold shift subtracted from log alpha_t:
//   A = (s c eta / eps) * log(2 / (3 min{delta, 1 - ((1 - delta) / e^eps)^(1/k)})).
// Natural log throughout. Throws std::invalid_argument if any argument is
// non-positive, including delta == 0.
double ComputeShift(double s, int c, double eta, const PrivacyBudget& budget,
                    int k);

// The smallest shift for which the privacy argument goes through:
//   (4 eta c / eps) * (log(2 / (3 min{...})) - log 2 + eta).
// Exposed for comparison; the procedures use ComputeShift.
double ProofShiftBound(int c, double eta, const PrivacyBudget& budget, int k);

// min{delta, 1 - ((1 - delta) / e^eps)^(1/k)}, evaluated without
// cancellation.
double ShiftFailureMass(const PrivacyBudget& budget, int k);

}  // namespace paprika

#endif  // PAPRIKA_NOISE_H_
