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

#include "paprika/noise.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paprika {

LaplaceScale::LaplaceScale(double b) : b_(b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::invalid_argument("Laplace scale must be positive and finite, got " +
                                std::to_string(b));
  }
}

PrivacyBudget::PrivacyBudget(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive, got " +
                                std::to_string(epsilon));
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1), got " +
                                std::to_string(delta));
  }
}

double LaplaceQuantile(double b, double u) {
  if (u < 0.5) return b * std::log(2.0 * u);
  return -b * std::log(2.0 * (1.0 - u));
}

double LaplaceCdf(double b, double x) {
  if (x < 0.0) return 0.5 * std::exp(x / b);
  return 1.0 - 0.5 * std::exp(-x / b);
}

double SampleLaplace(const LaplaceScale& scale, RandomSource& rng) {
  return LaplaceQuantile(scale.value(), rng.Uniform());
}

double ProbShiftDominates(double b, double c) {
  if (!(b > 0.0)) throw std::invalid_argument("b must be positive");
  if (!(c >= 0.0)) throw std::invalid_argument("C must be nonnegative");
  if (std::isinf(c)) return 1.0;
  return 1.0 - (2.0 / 3.0) * std::exp(-c / (2.0 * b)) +
         (1.0 / 6.0) * std::exp(-c / b);
}

double ShiftFailureMass(const PrivacyBudget& budget, int k) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  // 1 - exp((log(1 - delta) - eps) / k), via expm1 to keep precision when
  // the exponent is tiny.
  const double exponent =
      (std::log1p(-budget.delta()) - budget.epsilon()) / static_cast<double>(k);
  const double per_step = -std::expm1(exponent);
  return std::min(budget.delta(), per_step);
}

namespace {

void CheckShiftArgs(int c, double eta, const PrivacyBudget& budget, int k) {
  if (c <= 0) throw std::invalid_argument("rejection cap c must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (k <= 0) throw std::invalid_argument("k must be positive");
  if (!(budget.delta() > 0.0)) {
    throw std::invalid_argument(
        "delta must be positive for the shift (min{...} would be 0)");
  }
}

}  // namespace

double ComputeShift(double s, int c, double eta, const PrivacyBudget& budget,
                    int k) {
  if (!(s > 0.0)) throw std::invalid_argument("shift magnitude s must be positive");
  CheckShiftArgs(c, eta, budget, k);
  const double mass = ShiftFailureMass(budget, k);
  return s * c * eta / budget.epsilon() * std::log(2.0 / (3.0 * mass));
}

double ProofShiftBound(int c, double eta, const PrivacyBudget& budget, int k) {
  CheckShiftArgs(c, eta, budget, k);
  const double mass = ShiftFailureMass(budget, k);
  return 4.0 * eta * c / budget.epsilon() *
         (std::log(2.0 / (3.0 * mass)) - std::numbers::ln2 + eta);
}

}  // namespace paprika
