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

#include "paprika/pvalue_models.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace paprika {

void HypothesisStream::Validate() const {
  if (pvalues.size() != is_null.size()) {
    throw std::invalid_argument("stream p-values and null flags differ in length");
  }
  for (double p : pvalues) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("p-value outside [0, 1]: " + std::to_string(p));
    }
  }
  if (!(sensitivity_eta > 0.0)) {
    throw std::invalid_argument("stream sensitivity eta must be positive");
  }
}

namespace {

void CheckCommon(int n, int k, double pi1) {
  if (n <= 0) throw std::invalid_argument("model n must be positive");
  if (k <= 0) throw std::invalid_argument("model k must be positive");
  if (!(pi1 >= 0.0 && pi1 <= 1.0)) {
    throw std::invalid_argument("pi1 must lie in [0, 1]");
  }
}

// ln(j!) for j = 0..n, accumulated in extended precision and cached per
// thread.
const std::vector<long double>& LogFactorials(int n) {
  thread_local std::vector<long double> table{0.0L};
  while (static_cast<int>(table.size()) <= n) {
    const auto j = static_cast<long double>(table.size());
    table.push_back(table.back() + std::log(j));
  }
  return table;
}

double NormalSurvival(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace

void BernoulliModel::Validate() const {
  CheckCommon(n, k, pi1);
  if (!(theta_alt > 0.5 && theta_alt <= 1.0)) {
    throw std::invalid_argument("Bernoulli theta_alt must lie in (0.5, 1]");
  }
}

void TruncExpModel::Validate() const {
  CheckCommon(n, k, pi1);
  if (!(b > 0.0)) throw std::invalid_argument("truncation point b must be positive");
  if (!(theta_alt > 1.0)) {
    throw std::invalid_argument("truncated-exponential theta_alt must exceed 1");
  }
}

double BinomTailPValue(int n, int t) {
  if (n <= 0) throw std::invalid_argument("binomial n must be positive");
  if (t < 0 || t > n) {
    throw std::invalid_argument("binomial tail index " + std::to_string(t) +
                                " outside [0, " + std::to_string(n) + "]");
  }
  const auto& lf = LogFactorials(n);
  const long double log_half_n = -static_cast<long double>(n) * std::numbers::ln2_v<long double>;
  auto log_term = [&](int j) { return lf[n] - lf[j] - lf[n - j] + log_half_n; };

  // Terms are unimodal with mode n/2, so the largest term in the tail sits
  // at max(t, n/2).
  const long double peak = log_term(std::max(t, n / 2));
  long double sum = 0.0L;
  for (int j = t; j <= n; ++j) sum += std::exp(log_term(j) - peak);
  const long double result = std::exp(peak + std::log(sum));
  return static_cast<double>(std::min(result, 1.0L));
}

Moments TruncExpMoments(double theta, double b) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (b != 1.0) {
    throw std::invalid_argument("truncated-exponential moments are only available for b = 1");
  }
  // e^theta - 1 via expm1 keeps small theta accurate.
  const double em1 = std::expm1(theta);
  const double mean = 1.0 / theta - 1.0 / em1;
  const double variance = 1.0 / (theta * theta) - (em1 + 1.0) / (em1 * em1);
  return {mean, variance};
}

double TruncExpPValue(int n, double t_sum, Tail tail) {
  if (n < 30) {
    throw std::invalid_argument("normal approximation needs n >= 30, got " +
                                std::to_string(n));
  }
  const Moments null_moments = TruncExpMoments(1.0);
  const double z = (t_sum - n * null_moments.mean) /
                   std::sqrt(n * null_moments.variance);
  const double p = tail == Tail::kUpper ? NormalSurvival(z) : NormalSurvival(-z);
  return std::clamp(p, kPValueFloor, 1.0);
}

namespace {

struct StreamGenerator {
  RandomSource& rng;

  HypothesisStream operator()(const BernoulliModel& m) const {
    m.Validate();
    HypothesisStream stream = Start(m.n, m.k);
    for (int i = 0; i < m.k; ++i) {
      const bool alt = rng.Uniform() < m.pi1;
      const double theta = alt ? m.theta_alt : 0.5;
      int successes = 0;
      for (int j = 0; j < m.n; ++j) successes += rng.Uniform() < theta ? 1 : 0;
      stream.pvalues.push_back(std::max(BinomTailPValue(m.n, successes), kPValueFloor));
      stream.is_null.push_back(!alt);
    }
    return stream;
  }

  HypothesisStream operator()(const TruncExpModel& m) const {
    m.Validate();
    HypothesisStream stream = Start(m.n, m.k);
    for (int i = 0; i < m.k; ++i) {
      const bool alt = rng.Uniform() < m.pi1;
      const double theta = alt ? m.theta_alt : 1.0;
      // Inverse CDF: x = -ln(1 - u (1 - e^{-theta b})) / theta.
      const double mass = -std::expm1(-theta * m.b);
      double sum = 0.0;
      for (int j = 0; j < m.n; ++j) {
        sum += -std::log1p(-rng.Uniform() * mass) / theta;
      }
      stream.pvalues.push_back(TruncExpPValue(m.n, sum, Tail::kLower));
      stream.is_null.push_back(!alt);
    }
    return stream;
  }

  static HypothesisStream Start(int n, int k) {
    HypothesisStream stream;
    stream.pvalues.reserve(k);
    stream.is_null.reserve(k);
    stream.sensitivity_eta = 1.0 / std::sqrt(static_cast<double>(n));
    stream.sensitivity_mu = kPValueFloor;
    return stream;
  }
};

}  // namespace

HypothesisStream GenerateStream(const StreamModel& model, RandomSource& rng) {
  return std::visit(StreamGenerator{rng}, model);
}

double PerQueryEpsilon(const PrivacyBudget& budget, int k) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  if (!(budget.delta() > 0.0)) {
    throw std::invalid_argument("advanced composition needs delta > 0");
  }
  return budget.epsilon() / std::sqrt(8.0 * k * std::log(1.0 / budget.delta()));
}

HypothesisStream LaplacePrivatizeStream(const HypothesisStream& stream,
                                        const PrivacyBudget& budget,
                                        RandomSource& rng) {
  HypothesisStream out = stream;
  if (stream.size() == 0) return out;
  const LaplaceScale scale(
      1.0 / PerQueryEpsilon(budget, static_cast<int>(stream.size())));
  for (double& p : out.pvalues) {
    p = std::clamp(p + SampleLaplace(scale, rng), 0.0, 1.0);
  }
  return out;
}

void WriteStreamCsv(const HypothesisStream& stream, std::ostream& out) {
  stream.Validate();
  out << "index,pvalue,is_null\n";
  char buf[64];
  for (std::size_t i = 0; i < stream.size(); ++i) {
    auto res = std::to_chars(buf, buf + sizeof(buf), stream.pvalues[i],
                             std::chars_format::general, 17);
    out << (i + 1) << ',' << std::string_view(buf, res.ptr - buf) << ','
        << (stream.is_null[i] ? 1 : 0) << '\n';
  }
}

HypothesisStream ReadStreamCsv(std::istream& in, double eta, double mu) {
  HypothesisStream stream;
  stream.sensitivity_eta = eta;
  stream.sensitivity_mu = mu;
  std::string line;
  if (!std::getline(in, line) || line != "index,pvalue,is_null") {
    throw std::invalid_argument("stream CSV must start with header index,pvalue,is_null");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string index, pvalue, null_flag;
    if (!std::getline(fields, index, ',') || !std::getline(fields, pvalue, ',') ||
        !std::getline(fields, null_flag)) {
      throw std::invalid_argument("malformed stream CSV line " + std::to_string(line_no));
    }
    double p = 0.0;
    auto res = std::from_chars(pvalue.data(), pvalue.data() + pvalue.size(), p);
    if (res.ec != std::errc() || (null_flag != "0" && null_flag != "1")) {
      throw std::invalid_argument("malformed stream CSV line " + std::to_string(line_no));
    }
    stream.pvalues.push_back(p);
    stream.is_null.push_back(null_flag == "1");
  }
  stream.Validate();
  return stream;
}

}  // namespace paprika
