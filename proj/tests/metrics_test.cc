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

#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "paprika/random.h"
#include "test_support.h"

namespace paprika {
namespace {

std::vector<StepRecord> Rejections(int n, std::initializer_list<int> rejected_times) {
  std::vector<StepRecord> records(n);
  for (int i = 0; i < n; ++i) records[i].t = i + 1;
  for (int t : rejected_times) {
    records[t - 1].rejected = true;
    records[t - 1].candidate = true;
  }
  return records;
}

std::vector<bool> NullsExcept(int n, std::initializer_list<int> non_null_times) {
  std::vector<bool> flags(n, true);
  for (int t : non_null_times) flags[t - 1] = false;
  return flags;
}

TEST(FdpTest, Examples) {
  // Rejections at {1, 3}; only t = 1 is null.
  EXPECT_EQ(Fdp(Rejections(4, {1, 3}), NullsExcept(4, {2, 3, 4})), 0.5);
  EXPECT_EQ(Fdp(Rejections(4, {}), NullsExcept(4, {})), 0.0);
  EXPECT_EQ(Fdp(Rejections(4, {2, 4}), NullsExcept(4, {1})), 1.0);
  EXPECT_THROW(Fdp(Rejections(3, {}), NullsExcept(4, {})), std::invalid_argument);
}

TEST(PowerTest, Examples) {
  EXPECT_EQ(Power(Rejections(5, {3}), NullsExcept(5, {3, 5})), 0.5);
  EXPECT_EQ(Power(Rejections(5, {1, 3, 5}), NullsExcept(5, {3, 5})), 1.0);
  EXPECT_EQ(Power(Rejections(5, {}), NullsExcept(5, {3, 5})), 0.0);
  EXPECT_THROW(Power(Rejections(5, {1}), NullsExcept(5, {})), std::invalid_argument);
}

TEST(SummarizeTest, CountsAndOptionalPower) {
  const TrialSummary s = Summarize(Rejections(6, {1, 2, 6}), NullsExcept(6, {2}));
  EXPECT_EQ(s.rejections, 3);
  EXPECT_EQ(s.false_rejections, 2);
  EXPECT_DOUBLE_EQ(s.fdp, 2.0 / 3.0);
  EXPECT_EQ(s.power, 1.0);
  EXPECT_FALSE(Summarize(Rejections(2, {}), NullsExcept(2, {})).power.has_value());
}

TEST(FdpHatTest, AllCandidatesGiveZero) {
  auto records = Rejections(5, {2, 4});
  for (auto& r : records) {
    r.candidate = true;
    r.alpha_t = 0.01;
    r.lambda_t = 0.5;
  }
  for (double v : FdpHat(records, FdpHatVariant::kSaffron)) EXPECT_EQ(v, 0.0);
}

TEST(FdpHatTest, SingleNonCandidateStep) {
  StepRecord r{1, 0.5, false, 6.25e-5, false, 0, 0};
  EXPECT_DOUBLE_EQ(FdpHat(std::span(&r, 1), FdpHatVariant::kSaffron)[0], 1.25e-4);
}

TEST(FdpHatTest, ScriptedTranscript) {
  // alpha_t = 0.01 t; candidates at 2, 3, 6, 8; rejections at 3 and 6.
  auto make = [](double lambda) {
    std::vector<StepRecord> records(10);
    for (int i = 0; i < 10; ++i) {
      records[i] = StepRecord{i + 1, lambda, false, 0.01 * (i + 1), false, 0, 0};
    }
    for (int t : {2, 3, 6, 8}) records[t - 1].candidate = true;
    for (int t : {3, 6}) records[t - 1].rejected = true;
    return records;
  };
  // Non-candidate alphas accumulate to .01 .01 .01 .05 .10 .10 .17 .17 .26 .36
  // and the denominator is 1 through t = 5, then 2.
  const double saffron[] = {0.02, 0.02, 0.02, 0.10, 0.20, 0.10, 0.17, 0.17, 0.26, 0.36};
  const double paprika[] = {0.01 / 0.6, 0.01 / 0.6, 0.01 / 0.6, 0.05 / 0.6, 0.10 / 0.6,
                            0.05 / 0.6, 0.085 / 0.6, 0.085 / 0.6, 0.13 / 0.6, 0.18 / 0.6};
  const auto s = FdpHat(make(0.5), FdpHatVariant::kSaffron);
  const auto p = FdpHat(make(0.2), FdpHatVariant::kPaprika);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(s[i], saffron[i], 1e-15) << "t=" << i + 1;
    EXPECT_NEAR(p[i], paprika[i], 1e-15) << "t=" << i + 1;
  }
}

TEST(WealthTraceTest, PureSpendingDecreases) {
  ProcedureConfig cfg;
  Rng rng(1);
  HypothesisStream s;
  s.pvalues.assign(200, 0.99);
  s.is_null.assign(200, true);
  s.sensitivity_eta = 0.03;
  for (ProcedureId id : {ProcedureId::kPaprika, ProcedureId::kLord, ProcedureId::kSaffronAi}) {
    const auto records = RunProcedure(id, cfg, s, rng);
    const auto trace = WealthTrace(records, cfg, WealthRuleFor(id));
    EXPECT_LT(trace[0], cfg.w0);
    for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LT(trace[i], trace[i - 1]);
  }
}

TEST(WealthTraceTest, JumpsExactlyAtRejections) {
  ProcedureConfig cfg;
  Rng rng(2);
  const auto s = GenerateStream(BernoulliModel{1000, 800, 0.05, 0.75}, rng);
  for (ProcedureId id : {ProcedureId::kPaprika, ProcedureId::kSaffron, ProcedureId::kLord}) {
    ProcedureConfig c = cfg;
    if (id == ProcedureId::kSaffron) c.lambda = ConstantLambda{0.5};
    const auto records = RunProcedure(id, c, s, rng);
    const auto trace = WealthTrace(records, c, WealthRuleFor(id));
    double prev = c.w0;
    int jumps = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      EXPECT_EQ(trace[i] > prev, records[i].rejected) << ProcedureName(id) << " t=" << i + 1;
      jumps += records[i].rejected ? 1 : 0;
      prev = trace[i];
    }
    EXPECT_GT(jumps, 0);
  }
}

TEST(WealthTraceTest, NeverNegativeOnRandomConfigs) {
  Rng rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const auto rc = testing::MakeRandomCase(rng);
    for (ProcedureId id : {ProcedureId::kPaprika, ProcedureId::kPaprikaAi,
                           ProcedureId::kSaffron, ProcedureId::kSaffronAi, ProcedureId::kLord}) {
      const bool paprika = id == ProcedureId::kPaprika || id == ProcedureId::kPaprikaAi;
      const ProcedureConfig& cfg = paprika ? rc.paprika : rc.saffron;
      const auto records = RunProcedure(id, cfg, rc.stream, rng);
      for (double w : WealthTrace(records, cfg, WealthRuleFor(id))) {
        EXPECT_GE(w, -1e-12) << "rep " << rep << " " << ProcedureName(id);
      }
    }
  }
}

TEST(AggregateTest, SingleTrial) {
  const TrialSummary t{0.25, 0.75, 4, 1};
  const AggregateSummary a = Aggregate(std::span(&t, 1));
  EXPECT_EQ(a.trials, 1);
  EXPECT_EQ(a.mean_fdr, 0.25);
  EXPECT_EQ(a.mean_power, 0.75);
  EXPECT_EQ(a.se_fdr, 0.0);
  EXPECT_EQ(a.mean_rejections, 4.0);
  EXPECT_EQ(a.mfdr, 0.25);
}

TEST(AggregateTest, TwoTrials) {
  const std::vector<TrialSummary> trials = {{0.0, 1.0, 3, 0}, {1.0, 0.0, 1, 1}};
  const AggregateSummary a = Aggregate(trials);
  EXPECT_EQ(a.mean_fdr, 0.5);
  EXPECT_DOUBLE_EQ(a.se_fdr, 0.5);
  EXPECT_EQ(a.mean_power, 0.5);
  // Ratio of sums, not mean of ratios.
  EXPECT_EQ(a.mfdr, 0.25);
}

TEST(AggregateTest, PowerSkipsUndefinedTrialsAndMfdrNeedsRejections) {
  const std::vector<TrialSummary> trials = {{0.0, std::nullopt, 0, 0}, {0.0, 0.5, 0, 0}};
  const AggregateSummary a = Aggregate(trials);
  EXPECT_EQ(a.power_trials, 1);
  EXPECT_EQ(a.mean_power, 0.5);
  EXPECT_FALSE(a.mfdr.has_value());
  EXPECT_THROW(Aggregate(std::vector<TrialSummary>{}), std::invalid_argument);
}

TEST(AggregateTest, MfdrIsRatioOfSumsOnRandomTrials) {
  Rng rng(4);
  std::vector<TrialSummary> trials;
  long total = 0, total_false = 0;
  for (int i = 0; i < 50; ++i) {
    TrialSummary t;
    t.rejections = testing::IntIn(rng, 0, 20);
    t.false_rejections = testing::IntIn(rng, 0, t.rejections);
    t.fdp = static_cast<double>(t.false_rejections) / std::max(t.rejections, 1);
    total += t.rejections;
    total_false += t.false_rejections;
    trials.push_back(t);
  }
  EXPECT_EQ(*Aggregate(trials).mfdr, static_cast<double>(total_false) / total);
}

}  // namespace
}  // namespace paprika
