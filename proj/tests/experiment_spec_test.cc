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

#include "paprika/experiment_spec.h"

#include <string>

#include "gtest/gtest.h"

namespace paprika {
namespace {

TEST(ParseSpecTest, MinimalDocumentGetsDefaults) {
  const ExperimentSpec spec = ParseSpec("model = bernoulli\n");
  EXPECT_EQ(spec.model, ModelKind::kBernoulli);
  EXPECT_EQ(spec.alpha, 0.2);
  EXPECT_EQ(spec.delta, 2.5e-4);
  EXPECT_EQ(spec.c, 40);
  EXPECT_EQ(spec.InitialWealth(), 0.1);
  EXPECT_EQ(spec.k, 800);
  EXPECT_EQ(spec.n, 1000);
  EXPECT_EQ(spec.trials, 100);
  EXPECT_EQ(spec.paprika_lambda, 0.2);
  EXPECT_EQ(spec.saffron_lambda, 0.5);
  EXPECT_EQ(spec.ThetaAltGrid(), std::vector<double>{0.75});
  EXPECT_EQ(ParseSpec("model = trunc_exp").ThetaAltGrid(), std::vector<double>{1.95});
  EXPECT_EQ(spec.procedures.size(), 7u);
  EXPECT_TRUE(spec.paired);
}

TEST(ParseSpecTest, FullDocument) {
  const ExperimentSpec spec = ParseSpec(R"(
# shift study
[experiment]
name = shift
model = trunc_exp
pi1_grid = [0.02]
epsilon_grid = [5]
s_grid = [0.5..2 step 0.5]
theta_alt_grid = [1.9, 1.95, 2.0]
procedures = [paprika, paprika_ai]   # private only
trials = 10
seed = 7
w0 = 0.05
paired = false
)");
  EXPECT_EQ(spec.name, "shift");
  EXPECT_EQ(spec.model, ModelKind::kTruncExp);
  EXPECT_EQ(spec.s_grid, (std::vector<double>{0.5, 1.0, 1.5, 2.0}));
  EXPECT_EQ(spec.theta_alt_grid, (std::vector<double>{1.9, 1.95, 2.0}));
  EXPECT_EQ(spec.procedures, (std::vector{ProcedureId::kPaprika, ProcedureId::kPaprikaAi}));
  EXPECT_EQ(spec.trials, 10);
  EXPECT_EQ(spec.master_seed, 7u);
  EXPECT_EQ(spec.InitialWealth(), 0.05);
  EXPECT_FALSE(spec.paired);
}

TEST(ParseSpecTest, RangeSnapsToDecimalGrid) {
  const ExperimentSpec spec = ParseSpec("model = bernoulli\npi1_grid = [0.01..0.05 step 0.01]\n");
  EXPECT_EQ(spec.pi1_grid, (std::vector<double>{0.01, 0.02, 0.03, 0.04, 0.05}));
}

TEST(ParseSpecTest, SerializeRoundTrip) {
  ExperimentSpec spec = ParseSpec(
      "model = trunc_exp\npi1_grid = [0.01..0.05 step 0.01]\nepsilon_grid = [3, 5, 10]\n"
      "theta_alt_grid = [1.9, 2]\nprocedures = [lord, saffron]\nseed = 18446744073709551615\n"
      "gamma = power\ngamma_exponent = 1.25\n");
  const std::string text = SerializeSpec(spec);
  const ExperimentSpec back = ParseSpec(text);
  EXPECT_EQ(SerializeSpec(back), text);
  EXPECT_EQ(back.pi1_grid, spec.pi1_grid);
  EXPECT_EQ(back.theta_alt_grid, spec.theta_alt_grid);
  EXPECT_EQ(back.procedures, spec.procedures);
  EXPECT_EQ(back.master_seed, 18446744073709551615ULL);
  EXPECT_EQ(back.gamma, "power");
  EXPECT_EQ(back.gamma_exponent, 1.25);
}

TEST(ParseSpecTest, ZeroTrialsNamesInvariant) {
  try {
    ParseSpec("model = bernoulli\ntrials = 0\n");
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("trials >= 1"), std::string::npos) << e.what();
  }
}

TEST(ParseSpecTest, UnknownKeyCarriesLineNumber) {
  try {
    ParseSpec("model = bernoulli\n\n# comment\ntrails = 100\n");
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 4);
    const std::string what = e.what();
    EXPECT_NE(what.find("line 4"), std::string::npos) << what;
    EXPECT_NE(what.find("trails"), std::string::npos) << what;
  }
}

TEST(ParseSpecTest, OtherErrors) {
  EXPECT_THROW(ParseSpec("pi1_grid = [0.1]\n"), SpecError);  // model missing
  EXPECT_THROW(ParseSpec("model = bernoulli\nmodel = trunc_exp\n"), SpecError);
  EXPECT_THROW(ParseSpec("model = poisson\n"), SpecError);
  EXPECT_THROW(ParseSpec("model = bernoulli\npi1_grid = []\n"), SpecError);
  EXPECT_THROW(ParseSpec("model = bernoulli\npi1_grid = [0.1, 1.5]\n"), SpecError);
  EXPECT_THROW(ParseSpec("model = bernoulli\nprocedures = [lord++]\n"), SpecError);
  EXPECT_THROW(ParseSpec("model = bernoulli\ntrials = ten\n"), SpecError);
  EXPECT_THROW(ParseSpec("model = bernoulli\nno equals sign\n"), SpecError);
  EXPECT_THROW(ParseSpec("model = bernoulli\npaprika_lambda = 0.5\n"), SpecError);
  EXPECT_THROW(ParseSpec("model = bernoulli\nw0 = 0.3\n"), SpecError);
}

TEST(TableSpecTest, MatchesExperimentGrid) {
  const ExperimentSpec t1 = TableSpec(ModelKind::kBernoulli);
  EXPECT_EQ(t1.name, "table1");
  EXPECT_EQ(t1.pi1_grid.size(), 5u);
  EXPECT_EQ(t1.epsilon_grid, (std::vector<double>{3.0, 5.0, 10.0}));
  EXPECT_EQ(t1.trials, 100);
  EXPECT_EQ(TableSpec(ModelKind::kTruncExp).name, "table2");
}

}  // namespace
}  // namespace paprika
