// Copyright 2026 The Steer Authors
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

#include "steer/criteria.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "steer/loo.hpp"
#include "steer/states.hpp"

using namespace steer;

TEST(PurityCriterion, WernerAboveAndBelowThreshold) {
  const auto hi = purity_criterion(werner(0.8), Direction::AtoB);
  EXPECT_TRUE(hi.detected);
  EXPECT_NEAR(hi.margin, 3 * 0.64 / 4 + 0.25 - 0.5, 1e-12);
  EXPECT_NEAR(hi.margin, 0.23, 1e-12);
  EXPECT_EQ(hi.criterion, Criterion::Purity);
  EXPECT_EQ(hi.direction, Direction::AtoB);

  const auto lo = purity_criterion(werner(0.5), Direction::AtoB);
  EXPECT_FALSE(lo.detected);
  EXPECT_NEAR(lo.margin, -0.0625, 1e-12);
}

TEST(PurityCriterion, PureProductStateSitsOnBoundary) {
  const std::vector<double> d{1, 0, 0, 0};
  const auto rho = DensityMatrix::from(ComplexMatrix::diagonal(d), 2, 2);
  for (auto dir : {Direction::AtoB, Direction::BtoA}) {
    const auto v = purity_criterion(rho, dir);
    EXPECT_FALSE(v.detected);
    EXPECT_EQ(v.margin, 0.0);
    EXPECT_TRUE(v.boundary());
  }
}

TEST(PurityCriterion, StrictInequalityUsesTolerance) {
  // A margin inside the tolerance band is not a detection.
  const std::vector<double> d{1, 0, 0, 0};
  const auto rho = DensityMatrix::from(ComplexMatrix::diagonal(d), 2, 2);
  EXPECT_FALSE(purity_criterion(rho, Direction::AtoB, 0.0).detected);
  EXPECT_FALSE(purity_criterion(werner(0.8), Direction::AtoB, 0.5).detected);
}

TEST(PauliCorrelation, WernerSumIsThreePSquared) {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    const auto rho = werner(p);
    // Correlation tensor of the Werner state is diag(p, -p, p).
    const auto t = correlation_tensor(rho);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) EXPECT_NEAR(t[a][b], a != b ? 0.0 : (a == 1 ? -p : p), 1e-15);
    const auto v = lemma1_criterion(rho);
    EXPECT_NEAR(v.margin, 3 * p * p - 1, 1e-12);
    EXPECT_EQ(v.detected, p > 1 / std::sqrt(3.0));
    EXPECT_FALSE(v.direction.has_value());
  }
}

TEST(PauliCorrelation, BellAndMixed) {
  EXPECT_NEAR(lemma1_criterion(werner(1.0)).margin, 2.0, 1e-12);
  EXPECT_TRUE(lemma1_criterion(werner(1.0)).detected);
  const auto mixed = lemma1_criterion(werner(0.0));
  EXPECT_NEAR(mixed.margin, -1.0, 1e-15);
  EXPECT_FALSE(mixed.detected);
}

TEST(PauliCorrelation, RejectsNonQubitPairs) {
  EXPECT_THROW(lemma1_criterion(isotropic(0.5, 3)), std::invalid_argument);
  EXPECT_THROW(lemma1_criterion(random_density(2, 3, 1)), std::invalid_argument);
}

TEST(FullReport, AsymmetricStateWindows) {
  const auto r9 = full_report(asymmetric_noisy_singlet(0.9));
  EXPECT_TRUE(r9.a_to_b.detected);
  EXPECT_TRUE(r9.b_to_a.detected);
  EXPECT_TRUE(r9.entanglement_certified);

  const auto r6 = full_report(asymmetric_noisy_singlet(0.6));
  EXPECT_TRUE(r6.a_to_b.detected);
  EXPECT_FALSE(r6.b_to_a.detected);
  EXPECT_NEAR(r6.purity_joint, oracle::asym_joint_purity(0.6), 1e-12);
  EXPECT_NEAR(r6.purity_b, oracle::asym_purity_b(0.6), 1e-12);
  EXPECT_NEAR(r6.purity_a, oracle::asym_purity_a(0.6), 1e-12);
  ASSERT_TRUE(r6.lemma1.has_value());
}

TEST(FullReport, MaximallyMixedDetectsNothing) {
  const auto r = full_report(werner(0.0));
  EXPECT_FALSE(r.a_to_b.detected);
  EXPECT_FALSE(r.b_to_a.detected);
  EXPECT_FALSE(r.lemma1->detected);
  EXPECT_FALSE(r.entanglement_certified);
  EXPECT_NEAR(r.purity_joint, 0.25, 1e-15);
}

TEST(FullReport, LemmaOmittedBeyondQubits) {
  const auto r = full_report(free_entangled(0.9));
  EXPECT_FALSE(r.lemma1.has_value());
  EXPECT_TRUE(r.entanglement_certified);
  const auto j = to_json(r);
  EXPECT_TRUE(j["lemma1"].is_null());
}

TEST(FullReport, JsonShape) {
  const auto j = to_json(full_report(werner(0.8)));
  EXPECT_TRUE(j["a_to_b"]["detected"].get<bool>());
  EXPECT_DOUBLE_EQ(j["a_to_b"]["margin"].get<double>(), 0.23);
  EXPECT_TRUE(j["b_to_a"].contains("margin"));
  EXPECT_TRUE(j["lemma1"]["detected"].get<bool>());
  EXPECT_DOUBLE_EQ(j["purities"]["joint"].get<double>(), 0.73);
  EXPECT_DOUBLE_EQ(j["purities"]["a"].get<double>(), 0.5);
  EXPECT_TRUE(j["entanglement_certified"].get<bool>());
}

TEST(FullReport, TextRendersBoundary) {
  const std::vector<double> d{1, 0, 0, 0};
  const auto rho = DensityMatrix::from(ComplexMatrix::diagonal(d), 2, 2);
  const auto text = render_text(full_report(rho));
  EXPECT_NE(text.find("boundary (not detected)"), std::string::npos);
  EXPECT_NE(text.find("entanglement certified: no"), std::string::npos);
}

TEST(Properties, MarginEqualsLooRoute) {
  StateSampler s(101);
  for (int i = 0; i < 200; ++i) {
    const std::size_t da = 2 + i % 3, db = 2 + (i / 3) % 3;
    const auto rho = s.density(da, db);
    const double loo_margin = correlation_sum(rho) - marginal_sum(rho, Wing::B);
    EXPECT_NEAR(purity_criterion(rho, Direction::AtoB).margin, loo_margin, 1e-9);
    const double loo_margin_ba = correlation_sum(rho) - marginal_sum(rho, Wing::A);
    EXPECT_NEAR(purity_criterion(rho, Direction::BtoA).margin, loo_margin_ba, 1e-9);
  }
}

TEST(Properties, PureStateDichotomy) {
  StateSampler s(7);
  for (int i = 0; i < 500; ++i) {
    const std::size_t da = 2 + i % 3, db = 2 + (i / 3) % 3;
    const auto ent = s.pure(da, db, false);
    const double marg = purity(partial_trace(ent, Wing::A));
    ASSERT_LT(marg, 1 - 1e-9);  // Schmidt rank > 1 almost surely
    EXPECT_TRUE(purity_criterion(ent, Direction::AtoB).detected);
    EXPECT_TRUE(purity_criterion(ent, Direction::BtoA).detected);

    const auto prod = s.pure(da, db, true);
    EXPECT_NEAR(purity_criterion(prod, Direction::AtoB).margin, 0.0, 1e-9);
    EXPECT_NEAR(purity_criterion(prod, Direction::BtoA).margin, 0.0, 1e-9);
    EXPECT_FALSE(purity_criterion(prod, Direction::AtoB).detected);
  }
}

TEST(Properties, LocalUnitaryInvariance) {
  StateSampler s(8);
  for (int i = 0; i < 100; ++i) {
    const std::size_t da = 2 + i % 3, db = 2 + (i / 3) % 3;
    const auto rho = i % 2 ? s.density(da, db) : isotropic(0.3 + 0.005 * i, da);
    const std::size_t dbb = rho.dim_b();
    const auto u = kron(s.unitary(rho.dim_a()), s.unitary(dbb));
    auto m = u * rho.matrix() * u.adjoint();
    m = (m + m.adjoint()) * cplx{0.5, 0};
    const auto rotated = DensityMatrix::from(m, rho.dim_a(), dbb);
    for (auto dir : {Direction::AtoB, Direction::BtoA}) {
      const auto a = purity_criterion(rho, dir);
      const auto b = purity_criterion(rotated, dir);
      EXPECT_NEAR(a.margin, b.margin, 1e-9);
      EXPECT_EQ(a.detected, b.detected);
    }
  }
}

TEST(Properties, BellDiagonalCriteriaShareSign) {
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j)
      for (double c3 : {-0.8, -0.3, 0.0, 0.5}) {
        const double c1 = i / 10.0, c2 = j / 10.0;
        const auto r = validate(bell_diagonal_matrix(c1, c2, c3), 2, 2);
        if (!r.ok()) continue;
        const double sum = c1 * c1 + c2 * c2 + c3 * c3;
        const double lemma = lemma1_criterion(*r.state).margin;
        const double pur = purity_criterion(*r.state, Direction::AtoB).margin;
        EXPECT_NEAR(lemma, sum - 1, 1e-12);
        EXPECT_NEAR(pur, (1 + sum) / 4 - 0.5, 1e-12);
        EXPECT_NEAR(4 * pur, lemma, 1e-12);
      }
}
