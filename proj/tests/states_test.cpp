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

#include "steer/states.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "steer/loo.hpp"

using namespace steer;

namespace {

ComplexMatrix scaled_identity(std::size_t n) {
  return ComplexMatrix::identity(n) * cplx{1.0 / static_cast<double>(n), 0};
}

}  // namespace

TEST(Werner, Endpoints) {
  EXPECT_LE(werner(0.0).matrix().max_abs_diff(scaled_identity(4)), 1e-16);
  const auto bell = werner(1.0).matrix();
  EXPECT_NEAR(bell(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(bell(0, 3).real(), 0.5, 1e-15);
  EXPECT_NEAR(bell(3, 3).real(), 0.5, 1e-15);
  EXPECT_NEAR(purity(werner(1.0)), 1.0, 1e-15);
  EXPECT_THROW(werner(-0.01), std::out_of_range);
  EXPECT_THROW(werner(1.01), std::out_of_range);
}

TEST(BellDiagonal, CorrelationsAndPurity) {
  EXPECT_LE(bell_diagonal(0, 0, 0).matrix().max_abs_diff(scaled_identity(4)), 1e-16);
  const double c[] = {0.3, -0.4, 0.2};
  const auto rho = bell_diagonal(c[0], c[1], c[2]);
  for (int j = 1; j <= 3; ++j) {
    EXPECT_NEAR(expectation(rho.matrix(), kron(pauli(j), pauli(j))), c[j - 1], 1e-15);
  }
  EXPECT_NEAR(purity(rho), (1 + 0.09 + 0.16 + 0.04) / 4, 1e-15);
}

TEST(BellDiagonal, CornerIsBellState) {
  const auto rho = bell_diagonal(1, -1, 1);
  EXPECT_LE(rho.matrix().max_abs_diff(werner(1.0).matrix()), 1e-15);
  const auto e = hermitian_eigenvalues(rho.matrix());
  EXPECT_NEAR(e[3], 1.0, 1e-12);
  EXPECT_NEAR(e[0], 0.0, 1e-12);
}

TEST(BellDiagonal, AcceptanceRegionIsTetrahedron) {
  int accepted = 0, rejected = 0;
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j)
      for (int k = -10; k <= 10; ++k) {
        const double c1 = i / 10.0, c2 = j / 10.0, c3 = k / 10.0;
        const auto eig = bell_diagonal_eigenvalues(c1, c2, c3);
        const bool physical = std::all_of(eig.begin(), eig.end(), [](double x) { return x >= -1e-9; });
        bool ok = true;
        try {
          bell_diagonal(c1, c2, c3);
        } catch (const InvalidStateError& e) {
          ok = false;
          ASSERT_EQ(e.violations().back().kind, ViolationKind::PositiveSemidefinite);
          const double min_eig = *std::min_element(eig.begin(), eig.end());
          EXPECT_NEAR(e.violations().back().residual, min_eig, 1e-12);
        }
        ASSERT_EQ(ok, physical) << c1 << "," << c2 << "," << c3;
        (ok ? accepted : rejected)++;
      }
  EXPECT_GT(accepted, 0);
  EXPECT_GT(rejected, 0);
  EXPECT_THROW(bell_diagonal(1.5, 0, 0), std::out_of_range);
}

TEST(AsymmetricNoisySinglet, Endpoints) {
  const auto singlet = asymmetric_noisy_singlet(1.0);
  EXPECT_LE(partial_trace(singlet, Wing::A).matrix.max_abs_diff(scaled_identity(2)), 1e-15);
  EXPECT_LE(partial_trace(singlet, Wing::B).matrix.max_abs_diff(scaled_identity(2)), 1e-15);
  const auto noise = asymmetric_noisy_singlet(0.0);
  const std::vector<double> d{2.0 / 3, 1.0 / 3, 0, 0};
  EXPECT_LE(noise.matrix().max_abs_diff(ComplexMatrix::diagonal(d)), 1e-16);
  EXPECT_NEAR(purity(noise), 5.0 / 9, 1e-15);
}

TEST(AsymmetricNoisySinglet, ClosedFormPurities) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const auto rho = asymmetric_noisy_singlet(p);
    EXPECT_NEAR(purity(rho), oracle::asym_joint_purity(p), 1e-12);
    EXPECT_NEAR(purity(partial_trace(rho, Wing::A)), oracle::asym_purity_b(p), 1e-12);
    EXPECT_NEAR(purity(partial_trace(rho, Wing::B)), oracle::asym_purity_a(p), 1e-12);
  }
  const auto rho = asymmetric_noisy_singlet(0.6);
  EXPECT_NEAR(purity(rho), 0.528889, 1e-6);
  EXPECT_NEAR(purity(partial_trace(rho, Wing::A)), 0.508889, 1e-6);
}

TEST(Isotropic, ClosedFormsAndQubitCase) {
  for (std::size_t d = 2; d <= 6; ++d) {
    const double dd = static_cast<double>(d);
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      const auto rho = isotropic(p, d);
      EXPECT_NEAR(purity(rho), (dd * dd - 1) * p * p / (dd * dd) + 1 / (dd * dd), 1e-12);
      EXPECT_NEAR(purity(partial_trace(rho, Wing::A)), 1 / dd, 1e-12);
      EXPECT_NEAR(purity(partial_trace(rho, Wing::B)), 1 / dd, 1e-12);
    }
  }
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    EXPECT_LE(isotropic(p, 2).matrix().max_abs_diff(werner(p).matrix()), 1e-12);
  }
  EXPECT_THROW(isotropic(0.5, 1), std::out_of_range);
  EXPECT_THROW(isotropic(2.0, 3), std::out_of_range);
}

TEST(FreeEntangled, ClosedForms) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const auto rho = free_entangled(p);
    EXPECT_EQ(rho.dim_a(), 3u);
    EXPECT_NEAR(purity(rho), 4 * p * p / 3 - 2 * p / 3 + 1.0 / 3, 1e-12);
    EXPECT_NEAR(purity(partial_trace(rho, Wing::A)), 1.0 / 3, 1e-12);
  }
  const auto sigma = free_entangled(0.0).matrix();
  EXPECT_NEAR(sigma(1, 1).real(), 1.0 / 3, 1e-16);  // |01>
  EXPECT_NEAR(sigma(5, 5).real(), 1.0 / 3, 1e-16);  // |12>
  EXPECT_NEAR(sigma(6, 6).real(), 1.0 / 3, 1e-16);  // |20>
  EXPECT_NEAR(purity(free_entangled(0.0)), 1.0 / 3, 1e-15);
  EXPECT_THROW(free_entangled(-0.5), std::out_of_range);
}

TEST(Families, ValidAcrossGrid) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    for (Family f : {Family::Werner, Family::AsymmetricNoisySinglet, Family::Isotropic,
                     Family::FreeEntangled, Family::BellDiagonal}) {
      FamilySpec spec{f, p, {1, -1, 1}, 4};
      EXPECT_NO_THROW(spec.state()) << to_string(f) << " p=" << p;
    }
  }
}

TEST(Families, NamesRoundTrip) {
  for (Family f : {Family::Werner, Family::BellDiagonal, Family::AsymmetricNoisySinglet,
                   Family::Isotropic, Family::FreeEntangled}) {
    EXPECT_EQ(parse_family(to_string(f)), f);
  }
  EXPECT_FALSE(parse_family("ghz").has_value());
}

TEST(RandomDensity, DeterministicPerSeed) {
  EXPECT_EQ(random_density(3, 2, 42).matrix(), random_density(3, 2, 42).matrix());
  EXPECT_NE(random_density(3, 2, 42).matrix(), random_density(3, 2, 43).matrix());
  StateSampler a(5), b(5);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(a.density(2, 2).matrix(), b.density(2, 2).matrix());
}

TEST(RandomDensity, ThousandSamplesValidateWithInteriorPurity) {
  StateSampler s(1234);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t da = 2 + i % 3, db = 2 + (i / 3) % 3;
    const auto rho = s.density(da, db);
    ASSERT_TRUE(validate(rho.matrix(), da, db).ok());
    const double pur = purity(rho);
    EXPECT_GT(pur, 1.0 / static_cast<double>(da * db));
    EXPECT_LT(pur, 1.0);
  }
}

TEST(RandomPure, ProductAndEntangled) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto prod = random_pure(2, 3, seed, true);
    EXPECT_NEAR(purity(prod), 1.0, 1e-12);
    EXPECT_NEAR(purity(partial_trace(prod, Wing::A)), 1.0, 1e-9);
    EXPECT_NEAR(purity(partial_trace(prod, Wing::B)), 1.0, 1e-9);

    const auto ent = random_pure(2, 2, seed, false);
    EXPECT_NEAR(purity(ent), 1.0, 1e-12);
    // Schmidt coefficients: the 2x2 coefficient matrix has nonzero determinant.
    EXPECT_LT(purity(partial_trace(ent, Wing::A)), 1.0 - 1e-9);
  }
}

TEST(RandomUnitary, IsUnitary) {
  StateSampler s(3);
  for (std::size_t n : {2u, 3u, 5u}) {
    const auto u = s.unitary(n);
    EXPECT_LE((u * u.adjoint()).max_abs_diff(ComplexMatrix::identity(n)), 1e-12);
  }
}
