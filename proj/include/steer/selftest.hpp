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

// Runtime self-check of the identities the criterion relies on.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "steer/estimate.hpp"
#include "steer/io.hpp"
#include "steer/loo.hpp"
#include "steer/states.hpp"

namespace steer {

struct SelftestOptions {
  std::uint64_t seed = 1;
  std::size_t random_states = 1000;
  /// Negative control: scale every LOO observable by sqrt(2).
  bool inject_unnormalized_loo = false;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::optional<nlohmann::json> failing_case;  // first case over tolerance

  bool passed() const noexcept { return !failing_case.has_value(); }
};

struct SelftestReport {
  std::vector<SuiteResult> suites;

  bool passed() const noexcept {
    for (const auto& s : suites)
      if (!s.passed()) return false;
    return true;
  }
};

namespace detail {

inline void record(SuiteResult& s, double residual, const std::function<nlohmann::json()>& describe) {
  ++s.cases;
  if (!(residual <= s.max_residual)) s.max_residual = residual;  // NaN propagates
  if (!s.failing_case && !(residual <= s.tolerance)) {
    auto c = describe();
    c["residual"] = residual;
    s.failing_case = std::move(c);
  }
}

inline LooBasis selftest_basis(std::size_t d, bool unnormalized) {
  auto b = build_loo(d);
  if (unnormalized)
    for (auto& o : b.observables) o *= cplx{std::sqrt(2.0), 0.0};
  return b;
}

}  // namespace detail

inline SelftestReport run_selftest(const SelftestOptions& opt = {}) {
  SelftestReport report;
  constexpr std::size_t kDims[] = {2, 3, 4};

  // Completeness identities over the LOO bases.
  {
    SuiteResult corr{"loo-correlation-sum", 0, 0.0, kStateTolerance, std::nullopt};
    SuiteResult marg{"loo-marginal-sum", 0, 0.0, kStateTolerance, std::nullopt};
    StateSampler sampler(opt.seed);
    for (std::size_t i = 0; i < opt.random_states; ++i) {
      const std::size_t da = kDims[i % 3], db = kDims[(i / 3) % 3];
      const auto rho = sampler.density(da, db);
      const auto ba = detail::selftest_basis(da, opt.inject_unnormalized_loo);
      const auto bb = detail::selftest_basis(db, opt.inject_unnormalized_loo);
      auto describe = [&] { return io::to_json(rho); };
      detail::record(corr, std::abs(correlation_sum(rho, ba, bb) - purity(rho)), describe);
      const auto rb = partial_trace(rho, Wing::A);
      detail::record(marg, std::abs(marginal_sum(rb.matrix, bb) - purity(rb)), describe);
    }
    report.suites.push_back(std::move(corr));
    report.suites.push_back(std::move(marg));
  }

  // Closed-form purities of the families on a 101-point grid.
  {
    SuiteResult fam{"family-purity-formulas", 0, 0.0, kIdentityTolerance, std::nullopt};
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      auto check = [&](const char* name, double got, double want) {
        detail::record(fam, std::abs(got - want), [&] {
          return nlohmann::json{{"family", name}, {"p", p}, {"purity", got}, {"expected", want}};
        });
      };
      check("werner", purity(werner(p)), 3 * p * p / 4 + 0.25);
      check("werner-marginal", purity(partial_trace(werner(p), Wing::A)), 0.5);
      for (std::size_t d : {2u, 3u, 4u, 5u}) {
        const double dd = static_cast<double>(d);
        const auto iso = isotropic(p, d);
        check("isotropic", purity(iso), (dd * dd - 1) * p * p / (dd * dd) + 1 / (dd * dd));
        check("isotropic-marginal", purity(partial_trace(iso, Wing::A)), 1 / dd);
      }
      check("free-entangled", purity(free_entangled(p)), 4 * p * p / 3 - 2 * p / 3 + 1.0 / 3);
      check("free-entangled-marginal", purity(partial_trace(free_entangled(p), Wing::A)), 1.0 / 3);
      // t in [-1/3, 1] keeps t * (1, -1, 1) inside the physical tetrahedron.
      const double t = (4 * p - 1) / 3, c1 = t, c2 = -t, c3 = t;
      check("bell-diagonal", purity(bell_diagonal(c1, c2, c3)), (1 + c1 * c1 + c2 * c2 + c3 * c3) / 4);
    }
    report.suites.push_back(std::move(fam));
  }

  // Explicit two-copy swap projector vs the closed-form outcome probability.
  {
    SuiteResult swp{"swap-vs-bernoulli-q", 0, 0.0, kIdentityTolerance, std::nullopt};
    StateSampler sampler(opt.seed ^ 0x5157u);
    constexpr std::size_t kPairs[][2] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    for (std::size_t i = 0; i < 40; ++i) {
      const auto [da, db] = std::pair{kPairs[i % 4][0], kPairs[i % 4][1]};
      const auto rho = sampler.density(da, db);
      const auto ra = partial_trace(rho, Wing::B).matrix;
      const auto rb = partial_trace(rho, Wing::A).matrix;
      for (const ComplexMatrix& m : {rho.matrix(), ra, rb}) {
        detail::record(swp, std::abs(antisymmetric_probability_via_swap(m) - antisymmetric_probability(m)),
                       [&] { return io::to_json(rho); });
      }
    }
    report.suites.push_back(std::move(swp));
  }
  return report;
}

inline nlohmann::json to_json(const SelftestReport& r) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : r.suites) {
    nlohmann::json j{{"suite", s.name},
                     {"cases", s.cases},
                     {"max_residual", s.max_residual},
                     {"tolerance", s.tolerance},
                     {"passed", s.passed()}};
    if (s.failing_case) j["failing_case"] = *s.failing_case;
    suites.push_back(std::move(j));
  }
  return {{"passed", r.passed()}, {"suites", std::move(suites)}};
}

}  // namespace steer
