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

// Finite-shot purity estimation by projecting two copies of a state onto the
// antisymmetric subspace.
//
// For two copies of rho, the antisymmetric projector P- = (I - SWAP)/2 fires
// with probability q = tr(P- rho (x) rho) = (1 - tr(rho^2))/2, so the purity is
// 1 - 2q. Shots are simulated from that outcome law directly; the swap
// construction is kept for cross-checking small dimensions.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "steer/criteria.hpp"
#include "steer/qmat.hpp"

namespace steer {

enum class PurityTarget { Joint, ReducedA, ReducedB };

struct ShotRecord {
  PurityTarget target;
  std::uint64_t shots;
  std::uint64_t antisymmetric_count;
  std::uint64_t seed;
};

struct PurityEstimate {
  double estimate;
  double std_error;
};

struct EstimatedVerdict {
  double margin_estimate;
  double std_error;
  double z_score;
  bool detected_at_3sigma;
};

/// Significance for `detected_at_3sigma` (one-sided).
inline constexpr double kDetectionSigma = 3.0;

/// Outcome probability of the antisymmetric projection, (1 - tr(rho^2)) / 2.
inline double antisymmetric_probability(const ComplexMatrix& rho) {
  const double q = 0.5 * (1.0 - purity(rho));
  if (q < -kStateTolerance || q > 0.5 + kStateTolerance) {
    throw std::domain_error("antisymmetric_probability: q outside [0, 1/2], input is not a state");
  }
  return std::clamp(q, 0.0, 0.5);
}

/// SWAP on C^n (x) C^n: |i j> -> |j i>.
inline ComplexMatrix swap_operator(std::size_t n) {
  ComplexMatrix s(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return s;
}

/// tr(P- rho (x) rho) with P- built explicitly. O(n^4) memory; meant for n <= 9.
inline double antisymmetric_probability_via_swap(const ComplexMatrix& rho) {
  const std::size_t n = rho.rows();
  const auto two = kron(rho, rho);
  const auto proj = (ComplexMatrix::identity(n * n) - swap_operator(n)) * cplx{0.5, 0.0};
  return expectation(two, proj);
}

inline ShotRecord sample_purity(const ComplexMatrix& rho, PurityTarget target, std::uint64_t shots,
                                std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_purity: shots must be >= 1");
  const double q = antisymmetric_probability(rho);
  std::mt19937_64 engine(seed);
  // Equivalent in law to `shots` independent Bernoulli(q) projections.
  std::binomial_distribution<std::uint64_t> draws(shots, q);
  return {target, shots, draws(engine), seed};
}

inline PurityEstimate estimate_purity(const ShotRecord& r) {
  if (r.shots < 1) throw std::invalid_argument("estimate_purity: shots must be >= 1");
  const double n = static_cast<double>(r.shots);
  const double q_hat = static_cast<double>(r.antisymmetric_count) / n;
  // Clamped for the error bar only, so it stays positive at q_hat = 0 or 1.
  const double q_err = std::clamp(q_hat, 1.0 / (4.0 * n), 1.0 - 1.0 / (4.0 * n));
  return {1.0 - 2.0 * q_hat, 2.0 * std::sqrt(q_err * (1.0 - q_err) / n)};
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Shots are split evenly between the joint and the compared reduced purity.
inline EstimatedVerdict estimated_verdict(const DensityMatrix& rho, Direction direction,
                                          std::uint64_t shots, std::uint64_t seed) {
  if (shots < 2) throw std::invalid_argument("estimated_verdict: shots must be >= 2");
  const std::uint64_t joint_shots = shots / 2;
  const Wing traced = direction == Direction::AtoB ? Wing::A : Wing::B;
  const auto reduced = partial_trace(rho, traced);
  const auto target = direction == Direction::AtoB ? PurityTarget::ReducedB : PurityTarget::ReducedA;

  const auto joint = estimate_purity(
      sample_purity(rho.matrix(), PurityTarget::Joint, joint_shots, detail::splitmix64(seed)));
  const auto marginal = estimate_purity(sample_purity(reduced.matrix, target, shots - joint_shots,
                                                      detail::splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL)));

  EstimatedVerdict v;
  v.margin_estimate = joint.estimate - marginal.estimate;
  v.std_error = std::hypot(joint.std_error, marginal.std_error);
  v.z_score = v.margin_estimate / v.std_error;
  v.detected_at_3sigma = v.z_score > kDetectionSigma;
  return v;
}

inline nlohmann::json to_json(const EstimatedVerdict& v) {
  return {{"margin_estimate", io::round_significant(v.margin_estimate, 9)},
          {"std_error", io::round_significant(v.std_error, 9)},
          {"z_score", io::round_significant(v.z_score, 9)},
          {"detected_3sigma", v.detected_at_3sigma}};
}

}  // namespace steer
