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

// Steering verdicts.
//
// Purity criterion: a state unsteerable from A to B satisfies
//   tr(rho_AB^2) <= tr(rho_B^2),
// so margin = tr(rho_AB^2) - tr(rho_B^2) > 0 certifies A->B steering (and
// entanglement). B->A compares against rho_A.
//
// Two-qubit correlation criterion: an unsteerable two-qubit state satisfies
//   S = sum_{i,j=1..3} <sigma_i (x) sigma_j>^2 <= 1.
//
// Verdicts say "detected" or "not detected"; neither criterion is necessary,
// so non-detection never proves a state unsteerable.

#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "steer/io.hpp"
#include "steer/loo.hpp"
#include "steer/qmat.hpp"

namespace steer {

enum class Direction { AtoB, BtoA };
enum class Criterion { Purity, PauliCorrelation };

inline const char* to_string(Direction d) { return d == Direction::AtoB ? "a-to-b" : "b-to-a"; }
inline const char* to_string(Criterion c) {
  return c == Criterion::Purity ? "purity" : "pauli-correlation";
}

/// Wing whose reduced state is compared against the joint purity.
inline Wing compared_wing(Direction d) { return d == Direction::AtoB ? Wing::B : Wing::A; }

struct SteeringVerdict {
  std::optional<Direction> direction;  // empty for the symmetric two-qubit criterion
  bool detected;
  double margin;
  Criterion criterion;
  double tolerance;

  /// |margin| within tolerance: reported as "boundary", never as detected.
  bool boundary() const noexcept { return std::abs(margin) <= tolerance; }
};

/// tr(m^2) - tr(reduced^2) on an unvalidated bipartite matrix. Used directly by
/// region scans, which also visit non-physical parameter points.
inline double purity_margin(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Direction direction) {
  const Wing traced = direction == Direction::AtoB ? Wing::A : Wing::B;
  return purity(m) - purity(partial_trace(m, dim_a, dim_b, traced));
}

inline SteeringVerdict purity_criterion(const DensityMatrix& rho, Direction direction,
                                        double tolerance = kStateTolerance) {
  const double margin = purity_margin(rho.matrix(), rho.dim_a(), rho.dim_b(), direction);
  return {direction, margin > tolerance, margin, Criterion::Purity, tolerance};
}

inline ComplexMatrix pauli(int i) {
  ComplexMatrix s(2, 2);
  switch (i) {
    case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 2: s(0, 1) = cplx{0.0, -1.0}; s(1, 0) = cplx{0.0, 1.0}; break;
    case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
  return s;
}

/// T_ij = <sigma_i (x) sigma_j>, i, j = 1..3 (stored zero-based).
inline std::array<std::array<double, 3>, 3> correlation_tensor(const DensityMatrix& rho) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2) {
    throw std::invalid_argument("correlation_tensor: requires a two-qubit state");
  }
  std::array<std::array<double, 3>, 3> t{};
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) t[i - 1][j - 1] = expectation(rho.matrix(), kron(pauli(i), pauli(j)));
  return t;
}

inline SteeringVerdict lemma1_criterion(const DensityMatrix& rho,
                                        double tolerance = kStateTolerance) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2) {
    throw std::invalid_argument("two-qubit correlation criterion: requires a 2x2 state");
  }
  double s = 0.0;
  for (const auto& row : correlation_tensor(rho))
    for (double x : row) s += x * x;
  const double margin = s - 1.0;
  return {std::nullopt, margin > tolerance, margin, Criterion::PauliCorrelation, tolerance};
}

struct SteeringReport {
  SteeringVerdict a_to_b;
  SteeringVerdict b_to_a;
  std::optional<SteeringVerdict> lemma1;
  double purity_joint;
  double purity_a;
  double purity_b;
  /// Any detection: every steerable state is entangled.
  bool entanglement_certified;
};

inline SteeringReport full_report(const DensityMatrix& rho, double tolerance = kStateTolerance) {
  SteeringReport r{purity_criterion(rho, Direction::AtoB, tolerance),
                   purity_criterion(rho, Direction::BtoA, tolerance),
                   std::nullopt,
                   purity(rho),
                   purity(partial_trace(rho, Wing::B)),
                   purity(partial_trace(rho, Wing::A)),
                   false};
  if (rho.dim_a() == 2 && rho.dim_b() == 2) r.lemma1 = lemma1_criterion(rho, tolerance);
  r.entanglement_certified =
      r.a_to_b.detected || r.b_to_a.detected || (r.lemma1 && r.lemma1->detected);
  return r;
}

inline nlohmann::json to_json(const SteeringVerdict& v) {
  return {{"detected", v.detected}, {"margin", io::round_significant(v.margin, 9)}};
}

/// Report floats carry 9 significant digits.
inline nlohmann::json to_json(const SteeringReport& r) {
  using io::round_significant;
  return {{"a_to_b", to_json(r.a_to_b)},
          {"b_to_a", to_json(r.b_to_a)},
          {"lemma1", r.lemma1 ? to_json(*r.lemma1) : nlohmann::json(nullptr)},
          {"purities",
           {{"joint", round_significant(r.purity_joint, 9)},
            {"a", round_significant(r.purity_a, 9)},
            {"b", round_significant(r.purity_b, 9)}}},
          {"entanglement_certified", r.entanglement_certified}};
}

inline std::string render_text(const SteeringReport& r) {
  auto line = [](const char* name, const SteeringVerdict& v) {
    char buf[160];
    const char* status = v.detected ? "DETECTED" : (v.boundary() ? "boundary (not detected)"
                                                                 : "not detected");
    std::snprintf(buf, sizeof buf, "%-18s margin %+.9g  %s\n", name, v.margin, status);
    return std::string(buf);
  };
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "purity joint %.9g  A %.9g  B %.9g\n", r.purity_joint, r.purity_a,
                r.purity_b);
  os << buf;
  os << line("a-to-b (purity)", r.a_to_b);
  os << line("b-to-a (purity)", r.b_to_a);
  if (r.lemma1) os << line("pauli correlation", *r.lemma1);
  os << "entanglement certified: " << (r.entanglement_certified ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace steer
