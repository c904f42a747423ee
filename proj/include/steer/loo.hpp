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

// Complete sets of local orthogonal observables (LOOs).
//
// For dimension d the basis holds d^2 Hermitian matrices, orthonormal under
// tr(A_k A_l), in three blocks:
//   k in [0, d(d-1)/2)          (|m><n| + |n><m|) / sqrt2,     m < n
//   k in [d(d-1)/2, d(d-1))     (-i|m><n| + i|n><m|) / sqrt2,  m < n
//   k in [d(d-1), d^2)          |m><m|
// with (m, n) lexicographic inside each block. Completeness gives
//   sum_kl <A_k (x) B_l>^2 = tr(rho_AB^2),   sum_l <B_l>^2 = tr(rho_B^2).

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "steer/qmat.hpp"

namespace steer {

struct LooBasis {
  std::size_t dim;
  std::vector<ComplexMatrix> observables;

  std::size_t size() const noexcept { return observables.size(); }
  const ComplexMatrix& operator[](std::size_t k) const { return observables[k]; }
};

inline LooBasis build_loo(std::size_t d) {
  if (d < 2) throw std::invalid_argument("build_loo: dimension must be >= 2");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  LooBasis basis{d, {}};
  basis.observables.reserve(d * d);

  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = m + 1; n < d; ++n) {
      ComplexMatrix a(d, d);
      a(m, n) = inv_sqrt2;
      a(n, m) = inv_sqrt2;
      basis.observables.push_back(std::move(a));
    }
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = m + 1; n < d; ++n) {
      ComplexMatrix a(d, d);
      a(m, n) = cplx{0.0, -inv_sqrt2};
      a(n, m) = cplx{0.0, inv_sqrt2};
      basis.observables.push_back(std::move(a));
    }
  for (std::size_t m = 0; m < d; ++m) {
    ComplexMatrix a(d, d);
    a(m, m) = 1.0;
    basis.observables.push_back(std::move(a));
  }
  return basis;
}

/// tr(rho * obs). Throws if the trace has an imaginary part above 1e-8.
inline double expectation(const ComplexMatrix& rho, const ComplexMatrix& obs) {
  if (!rho.square() || !obs.square() || rho.rows() != obs.rows()) {
    throw std::invalid_argument("expectation: incompatible sizes");
  }
  const std::size_t n = rho.rows();
  cplx t{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t += rho(i, j) * obs(j, i);
  if (std::abs(t.imag()) > 1e-8) {
    throw std::domain_error("expectation: imaginary trace, inputs are not Hermitian");
  }
  return t.real();
}

/// sum_kl <A_k (x) B_l>^2 over the given bases.
inline double correlation_sum(const DensityMatrix& rho, const LooBasis& basis_a,
                              const LooBasis& basis_b) {
  if (basis_a.dim != rho.dim_a() || basis_b.dim != rho.dim_b()) {
    throw std::invalid_argument("correlation_sum: basis dimension mismatch");
  }
  double s = 0.0;
  for (const auto& a : basis_a.observables)
    for (const auto& b : basis_b.observables) {
      const double e = expectation(rho.matrix(), kron(a, b));
      s += e * e;
    }
  return s;
}

inline double correlation_sum(const DensityMatrix& rho) {
  return correlation_sum(rho, build_loo(rho.dim_a()), build_loo(rho.dim_b()));
}

/// sum_l <L_l>^2 on the reduced state of the kept wing.
inline double marginal_sum(const ComplexMatrix& reduced, const LooBasis& basis) {
  double s = 0.0;
  for (const auto& obs : basis.observables) {
    const double e = expectation(reduced, obs);
    s += e * e;
  }
  return s;
}

/// `kept` is the wing whose marginal is summed (B gives tr(rho_B^2)).
inline double marginal_sum(const DensityMatrix& rho, Wing kept) {
  const Wing traced = kept == Wing::A ? Wing::B : Wing::A;
  auto reduced = partial_trace(rho, traced);
  return marginal_sum(reduced.matrix, build_loo(reduced.dim));
}

/// rho = sum_kl <A_k (x) B_l> A_k (x) B_l.
inline ComplexMatrix reconstruct_from_loo(const DensityMatrix& rho) {
  const auto ba = build_loo(rho.dim_a());
  const auto bb = build_loo(rho.dim_b());
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto& a : ba.observables)
    for (const auto& b : bb.observables) {
      auto ab = kron(a, b);
      const double e = expectation(rho.matrix(), ab);
      out += ab * cplx{e, 0.0};
    }
  return out;
}

}  // namespace steer
