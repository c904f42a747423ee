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

// State families and seeded random states.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "steer/criteria.hpp"
#include "steer/qmat.hpp"

namespace steer {

namespace detail {

inline void require_unit_interval(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::out_of_range(std::string(who) + ": p must lie in [0, 1], got " + std::to_string(p));
  }
}

inline std::vector<cplx> basis_ket(std::size_t dim, std::size_t index) {
  std::vector<cplx> v(dim);
  v[index] = 1.0;
  return v;
}

// p * |psi><psi| + (1 - p) * noise
inline ComplexMatrix mix(double p, std::span<const cplx> psi, const ComplexMatrix& noise) {
  return ComplexMatrix::outer(psi) * cplx{p, 0.0} + noise * cplx{1.0 - p, 0.0};
}

}  // namespace detail

/// p |psi+><psi+| + (1-p) I/4, |psi+> = (|00> + |11>)/sqrt2.
inline DensityMatrix werner(double p) {
  detail::require_unit_interval(p, "werner");
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<cplx> psi{s, 0.0, 0.0, s};
  return DensityMatrix::from(detail::mix(p, psi, ComplexMatrix::identity(4) * cplx{0.25, 0.0}), 2, 2);
}

/// (I + sum_j c_j sigma_j (x) sigma_j) / 4 without the physicality check.
inline ComplexMatrix bell_diagonal_matrix(double c1, double c2, double c3) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  const std::array<double, 3> c{c1, c2, c3};
  for (int j = 1; j <= 3; ++j) m += kron(pauli(j), pauli(j)) * cplx{c[j - 1], 0.0};
  return m * cplx{0.25, 0.0};
}

/// Eigenvalues of the Bell-diagonal matrix; physical iff all are >= 0.
inline std::array<double, 4> bell_diagonal_eigenvalues(double c1, double c2, double c3) {
  return {(1 - c1 - c2 - c3) / 4, (1 - c1 + c2 + c3) / 4, (1 + c1 - c2 + c3) / 4,
          (1 + c1 + c2 - c3) / 4};
}

/// Throws InvalidStateError (with the offending eigenvalue) outside the tetrahedron.
inline DensityMatrix bell_diagonal(double c1, double c2, double c3) {
  for (double c : {c1, c2, c3}) {
    if (!(std::abs(c) <= 1.0)) {
      throw std::out_of_range("bell_diagonal: each |c_j| must be <= 1");
    }
  }
  return DensityMatrix::from(bell_diagonal_matrix(c1, c2, c3), 2, 2);
}

/// p |psi-><psi-| + (1-p)(2/3 |00><00| + 1/3 |01><01|), |psi-> = (|01> - |10>)/sqrt2.
inline DensityMatrix asymmetric_noisy_singlet(double p) {
  detail::require_unit_interval(p, "asymmetric_noisy_singlet");
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<cplx> psi{0.0, s, -s, 0.0};
  const std::array<double, 4> noise{2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0};
  return DensityMatrix::from(detail::mix(p, psi, ComplexMatrix::diagonal(noise)), 2, 2);
}

/// p |phi_d><phi_d| + (1-p) I/d^2, |phi_d> = sum_i |ii>/sqrt(d).
inline DensityMatrix isotropic(double p, std::size_t d) {
  detail::require_unit_interval(p, "isotropic");
  if (d < 2) throw std::out_of_range("isotropic: d must be >= 2");
  const std::size_t n = d * d;
  std::vector<cplx> psi(n);
  for (std::size_t i = 0; i < d; ++i) psi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  auto noise = ComplexMatrix::identity(n) * cplx{1.0 / static_cast<double>(n), 0.0};
  return DensityMatrix::from(detail::mix(p, psi, noise), d, d);
}

/// Two qutrits: p |phi+><phi+| + (1-p) sigma+, |phi+> = (|00>+|11>+|22>)/sqrt3,
/// sigma+ = (|01><01| + |12><12| + |20><20|)/3.
inline DensityMatrix free_entangled(double p) {
  detail::require_unit_interval(p, "free_entangled");
  const double s = 1.0 / std::sqrt(3.0);
  std::vector<cplx> psi(9);
  psi[0] = psi[4] = psi[8] = s;
  std::array<double, 9> noise{};
  noise[0 * 3 + 1] = noise[1 * 3 + 2] = noise[2 * 3 + 0] = 1.0 / 3.0;
  return DensityMatrix::from(detail::mix(p, psi, ComplexMatrix::diagonal(noise)), 3, 3);
}

enum class Family { Werner, BellDiagonal, AsymmetricNoisySinglet, Isotropic, FreeEntangled };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::Werner: return "werner";
    case Family::BellDiagonal: return "bell-diagonal";
    case Family::AsymmetricNoisySinglet: return "asymmetric";
    case Family::Isotropic: return "isotropic";
    case Family::FreeEntangled: return "free-entangled";
  }
  return "unknown";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Werner, Family::BellDiagonal, Family::AsymmetricNoisySinglet,
                   Family::Isotropic, Family::FreeEntangled}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

/// One member of a state family. For BellDiagonal the mixing parameter p scales
/// the correlation triple, so a one-parameter search runs along the ray p * c.
struct FamilySpec {
  Family family = Family::Werner;
  double p = 0.0;
  std::array<double, 3> c{0.0, 0.0, 0.0};
  std::size_t d = 2;

  FamilySpec with_p(double new_p) const {
    FamilySpec s = *this;
    s.p = new_p;
    return s;
  }

  std::size_t local_dim() const {
    switch (family) {
      case Family::Isotropic: return d;
      case Family::FreeEntangled: return 3;
      default: return 2;
    }
  }

  DensityMatrix state() const {
    switch (family) {
      case Family::Werner: return werner(p);
      case Family::BellDiagonal:
        detail::require_unit_interval(p, "bell_diagonal scale");
        return bell_diagonal(p * c[0], p * c[1], p * c[2]);
      case Family::AsymmetricNoisySinglet: return asymmetric_noisy_singlet(p);
      case Family::Isotropic: return isotropic(p, d);
      case Family::FreeEntangled: return free_entangled(p);
    }
    throw std::logic_error("FamilySpec: unknown family");
  }
};

/// Seeded source of random states. Equal seeds give equal streams.
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : engine_(seed) {}

  std::vector<cplx> complex_normal_vector(std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx{normal_(engine_), normal_(engine_)};
    return v;
  }

  /// G G^dagger / tr(G G^dagger) with G square complex Ginibre.
  DensityMatrix density(std::size_t dim_a, std::size_t dim_b) {
    require_dims(dim_a, dim_b);
    const std::size_t n = dim_a * dim_b;
    ComplexMatrix g(n, n, complex_normal_vector(n * n));
    ComplexMatrix w = g * g.adjoint();
    const double tr = w.trace().real();
    w *= cplx{1.0 / tr, 0.0};
    // Exact Hermitian symmetry, removing product rounding.
    w = (w + w.adjoint()) * cplx{0.5, 0.0};
    return DensityMatrix::from(std::move(w), dim_a, dim_b);
  }

  /// Normalized complex-normal vector of length n.
  std::vector<cplx> unit_vector(std::size_t n) {
    auto v = complex_normal_vector(n);
    double norm = 0.0;
    for (const auto& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (auto& z : v) z /= norm;
    return v;
  }

  /// |psi><psi|; with product = true, |psi> = |a> (x) |b> drawn per wing.
  DensityMatrix pure(std::size_t dim_a, std::size_t dim_b, bool product) {
    require_dims(dim_a, dim_b);
    std::vector<cplx> psi;
    if (product) {
      auto a = unit_vector(dim_a);
      auto b = unit_vector(dim_b);
      psi.resize(dim_a * dim_b);
      for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) psi[i * dim_b + j] = a[i] * b[j];
    } else {
      psi = unit_vector(dim_a * dim_b);
    }
    return DensityMatrix::from_pure(psi, dim_a, dim_b);
  }

  /// Haar-random unitary: Gram-Schmidt on the columns of a Ginibre matrix.
  ComplexMatrix unitary(std::size_t n) {
    ComplexMatrix g(n, n, complex_normal_vector(n * n));
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t k = 0; k < c; ++k) {
        cplx dot{};
        for (std::size_t r = 0; r < n; ++r) dot += std::conj(g(r, k)) * g(r, c);
        for (std::size_t r = 0; r < n; ++r) g(r, c) -= dot * g(r, k);
      }
      double norm = 0.0;
      for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, c));
      norm = std::sqrt(norm);
      for (std::size_t r = 0; r < n; ++r) g(r, c) /= norm;
    }
    return g;
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  static void require_dims(std::size_t dim_a, std::size_t dim_b) {
    if (dim_a < 2 || dim_b < 2) throw std::out_of_range("random state: dimensions must be >= 2");
  }

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline DensityMatrix random_density(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
  return StateSampler(seed).density(dim_a, dim_b);
}

inline DensityMatrix random_pure(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed,
                                 bool product) {
  return StateSampler(seed).pure(dim_a, dim_b, product);
}

}  // namespace steer
