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

// Dense complex matrices and validated bipartite density matrices.
//
// Bipartite basis ordering is A-major: |a b> has index a * dim_b + b.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace steer {

using cplx = std::complex<double>;

/// Tolerance for the Hermiticity, unit-trace and positivity checks.
inline constexpr double kStateTolerance = 1e-9;
/// Tolerance for identities that hold exactly in exact arithmetic.
inline constexpr double kIdentityTolerance = 1e-12;

class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(1, 1) {}

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
    }
    if (rows > std::numeric_limits<std::size_t>::max() / cols) {
      throw std::overflow_error("ComplexMatrix: size overflow");
    }
    data_.assign(rows * cols, cplx{0.0, 0.0});
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0 || data_.size() != rows * cols) {
      throw std::invalid_argument("ComplexMatrix: entry count != rows * cols");
    }
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
      }
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  /// |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const cplx> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  cplx trace() const {
    require_square("trace");
    cplx t{};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("ComplexMatrix: incompatible product shapes");
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  /// Largest entrywise modulus of (this - other).
  double max_abs_diff(const ComplexMatrix& o) const {
    require_same_shape(o);
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
      m = std::max(m, std::abs(data_[i] - o.data_[i]));
    return m;
  }

  /// max |M - M^dagger| entrywise.
  double hermiticity_residual() const {
    require_square("hermiticity_residual");
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

 private:
  void require_square(const char* what) const {
    if (!square()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument("ComplexMatrix: shape mismatch");
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

/// Kronecker product a (x) b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (a.rows() > kMax / b.rows() || a.cols() > kMax / b.cols()) {
    throw std::overflow_error("kron: product dimension overflows");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// tr(m^2) = sum_ij |m_ij|^2 for Hermitian m.
inline double purity(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("purity: matrix is not square");
  if (m.hermiticity_residual() > kStateTolerance) {
    throw std::invalid_argument("purity: matrix is not Hermitian");
  }
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return s;
}

namespace detail {

// Cyclic Jacobi rotations on a dense real symmetric n x n matrix (row-major).
// Returns the diagonal once the off-diagonal Frobenius norm is below
// tol * max(1, ||A||_F).
inline std::vector<double> jacobi_symmetric(std::vector<double> a, std::size_t n,
                                            double tol = kIdentityTolerance) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  double total = 0.0;
  for (double x : a) total += x * x;
  const double scale = std::max(1.0, std::sqrt(total));

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += at(i, j) * at(i, j);
    if (std::sqrt(off) <= tol * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i);
  return diag;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// H = X + iY is embedded as the real symmetric [[X, -Y], [Y, X]], whose
/// spectrum is that of H with every eigenvalue doubled; every other entry of
/// the sorted embedded spectrum is kept.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  if (m.hermiticity_residual() > kStateTolerance) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  }
  const std::size_t n = m.rows();
  const std::size_t n2 = 2 * n;
  std::vector<double> emb(n2 * n2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize so rounding-level anti-Hermitian parts do not leak in.
      const cplx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      emb[i * n2 + j] = h.real();
      emb[(i + n) * n2 + (j + n)] = h.real();
      emb[i * n2 + (j + n)] = -h.imag();
      emb[(i + n) * n2 + j] = h.imag();
    }
  auto all = detail::jacobi_symmetric(std::move(emb), n2);
  std::sort(all.begin(), all.end());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (all[2 * i] + all[2 * i + 1]);
  return out;
}

enum class Wing { A, B };

enum class ViolationKind { Shape, NonFinite, Hermiticity, Trace, PositiveSemidefinite };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Shape: return "shape";
    case ViolationKind::NonFinite: return "non-finite";
    case ViolationKind::Hermiticity: return "hermiticity";
    case ViolationKind::Trace: return "trace";
    case ViolationKind::PositiveSemidefinite: return "positive-semidefinite";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  double residual;  // measured: max|M-M^dag|, |tr-1|, or min eigenvalue
  std::string message;
};

class InvalidStateError : public std::invalid_argument {
 public:
  explicit InvalidStateError(std::vector<Violation> v)
      : std::invalid_argument(describe(v)), violations_(std::move(v)) {}
  const std::vector<Violation>& violations() const noexcept { return violations_; }

  static std::string describe(const std::vector<Violation>& v) {
    std::ostringstream os;
    os << "invalid density matrix:";
    for (const auto& x : v) os << " [" << to_string(x.kind) << "] " << x.message << ";";
    return os.str();
  }

 private:
  std::vector<Violation> violations_;
};

class DensityMatrix;
struct ValidationResult;
ValidationResult validate(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                          double tolerance);

/// Validated bipartite state: Hermitian, unit trace, PSD, bipartition recorded.
class DensityMatrix {
 public:
  /// Throws InvalidStateError listing every violated invariant.
  static DensityMatrix from(ComplexMatrix m, std::size_t dim_a, std::size_t dim_b,
                            double tolerance = kStateTolerance);

  /// |psi><psi| for a (normalized) joint state vector.
  static DensityMatrix from_pure(std::span<const cplx> psi, std::size_t dim_a,
                                 std::size_t dim_b) {
    return from(ComplexMatrix::outer(psi), dim_a, dim_b);
  }

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return dim_a_ * dim_b_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  friend ValidationResult validate(const ComplexMatrix&, std::size_t, std::size_t, double);
  DensityMatrix(ComplexMatrix m, std::size_t da, std::size_t db)
      : dim_a_(da), dim_b_(db), matrix_(std::move(m)) {}

  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexMatrix matrix_;
};

struct ValidationResult {
  std::optional<DensityMatrix> state;
  std::vector<Violation> violations;
  double min_eigenvalue = std::numeric_limits<double>::quiet_NaN();

  bool ok() const noexcept { return state.has_value(); }
};

/// Checks every invariant independently and reports each failure with its residual.
inline ValidationResult validate(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                 double tolerance = kStateTolerance) {
  ValidationResult r;
  auto add = [&](ViolationKind k, double residual, std::string msg) {
    r.violations.push_back({k, residual, std::move(msg)});
  };
  if (dim_a < 2 || dim_b < 2) {
    add(ViolationKind::Shape, 0.0, "subsystem dimensions must be >= 2");
    return r;
  }
  if (!m.square() || m.rows() != dim_a * dim_b) {
    add(ViolationKind::Shape, 0.0,
        "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
            ", expected " + std::to_string(dim_a * dim_b) + " square");
    return r;
  }
  for (const auto& z : m.entries()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      add(ViolationKind::NonFinite, 0.0, "matrix has non-finite entries");
      return r;
    }
  }

  const double herm = m.hermiticity_residual();
  if (herm > tolerance) {
    add(ViolationKind::Hermiticity, herm, "max|M - M^dagger| = " + std::to_string(herm));
  }
  const double tr_err = std::abs(m.trace() - cplx{1.0, 0.0});
  if (tr_err > tolerance) {
    add(ViolationKind::Trace, tr_err, "|tr(M) - 1| = " + std::to_string(tr_err));
  }

  // Eigenvalues of the Hermitian part, so PSD is reported even when
  // Hermiticity also failed.
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const auto eig = hermitian_eigenvalues(h);
  r.min_eigenvalue = eig.front();
  if (r.min_eigenvalue < -tolerance) {
    std::ostringstream os;
    os << "min eigenvalue = " << r.min_eigenvalue;
    add(ViolationKind::PositiveSemidefinite, r.min_eigenvalue, os.str());
  }
  if (r.violations.empty()) r.state = DensityMatrix(m, dim_a, dim_b);
  return r;
}

inline DensityMatrix DensityMatrix::from(ComplexMatrix m, std::size_t dim_a, std::size_t dim_b,
                                         double tolerance) {
  auto r = validate(m, dim_a, dim_b, tolerance);
  if (!r.ok()) throw InvalidStateError(std::move(r.violations));
  return std::move(*r.state);
}

/// Reduced state of the wing that was kept.
struct ReducedState {
  std::size_t dim;
  ComplexMatrix matrix;
  Wing traced_out;
};

/// Partial trace of an unvalidated (dim_a*dim_b)-square matrix.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                   Wing traced_out) {
  if (!m.square() || m.rows() != dim_a * dim_b) {
    throw std::invalid_argument("partial_trace: matrix size does not match bipartition");
  }
  if (traced_out == Wing::A) {
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t b = 0; b < dim_b; ++b)
      for (std::size_t bp = 0; bp < dim_b; ++bp)
        for (std::size_t a = 0; a < dim_a; ++a) out(b, bp) += m(a * dim_b + b, a * dim_b + bp);
    return out;
  }
  ComplexMatrix out(dim_a, dim_a);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t ap = 0; ap < dim_a; ++ap)
      for (std::size_t b = 0; b < dim_b; ++b) out(a, ap) += m(a * dim_b + b, ap * dim_b + b);
  return out;
}

/// Tracing A yields rho_B; tracing B yields rho_A.
inline ReducedState partial_trace(const DensityMatrix& rho, Wing traced_out) {
  auto m = partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), traced_out);
  const std::size_t d = m.rows();
  return ReducedState{d, std::move(m), traced_out};
}

inline double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }
inline double purity(const ReducedState& r) { return purity(r.matrix); }

}  // namespace steer
