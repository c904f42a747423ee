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

// Critical-parameter search and region sweeps for the state families.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "steer/criteria.hpp"
#include "steer/states.hpp"

namespace steer {

/// Threshold reported for another criterion, or an analytic bound. Carried as
/// data for comparison tables, never computed here.
struct Annotation {
  std::string_view label;
  double value;
  std::string_view source;
};

namespace references {

inline constexpr std::string_view kLhsBound = "LHS-model bound (Wiseman, Jones, Doherty 2007)";
inline constexpr std::string_view kLur = "local uncertainty relations criterion (reported)";
inline constexpr std::string_view kEntropic = "entropic criterion, three MUBs (reported)";
inline constexpr std::string_view kChsh = "CHSH-like steering inequality (reported)";
inline constexpr std::string_view kCovariance = "covariance-matrix criterion (reported)";
inline constexpr std::string_view kPurityReported = "purity criterion (reported, 3 decimals)";

/// (sum_{m=1}^d 1/m - 1) / (d - 1): isotropic states are steerable iff p exceeds it.
inline double isotropic_lhs_bound(std::size_t d) {
  double h = 0.0;
  for (std::size_t m = 1; m <= d; ++m) h += 1.0 / static_cast<double>(m);
  return (h - 1.0) / static_cast<double>(d - 1);
}

inline std::vector<Annotation> for_family(const FamilySpec& f) {
  switch (f.family) {
    case Family::Werner:
      return {{"entangled above", 1.0 / 3.0, "PPT criterion"}, {"steerable above", 0.5, kLhsBound}};
    case Family::AsymmetricNoisySinglet:
      return {{"purity, one way", 0.572, kPurityReported},
              {"purity, other way", 0.645, kPurityReported},
              {"LUR, one way", 0.536, kLur},
              {"LUR, other way", 0.582, kLur},
              {"entropic, one way", 0.639, kEntropic},
              {"entropic, other way", 0.604, kEntropic},
              {"CHSH-like, both ways", 0.748, kChsh}};
    case Family::Isotropic:
      return {{"entangled above", 1.0 / static_cast<double>(f.d + 1), "PPT criterion"},
              {"steerable above", isotropic_lhs_bound(f.d), kLhsBound}};
    case Family::FreeEntangled:
      return {{"steerable above", 0.5, kCovariance}};
    case Family::BellDiagonal:
      return {};
  }
  return {};
}

}  // namespace references

enum class Crossing { Found, NeverDetected, AlwaysDetected, Multiple, Reversed };

inline const char* to_string(Crossing c) {
  switch (c) {
    case Crossing::Found: return "found";
    case Crossing::NeverDetected: return "never detected";
    case Crossing::AlwaysDetected: return "always detected";
    case Crossing::Multiple: return "multiple crossings";
    case Crossing::Reversed: return "detected below, undetected above";
  }
  return "unknown";
}

struct ThresholdResult {
  FamilySpec family;
  Direction direction = Direction::AtoB;
  Crossing status = Crossing::NeverDetected;
  double critical_p = std::nan("");
  double low = std::nan("");
  double high = std::nan("");
  std::vector<Annotation> references;

  bool found() const noexcept { return status == Crossing::Found; }
};

class ThresholdError : public std::runtime_error {
 public:
  ThresholdError(Crossing c, const std::string& what) : std::runtime_error(what), crossing(c) {}
  Crossing crossing;
};

inline double family_margin(const FamilySpec& family, double p, Direction direction) {
  return purity_criterion(family.with_p(p).state(), direction).margin;
}

struct ThresholdOptions {
  std::size_t prescan_points = 101;
  double width = 1e-12;
  double tolerance = kStateTolerance;
};

/// Detection onset in p. A pre-scan classifies grid points as detected
/// (margin > tolerance), undetected (margin < -tolerance) or boundary; boundary
/// points are skipped when counting crossings. Bisection on the sign of the
/// margin then runs inside the bracketing cell.
inline ThresholdResult find_threshold(const FamilySpec& family, Direction direction,
                                      double p_lo = 0.0, double p_hi = 1.0,
                                      const ThresholdOptions& opt = {}) {
  if (!(p_lo >= 0.0 && p_hi <= 1.0 && p_lo < p_hi)) {
    throw std::out_of_range("find_threshold: need 0 <= p_lo < p_hi <= 1");
  }
  if (opt.prescan_points < 2) throw std::invalid_argument("find_threshold: prescan needs >= 2 points");

  ThresholdResult r;
  r.family = family;
  r.direction = direction;
  r.references = references::for_family(family);
  auto margin = [&](double p) { return family_margin(family, p, direction); };

  const std::size_t n = opt.prescan_points;
  std::vector<double> grid(n);
  std::vector<int> cls(n);  // -1 undetected, 0 boundary, +1 detected
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = i + 1 == n ? p_hi : p_lo + (p_hi - p_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double m = margin(grid[i]);
    cls[i] = m > opt.tolerance ? 1 : (m < -opt.tolerance ? -1 : 0);
  }

  int changes = 0;
  std::size_t last = n, lo_idx = 0, hi_idx = 0;
  bool any_detected = false, any_undetected = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] == 0) continue;
    (cls[i] > 0 ? any_detected : any_undetected) = true;
    if (last != n && cls[i] != cls[last]) {
      ++changes;
      lo_idx = last;
      hi_idx = i;
    }
    last = i;
  }
  if (!any_detected) return r;
  if (!any_undetected) {
    r.status = Crossing::AlwaysDetected;
    return r;
  }
  if (changes > 1) {
    r.status = Crossing::Multiple;
    return r;
  }
  if (cls[lo_idx] > 0) {
    r.status = Crossing::Reversed;
    return r;
  }

  double lo = grid[lo_idx], hi = grid[hi_idx];
  while (hi - lo > opt.width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (margin(mid) > 0.0 ? hi : lo) = mid;
  }
  r.status = Crossing::Found;
  r.low = lo;
  r.high = hi;
  r.critical_p = 0.5 * (lo + hi);
  return r;
}

/// As find_threshold, but any outcome other than a single crossing throws.
inline ThresholdResult require_threshold(const FamilySpec& family, Direction direction,
                                         double p_lo = 0.0, double p_hi = 1.0,
                                         const ThresholdOptions& opt = {}) {
  auto r = find_threshold(family, direction, p_lo, p_hi, opt);
  if (!r.found()) {
    throw ThresholdError(r.status, std::string("threshold ") + std::string(to_string(family.family)) +
                                       " " + to_string(direction) + ": " + to_string(r.status));
  }
  return r;
}

struct SweepPoint {
  double p;
  double margin_a_to_b;
  double margin_b_to_a;
};

inline std::vector<SweepPoint> sweep(const FamilySpec& family, std::span<const double> p_grid) {
  std::vector<SweepPoint> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    const auto rho = family.with_p(p).state();
    out.push_back({p, purity_criterion(rho, Direction::AtoB).margin,
                   purity_criterion(rho, Direction::BtoA).margin});
  }
  return out;
}

/// n evenly spaced points on [lo, hi], endpoints exact.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

struct Axis {
  std::string name;
  double lo;
  double hi;
  std::size_t steps;
};

struct RegionCell {
  double c1, c2, c3;
  double margin_a_to_b;
  double margin_b_to_a;
  double closed_form_margin;  // (c1^2 + c2^2 + c3^2 - 1) / 4
  bool psd_valid;
};

struct RegionGrid {
  std::vector<Axis> axes;
  std::vector<RegionCell> cells;  // c1-major: index = i1 * steps2 + i2
};

/// (c1, c2) grid over [-1, 1]^2 at fixed c3. Non-physical cells are kept and
/// flagged via the eigenvalues of the constructed matrix.
inline RegionGrid bell_diagonal_boundary(double c3, std::size_t grid_n,
                                         unsigned workers = std::thread::hardware_concurrency()) {
  if (!(std::abs(c3) <= 1.0)) throw std::out_of_range("bell_diagonal_boundary: |c3| must be <= 1");
  if (grid_n < 2) throw std::invalid_argument("bell_diagonal_boundary: grid_n must be >= 2");
  RegionGrid g;
  g.axes = {{"c1", -1.0, 1.0, grid_n}, {"c2", -1.0, 1.0, grid_n}};
  g.cells.resize(grid_n * grid_n);
  const auto ticks = linspace(-1.0, 1.0, grid_n);

  auto fill_rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < grid_n; ++j) {
        const double c1 = ticks[i], c2 = ticks[j];
        const auto m = bell_diagonal_matrix(c1, c2, c3);
        g.cells[i * grid_n + j] = RegionCell{
            c1, c2, c3,
            purity_margin(m, 2, 2, Direction::AtoB),
            purity_margin(m, 2, 2, Direction::BtoA),
            (c1 * c1 + c2 * c2 + c3 * c3 - 1.0) / 4.0,
            hermitian_eigenvalues(m).front() >= -kStateTolerance};
      }
  };

  // Each worker owns a disjoint row range; output order is independent of the count.
  workers = std::clamp<unsigned>(workers, 1u, 16u);
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = (grid_n + workers - 1) / workers;
  for (std::size_t b = 0; b < grid_n; b += chunk) {
    jobs.push_back(std::async(std::launch::async, fill_rows, b, std::min(grid_n, b + chunk)));
  }
  for (auto& j : jobs) j.get();
  return g;
}

/// Detection boundary radius sqrt(1 - c3^2) of the circle c1^2 + c2^2 = 1 - c3^2.
inline double bell_diagonal_boundary_radius(double c3) {
  return std::sqrt(std::max(0.0, 1.0 - c3 * c3));
}

struct IsotropicRow {
  std::size_t d;
  double threshold_purity;  // bisection result
  double threshold_analytic;  // 1/sqrt(d+1)
  double threshold_theory;  // LHS-model bound
  std::string_view annotation_source;
};

inline std::vector<IsotropicRow> isotropic_curve(std::span<const std::size_t> d_values) {
  std::vector<IsotropicRow> rows;
  for (std::size_t d : d_values) {
    if (d < 2) throw std::out_of_range("isotropic_curve: d must be >= 2");
    FamilySpec f{Family::Isotropic, 0.0, {}, d};
    const auto r = require_threshold(f, Direction::AtoB);
    rows.push_back({d, r.critical_p, 1.0 / std::sqrt(static_cast<double>(d + 1)),
                    references::isotropic_lhs_bound(d), references::kLhsBound});
  }
  return rows;
}

namespace csv {

inline std::string g9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline void write(std::ostream& os, std::span<const SweepPoint> pts) {
  os << "p,margin_a_to_b,margin_b_to_a\n";
  for (const auto& s : pts) os << g9(s.p) << ',' << g9(s.margin_a_to_b) << ',' << g9(s.margin_b_to_a) << '\n';
}

inline void write(std::ostream& os, const RegionGrid& g) {
  os << "c1,c2,c3,margin,psd_valid\n";
  for (const auto& c : g.cells) {
    os << g9(c.c1) << ',' << g9(c.c2) << ',' << g9(c.c3) << ',' << g9(c.margin_a_to_b) << ','
       << (c.psd_valid ? 1 : 0) << '\n';
  }
}

inline void write(std::ostream& os, std::span<const IsotropicRow> rows) {
  os << "d,threshold_purity,threshold_theory,annotation_source\n";
  for (const auto& r : rows) {
    os << r.d << ',' << g9(r.threshold_purity) << ',' << g9(r.threshold_theory) << ",\""
       << r.annotation_source << "\"\n";
  }
}

}  // namespace csv

}  // namespace steer
