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

// Density-matrix JSON file format:
//   {"dim_a": int, "dim_b": int, "re": [[...]], "im": [[...]]}
// with row-major square arrays of side dim_a * dim_b.

#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "steer/qmat.hpp"

namespace steer::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rounds to `digits` significant digits so the JSON writer emits at most that many.
inline double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::stod(buf);
}

/// Parses the matrix part only; the result still needs validation.
inline ComplexMatrix parse_matrix_json(const nlohmann::json& j, std::size_t& dim_a,
                                       std::size_t& dim_b) {
  if (!j.is_object()) throw ParseError("density matrix: top level must be an object");
  for (const char* key : {"dim_a", "dim_b", "re", "im"}) {
    if (!j.contains(key)) throw ParseError(std::string("density matrix: missing key '") + key + "'");
  }
  auto dim = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 2) {
      throw ParseError(std::string("density matrix: '") + key + "' must be an integer >= 2");
    }
    return static_cast<std::size_t>(v.get<long long>());
  };
  dim_a = dim("dim_a");
  dim_b = dim("dim_b");
  const std::size_t n = dim_a * dim_b;

  ComplexMatrix m(n, n);
  auto fill = [&](const char* key, bool imag) {
    const auto& rows = j.at(key);
    if (!rows.is_array() || rows.size() != n) {
      throw ParseError(std::string("density matrix: '") + key + "' must have " +
                       std::to_string(n) + " rows");
    }
    for (std::size_t r = 0; r < n; ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || row.size() != n) {
        throw ParseError(std::string("density matrix: '") + key + "' row " + std::to_string(r) +
                         " must have " + std::to_string(n) + " entries");
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (!row[c].is_number()) {
          throw ParseError(std::string("density matrix: '") + key + "' entry (" +
                           std::to_string(r) + "," + std::to_string(c) + ") is not a number");
        }
        const double v = row[c].get<double>();
        if (imag) m(r, c).imag(v); else m(r, c).real(v);
      }
    }
  };
  fill("re", false);
  fill("im", true);
  return m;
}

/// Throws ParseError on malformed input and InvalidStateError on invalid states.
inline DensityMatrix parse_density(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("density matrix: ") + e.what());
  }
  std::size_t da = 0, db = 0;
  auto m = parse_matrix_json(j, da, db);
  return DensityMatrix::from(std::move(m), da, db);
}

inline nlohmann::json to_json(const DensityMatrix& rho) {
  const std::size_t n = rho.dim();
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (std::size_t r = 0; r < n; ++r) {
    nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
    for (std::size_t c = 0; c < n; ++c) {
      rr.push_back(rho.matrix()(r, c).real());
      ii.push_back(rho.matrix()(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"dim_a", rho.dim_a()}, {"dim_b", rho.dim_b()}, {"re", std::move(re)},
          {"im", std::move(im)}};
}

/// Doubles are written in shortest round-trip form (at most 17 significant digits).
inline std::string serialize_density(const DensityMatrix& rho) { return to_json(rho).dump(); }

}  // namespace steer::io
