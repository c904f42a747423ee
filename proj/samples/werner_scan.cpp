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

// Walks the two-qubit Werner family and prints where steering shows up.

#include <cstdio>

#include "steer/steer.hpp"

int main() {
  for (double p : steer::linspace(0.0, 1.0, 11)) {
    const auto rho = steer::werner(p);
    const auto v = steer::purity_criterion(rho, steer::Direction::AtoB);
    std::printf("p=%.1f  margin=%+.4f  %s\n", p, v.margin, v.detected ? "steerable" : "-");
  }

  steer::FamilySpec spec;
  spec.family = steer::Family::Werner;
  const auto t = steer::require_threshold(spec, steer::Direction::AtoB);
  std::printf("critical p = %.9f\n", t.critical_p);
}
