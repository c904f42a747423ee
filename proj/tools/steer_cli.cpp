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

// steer: purity-criterion steering checks from the command line.
//
// Exit codes: 0 success, 1 self-test failure, 2 input error. Detection status
// is reported in the output, never through the exit code.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steer/steer.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelftest = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

steer::Family family_or_throw(const std::string& name) {
  auto f = steer::parse_family(name);
  if (!f) {
    throw InputError("unknown family '" + name +
                     "' (werner, bell-diagonal, asymmetric, isotropic, free-entangled)");
  }
  return *f;
}

std::string fixed9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

struct FamilyArgs {
  std::string name;
  double p = 0.0;
  std::vector<double> c{0.0, 0.0, 0.0};
  std::size_t dim = 3;

  void bind(CLI::App* app, bool with_p) {
    app->add_option("family", name, "werner | bell-diagonal | asymmetric | isotropic | free-entangled")
        ->required();
    if (with_p) app->add_option("--p", p, "mixing parameter in [0, 1]");
    app->add_option("--c", c, "Bell-diagonal correlations c1,c2,c3 (each in [-1, 1])")
        ->delimiter(',')
        ->expected(3);
    app->add_option("--dim", dim, "local dimension d >= 2 (isotropic only)");
  }

  steer::FamilySpec spec() const {
    steer::FamilySpec s;
    s.family = family_or_throw(name);
    s.p = p;
    s.c = {c[0], c[1], c[2]};
    s.d = dim;
    if (s.family == steer::Family::Isotropic && dim < 2) throw InputError("--dim must be >= 2");
    if (s.family == steer::Family::BellDiagonal) {
      for (double x : c)
        if (!(std::abs(x) <= 1.0)) throw InputError("--c entries must lie in [-1, 1]");
    }
    return s;
  }
};

steer::Direction parse_direction(const std::string& s) {
  return s == "b-to-a" ? steer::Direction::BtoA : steer::Direction::AtoB;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steering detection by the purity criterion"};
  app.require_subcommand(1);

  // check
  std::string check_file;
  std::string check_direction = "both";
  std::string check_format = "json";
  auto* check = app.add_subcommand("check", "evaluate a density-matrix JSON file ('-' for stdin)");
  check->add_option("file", check_file)->required();
  check->add_option("--direction", check_direction)
      ->check(CLI::IsMember({"both", "a-to-b", "b-to-a"}));
  check->add_option("--format", check_format)->check(CLI::IsMember({"json", "text"}));

  // family
  FamilyArgs family_args;
  auto* family = app.add_subcommand("family", "emit a family state as density-matrix JSON");
  family_args.bind(family, true);

  // threshold
  FamilyArgs threshold_args;
  std::string threshold_direction = "a-to-b";
  std::size_t prescan = 101;
  auto* threshold = app.add_subcommand("threshold", "critical mixing parameter by bisection");
  threshold_args.bind(threshold, false);
  threshold->add_option("--direction", threshold_direction)
      ->check(CLI::IsMember({"both", "a-to-b", "b-to-a"}));
  threshold->add_option("--prescan", prescan, "pre-scan grid points")->check(CLI::Range(2, 100000));

  // scan
  auto* scan = app.add_subcommand("scan", "emit CSV plot data");
  scan->require_subcommand(1);
  FamilyArgs sweep_args;
  std::size_t sweep_points = 101;
  auto* scan_sweep = scan->add_subcommand("sweep", "margins over an even p grid on [0, 1]");
  sweep_args.bind(scan_sweep, false);
  scan_sweep->add_option("--points", sweep_points)->check(CLI::Range(2, 1000000));
  double bd_c3 = -0.6;
  std::size_t bd_grid = 401;
  auto* scan_bd = scan->add_subcommand("bell-diagonal", "(c1, c2) grid at fixed c3");
  scan_bd->add_option("--c3", bd_c3)->check(CLI::Range(-1.0, 1.0));
  scan_bd->add_option("--grid", bd_grid)->check(CLI::Range(2, 5001));
  std::vector<std::size_t> iso_dims{2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto* scan_iso = scan->add_subcommand("isotropic", "isotropic thresholds against d");
  scan_iso->add_option("--dims", iso_dims)->delimiter(',')->check(CLI::Range(2, 64));

  // estimate
  std::string est_file;
  std::uint64_t est_shots = 1000000;
  std::uint64_t est_seed = 1;
  std::string est_direction = "a-to-b";
  auto* estimate = app.add_subcommand("estimate", "simulate two-copy purity measurements");
  estimate->add_option("file", est_file)->required();
  estimate->add_option("--shots", est_shots)->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 62));
  estimate->add_option("--seed", est_seed);
  estimate->add_option("--direction", est_direction)->check(CLI::IsMember({"a-to-b", "b-to-a"}));

  // selftest
  steer::SelftestOptions st_opt;
  std::string st_fault;
  auto* selftest = app.add_subcommand("selftest", "verify the LOO identities and estimator law");
  selftest->add_option("--seed", st_opt.seed);
  selftest->add_option("--states", st_opt.random_states)->check(CLI::Range(1, 10000000));
  selftest->add_option("--inject-fault", st_fault, "negative control")
      ->check(CLI::IsMember({"unnormalized-loo"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) {
      const auto rho = steer::io::parse_density(read_input(check_file));
      const auto report = steer::full_report(rho);
      if (check_format == "text") {
        std::cout << steer::render_text(report);
      } else {
        auto j = steer::to_json(report);
        if (check_direction == "a-to-b") j["b_to_a"] = nullptr;
        if (check_direction == "b-to-a") j["a_to_b"] = nullptr;
        std::cout << j.dump(2) << "\n";
      }
      return kExitOk;
    }
    if (*family) {
      std::cout << steer::io::serialize_density(family_args.spec().state()) << "\n";
      return kExitOk;
    }
    if (*threshold) {
      auto spec = threshold_args.spec();
      steer::ThresholdOptions opt;
      opt.prescan_points = prescan;
      auto run = [&](steer::Direction d) { return steer::require_threshold(spec, d, 0.0, 1.0, opt); };
      if (threshold_direction == "both") {
        for (auto d : {steer::Direction::AtoB, steer::Direction::BtoA}) {
          std::cout << steer::to_string(d) << ' ' << fixed9(run(d).critical_p) << "\n";
        }
      } else {
        std::cout << fixed9(run(parse_direction(threshold_direction)).critical_p) << "\n";
      }
      return kExitOk;
    }
    if (*scan_sweep) {
      const auto pts = steer::sweep(sweep_args.spec(), steer::linspace(0.0, 1.0, sweep_points));
      steer::csv::write(std::cout, pts);
      return kExitOk;
    }
    if (*scan_bd) {
      steer::csv::write(std::cout, steer::bell_diagonal_boundary(bd_c3, bd_grid));
      std::cerr << "detection boundary: c1^2 + c2^2 = " << 1.0 - bd_c3 * bd_c3
                << " (radius " << steer::bell_diagonal_boundary_radius(bd_c3) << ")\n";
      return kExitOk;
    }
    if (*scan_iso) {
      steer::csv::write(std::cout, steer::isotropic_curve(iso_dims));
      return kExitOk;
    }
    if (*estimate) {
      const auto rho = steer::io::parse_density(read_input(est_file));
      const auto v = steer::estimated_verdict(rho, parse_direction(est_direction), est_shots, est_seed);
      std::cout << steer::to_json(v).dump(2) << "\n";
      std::cerr << "note: simulated outcomes; shot split, 3-sigma rule and error model are "
                   "tool choices, not part of the criterion\n";
      return kExitOk;
    }
    if (*selftest) {
      st_opt.inject_unnormalized_loo = st_fault == "unnormalized-loo";
      const auto report = steer::run_selftest(st_opt);
      for (const auto& s : report.suites) {
        std::fprintf(stderr, "%-24s cases %6zu  max residual %.3e  (tol %.0e)  %s\n", s.name.c_str(),
                     s.cases, s.max_residual, s.tolerance, s.passed() ? "ok" : "FAIL");
      }
      std::cout << steer::to_json(report).dump(2) << "\n";
      return report.passed() ? kExitOk : kExitSelftest;
    }
  } catch (const steer::InvalidStateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& v : e.violations()) {
      std::cerr << "  " << steer::to_string(v.kind) << ": residual " << v.residual << "\n";
    }
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
