// Copyright 2026 The qfdiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qfdiv/harness.hpp"

using namespace qfdiv;
using namespace qfdiv::harness;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvalidArgument;
}

HermitianOperator diag(std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (const double x : d) v(i++) = x;
  return HermitianOperator::diagonal(v);
}

SuiteConfig config(const std::string& suite, int trials) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.trials = trials;
  return cfg;
}

}  // namespace

TEST_SUITE("classical oracle") {
  const auto kXlogx = DivergenceGenerator::builtin("xlogx");

  TEST_CASE("values") {
    const ExtendedReal v = classical_oracle(diag({0.5, 0.5}), diag({0.25, 0.75}), kXlogx);
    CHECK(v.value() == doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)).epsilon(1e-15));
    CHECK(v.value() == doctest::Approx(0.143841).epsilon(1e-5));
    CHECK(classical_oracle(diag({0.3, 0.7}), diag({0.3, 0.7}), kXlogx).value() ==
          doctest::Approx(0.0).scale(1.0));
  }

  TEST_CASE("mass outside the support uses the recession constant") {
    const auto root = DivergenceGenerator::builtin("neg_power", 1.0);
    const ExtendedReal v = classical_oracle(diag({0.4, 0.6}), diag({1.0, 0.0}), root);
    // -(0.4) for the overlap, plus 0.6 * (-1).
    CHECK(v.value() == doctest::Approx(-0.4 - 0.6));
    CHECK(classical_oracle(diag({0.4, 0.6}), diag({1.0, 0.0}), kXlogx).is_infinite());
  }

  TEST_CASE("non-commuting input is rejected") {
    ComplexMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(code_of([&] { classical_oracle(diag({1.0, 0.0}), HermitianOperator(plus), kXlogx); }) ==
          ErrorCode::NonCommuting);
  }
}

TEST_SUITE("suite runner") {
  TEST_CASE("config validation") {
    CHECK(code_of([] { run_suite(config("dpi", 0)); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] {
            auto cfg = config("dpi", 1);
            cfg.dims = {1};
            run_suite(cfg);
          }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { run_suite(config("nosuch", 1)); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] {
            auto cfg = config("dpi", 1);
            cfg.generators = {"cosh"};
            run_suite(cfg);
          }) == ErrorCode::UnsupportedGenerator);
    CHECK(suite_names().size() == 13);
  }

  TEST_CASE("data processing suite passes at the reference seed") {
    SuiteConfig cfg = config("dpi", 100);
    cfg.dims = {2, 3};
    cfg.seed = 42;
    const SuiteReport rep = run_suite(cfg);
    CHECK(rep.all_passed());
    int total = 0;
    for (const auto& [name, st] : rep.properties) total += st.passed + st.failed;
    CHECK(total >= 100);
  }

  TEST_CASE("reports are deterministic and thread-count independent") {
    for (const auto& name : {"convexity", "reverse-test-reconstruction", "rld-second-derivative"}) {
      CAPTURE(name);
      SuiteConfig cfg = config(name, 12);
      cfg.seed = 7;
      const std::string a = run_suite(cfg).to_json(false).dump();
      const std::string b = run_suite(cfg).to_json(false).dump();
      CHECK(a == b);
      cfg.threads = 3;
      CHECK(run_suite(cfg).to_json(false).dump() == a);
      cfg.threads = 1;
      cfg.seed = 8;
      CHECK(run_suite(cfg).to_json(false).dump() != a);
    }
  }

  TEST_CASE("a single trial reproduces from its index") {
    SuiteConfig cfg = config("sigma-monotonicity", 6);
    const SuiteReport rep = run_suite(cfg);
    const auto again = run_trial(cfg, 4);
    REQUIRE_FALSE(again.empty());
    const auto it = std::find_if(rep.records.begin(), rep.records.end(),
                                 [&](const TrialRecord& r) { return r.trial == 4; });
    REQUIRE(it != rep.records.end());
    CHECK(it->seed == again.front().seed);
    CHECK(it->lhs == again.front().lhs);
    CHECK(it->rhs == again.front().rhs);
  }

  TEST_CASE("csv export") {
    const SuiteReport rep = run_suite(config("commutative-oracle", 3));
    std::istringstream in(rep.to_csv());
    std::string line;
    std::getline(in, line);
    CHECK(line == "suite,dim,seed,lhs,rhs,margin,pass");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(line.rfind("commutative-oracle/", 0) == 0);
      CHECK(std::count(line.begin(), line.end(), ',') == 6);
    }
    CHECK(rows == static_cast<int>(rep.records.size()));
  }

  TEST_CASE("a zero tolerance override surfaces failures") {
    SuiteConfig cfg = config("commutative-oracle", 20);
    cfg.tol_overrides["*"] = -1.0;
    const SuiteReport rep = run_suite(cfg);
    CHECK_FALSE(rep.all_passed());
    CHECK_FALSE(rep.properties.begin()->second.failing_seeds.empty());
  }

  TEST_CASE("margins") {
    TrialRecord r;
    r.lhs = 1.0;
    r.rhs = 1.5;
    CHECK(r.margin() == 0.5);
    r.rhs = ExtendedReal::infinity();
    CHECK(r.margin() == INFINITY);
    r.lhs = ExtendedReal::infinity();
    CHECK(r.margin() == 0.0);
    r.rhs = 1.0;
    CHECK(r.margin() == -INFINITY);
  }
}

TEST_SUITE("ensembles") {
  TEST_CASE("support cases") {
    CounterRng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index n = rng.uniform_int(2, 5);
      const auto dom = ensembles::pair(n, ensembles::SupportCase::Dominated, rng);
      CHECK(linalg::support_dominates(dom.sigma, dom.rho));
      CHECK(linalg::min_eigenvalue(dom.sigma) < 1e-12);
      const auto und = ensembles::pair(n, ensembles::SupportCase::Undominated, rng);
      CHECK_FALSE(linalg::support_dominates(und.sigma, und.rho));
      for (const auto& s : {dom.rho, dom.sigma, und.rho, und.sigma}) {
        CHECK(s.trace() == doctest::Approx(1.0));
        CHECK(linalg::is_psd(s));
      }
      const auto com = ensembles::commuting_pair(n, rng);
      CHECK(linalg::commutator_norm(com.rho.matrix(), com.sigma.matrix()) < 1e-12);
    }
  }

  TEST_CASE("traceless directions are unit and supported") {
    CounterRng rng(6);
    const HermitianOperator p = diag({1.0, 1.0, 0.0});
    for (int trial = 0; trial < 20; ++trial) {
      const HermitianOperator x = ensembles::traceless_direction(p, rng);
      CHECK(std::abs(x.trace()) < 1e-14);
      CHECK(linalg::hs_norm(x.matrix()) == doctest::Approx(1.0));
      CHECK(x.matrix().row(2).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}
