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

#include "doctest.h"
#include "oracles.hpp"
#include "qfdiv/harness.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/random.hpp"

using namespace qfdiv;
using linalg::herm_eig;

namespace {

HermitianOperator herm(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return HermitianOperator(m);
}

HermitianOperator diag(std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (const double x : d) v(i++) = x;
  return HermitianOperator::diagonal(v);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

HermitianOperator random_hermitian(Eigen::Index n, CounterRng& rng) {
  return HermitianOperator::symmetrized(ginibre(n, n, rng));
}

HermitianOperator random_psd(Eigen::Index n, Eigen::Index rank, CounterRng& rng) {
  const ComplexMatrix g = ginibre(n, rank, rng);
  return HermitianOperator::symmetrized(g * g.adjoint());
}

const HermitianOperator kPauliX = herm({{0.0, 1.0}, {1.0, 0.0}});
const HermitianOperator kPlus = herm({{0.5, 0.5}, {0.5, 0.5}});
const HermitianOperator kZeroKet = diag({1.0, 0.0});

}  // namespace

TEST_SUITE("hermitian operator") {
  TEST_CASE("rejects non-Hermitian input") {
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(HermitianOperator{m}, Error);
    try {
      HermitianOperator{m};
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidOperator);
    }
  }

  TEST_CASE("tiny asymmetry is absorbed and symmetrized") {
    ComplexMatrix m(2, 2);
    m << 1.0, Complex(0.5, 1e-14), Complex(0.5, 0.0), 2.0;
    const HermitianOperator h(m);
    CHECK(h.matrix() == h.matrix().adjoint());
  }

  TEST_CASE("extended reals") {
    const ExtendedReal inf = ExtendedReal::infinity();
    CHECK((inf + 1.0).is_infinite());
    CHECK((0.0 * inf) == ExtendedReal(0.0));
    CHECK(ExtendedReal(1.0) < inf);
    CHECK(leq_with_tol(inf, inf, 0.0));
    CHECK_FALSE(leq_with_tol(inf, 1e300, 1.0));
    CHECK_THROWS_AS(ExtendedReal(-std::numeric_limits<double>::infinity()), Error);
    CHECK_THROWS_AS(ExtendedReal(std::nan("")), Error);
    CHECK(inf.to_string() == "inf");
  }
}

TEST_SUITE("herm_eig") {
  TEST_CASE("identity has one eigenvalue with a rank-2 projector") {
    const auto sd = herm_eig(HermitianOperator::identity(2));
    REQUIRE(sd.size() == 1);
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(sd.multiplicities[0] == 2);
    CHECK(max_abs_diff(sd.projectors[0].matrix(), ComplexMatrix::Identity(2, 2)) < 1e-14);
  }

  TEST_CASE("nearly equal eigenvalues merge into one cluster") {
    const auto a = diag({1.0, 1.0 + 1e-12});
    // Closed-form 2x2 spectrum: the gap is far below the clustering threshold.
    const auto ev = oracle::eig2(a.matrix());
    REQUIRE((ev[1] - ev[0]) / ev[1] < 1e-8);
    const auto sd = herm_eig(a, 1e-8);
    REQUIRE(sd.size() == 1);
    CHECK(sd.eigenvalues[0] == doctest::Approx(0.5 * (ev[0] + ev[1])).epsilon(1e-15));
    CHECK(sd.multiplicities[0] == 2);
  }

  TEST_CASE("Pauli X splits into (1 -+ X)/2") {
    const auto ev = oracle::eig2(kPauliX.matrix());
    const auto sd = herm_eig(kPauliX);
    REQUIRE(sd.size() == 2);
    CHECK(sd.eigenvalues[0] == doctest::Approx(ev[0]));
    CHECK(sd.eigenvalues[1] == doctest::Approx(ev[1]));
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const Eigen::Vector2cd v = oracle::eigvec2(kPauliX.matrix(), ev[k]);
      CHECK(max_abs_diff(sd.projectors[k].matrix(), v * v.adjoint()) < 1e-14);
    }
    CHECK(max_abs_diff(sd.projectors[0].matrix(), 0.5 * (id - kPauliX.matrix())) < 1e-14);
    CHECK(max_abs_diff(sd.projectors[1].matrix(), 0.5 * (id + kPauliX.matrix())) < 1e-14);
  }

  TEST_CASE("reconstruction and projector algebra on random Hermitian matrices") {
    CounterRng rng(20261016);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Eigen::Index n = rng.uniform_int(2, 8);
      const HermitianOperator a = random_hermitian(n, rng);
      const auto sd = herm_eig(a);
      const double scale = linalg::op_norm(a.matrix());
      worst = std::max(worst, max_abs_diff(sd.reconstruct().matrix(), a.matrix()) / scale);

      ComplexMatrix sum = ComplexMatrix::Zero(n, n);
      for (std::size_t x = 0; x < sd.size(); ++x) {
        const ComplexMatrix& p = sd.projectors[x].matrix();
        sum += p;
        CHECK(max_abs_diff(p * p, p) < 1e-10);
        for (std::size_t y = x + 1; y < sd.size(); ++y) {
          CHECK((p * sd.projectors[y].matrix()).cwiseAbs().maxCoeff() < 1e-10);
        }
      }
      CHECK(max_abs_diff(sum, ComplexMatrix::Identity(n, n)) < 1e-10);
      for (std::size_t x = 1; x < sd.size(); ++x) CHECK(sd.eigenvalues[x - 1] < sd.eigenvalues[x]);
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("deterministic for fixed input") {
    CounterRng rng(7);
    const HermitianOperator a = random_hermitian(5, rng);
    const auto s1 = herm_eig(a);
    const auto s2 = herm_eig(a);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t x = 0; x < s1.size(); ++x) {
      CHECK(s1.eigenvalues[x] == s2.eigenvalues[x]);
      CHECK(s1.projectors[x].matrix() == s2.projectors[x].matrix());
    }
  }
}

TEST_SUITE("supports") {
  TEST_CASE("support projector examples") {
    const auto tol = kDefaultTolerances.rank_tol(2);
    CHECK(max_abs_diff(linalg::support_projector(diag({0.5, 0.0}), tol).matrix(),
                       diag({1.0, 0.0}).matrix()) < 1e-15);
    CHECK(linalg::support_projector(HermitianOperator::zero(2), tol).max_abs() == 0.0);
    CHECK(max_abs_diff(linalg::support_projector(kPlus, tol).matrix(), kPlus.matrix()) < 1e-14);
  }

  TEST_CASE("support projector rejects a negative spectrum") {
    CHECK_THROWS_AS(linalg::support_projector(diag({1.0, -0.5})), Error);
  }

  TEST_CASE("support dominance") {
    CHECK(linalg::support_dominates(HermitianOperator::identity(2), diag({1.0, 0.0})));
    CHECK_FALSE(linalg::support_dominates(kZeroKet, kPlus));
    CHECK(linalg::support_dominates(kPlus, kPlus));
    CHECK_THROWS_AS(linalg::support_dominates(diag({1.0, -1.0}), kPlus), Error);
  }

  TEST_CASE("random projector properties") {
    CounterRng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::Index n = rng.uniform_int(2, 8);
      const HermitianOperator a = random_psd(n, rng.uniform_int(1, static_cast<int>(n)), rng);
      const HermitianOperator pi = linalg::support_projector(a);
      CHECK(max_abs_diff(pi.matrix() * pi.matrix(), pi.matrix()) < 1e-10);
      CHECK(max_abs_diff(pi.matrix() * a.matrix(), a.matrix()) < 1e-10 * a.max_abs());
    }
  }
}

TEST_SUITE("functional calculus") {
  TEST_CASE("generalized inverse square root examples") {
    CHECK(max_abs_diff(linalg::gen_inverse_sqrt(diag({4.0, 0.0})).matrix(), diag({0.5, 0.0}).matrix()) <
          1e-15);
    CHECK(max_abs_diff(linalg::gen_inverse_sqrt(HermitianOperator::identity(2)).matrix(),
                       ComplexMatrix::Identity(2, 2)) < 1e-15);
    // Rank one with eigenvalue 9 on |+>: the inverse square root is |+><+| / 3.
    const HermitianOperator nine_plus = 9.0 * kPlus;
    REQUIRE(oracle::eig2(nine_plus.matrix())[1] == doctest::Approx(9.0));
    CHECK(max_abs_diff(linalg::gen_inverse_sqrt(nine_plus).matrix(), kPlus.matrix() / 3.0) < 1e-14);
  }

  TEST_CASE("inverse square root sandwich gives the support projector") {
    CounterRng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      const Eigen::Index n = rng.uniform_int(2, 8);
      const HermitianOperator a = random_psd(n, rng.uniform_int(1, static_cast<int>(n)), rng);
      const ComplexMatrix s = linalg::gen_inverse_sqrt(a).matrix();
      const ComplexMatrix pi = linalg::support_projector(a).matrix();
      CHECK(max_abs_diff(s * a.matrix() * s, pi) < 1e-9);
      CHECK(max_abs_diff(s * s * a.matrix(), pi) < 1e-9);
    }
  }

  TEST_CASE("scalar functions act on the spectrum") {
    const auto sq = linalg::apply_scalar_function(diag({2.0, 3.0}), [](double y) { return y * y; });
    CHECK(max_abs_diff(sq.matrix(), diag({4.0, 9.0}).matrix()) < 1e-14);

    const auto psi1 = linalg::apply_scalar_function(diag({1.0, 3.0}), [](double y) { return -y / (y + 1.0); });
    CHECK(psi1.matrix()(0, 0).real() == doctest::Approx(-1.0 / 2.0));
    CHECK(psi1.matrix()(1, 1).real() == doctest::Approx(-3.0 / 4.0));

    CounterRng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      const HermitianOperator a = random_psd(rng.uniform_int(2, 8), 2, rng);
      const auto same = linalg::apply_scalar_function(a, [](double y) { return y; });
      CHECK(max_abs_diff(same.matrix(), a.matrix()) < 1e-10 * std::max(1.0, a.max_abs()));
    }
  }

  TEST_CASE("undefined values are a domain error") {
    try {
      linalg::apply_scalar_function(diag({-1.0, 1.0}), [](double y) { return std::log(y); });
      FAIL("expected DomainError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DomainError);
    }
  }

  TEST_CASE("matrix square root matches the closed 2x2 form") {
    CounterRng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const HermitianOperator a = random_psd(2, 2, rng);
      CHECK(max_abs_diff(linalg::matrix_sqrt(a).matrix(), oracle::sqrt2(a.matrix())) < 1e-12);
    }
  }
}

TEST_SUITE("schur complement") {
  TEST_CASE("pure state against a different pure support reduces to zero") {
    const auto tilde = linalg::schur_tilde(kZeroKet, kPlus);
    CHECK(tilde.max_abs() < 1e-15);
  }

  TEST_CASE("dominated input is returned unchanged") {
    CounterRng rng(17);
    const HermitianOperator sigma = random_psd(3, 3, rng);
    const HermitianOperator rho = random_psd(3, 2, rng);
    CHECK(max_abs_diff(linalg::schur_tilde(rho, sigma).matrix(), rho.matrix()) < 1e-15);
  }

  TEST_CASE("block-diagonal rho keeps its sigma block") {
    const auto tilde = linalg::schur_tilde(diag({0.3, 0.7}), diag({0.9, 0.0}));
    CHECK(max_abs_diff(tilde.matrix(), diag({0.3, 0.0}).matrix()) < 1e-15);
  }

  TEST_CASE("maximality and positivity on random pairs") {
    CounterRng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::Index n = rng.uniform_int(2, 6);
      const auto pr = harness::ensembles::pair(n, harness::ensembles::SupportCase::Undominated, rng);
      const HermitianOperator tilde = linalg::schur_tilde(pr.rho, pr.sigma);
      CHECK(linalg::min_eigenvalue(pr.rho - tilde) >= -1e-10);
      CHECK(linalg::min_eigenvalue(tilde) >= -1e-10);
      const ComplexMatrix outside =
          ComplexMatrix::Identity(n, n) - linalg::support_projector(pr.sigma).matrix();
      CHECK((outside * tilde.matrix()).cwiseAbs().maxCoeff() < 1e-10);

      // Any rho_1 = c * rho~ with c <= 1 sits below rho~; c > 1 leaves rho.
      CHECK(linalg::is_psd(pr.rho - 0.5 * tilde, 1e-10));
      if (tilde.trace() > 1e-6) CHECK_FALSE(linalg::is_psd(pr.rho - 1.5 * tilde, 1e-10));
    }
  }

  TEST_CASE("block positivity") {
    const ComplexMatrix one = ComplexMatrix::Identity(1, 1);
    CHECK(linalg::block_positivity_check(one, ComplexMatrix::Zero(1, 1), one));
    // [[1, 2], [2, 1]] has eigenvalues 3 and -1 by the closed 2x2 formula.
    REQUIRE(oracle::eig2(1.0, 2.0, 1.0)[0] == doctest::Approx(-1.0));
    CHECK_FALSE(linalg::block_positivity_check(one, 2.0 * one, one));
    REQUIRE(oracle::eig2(1.0, 1.0, 1.0)[0] == doctest::Approx(0.0));
    CHECK(linalg::block_positivity_check(one, one, one));
    CHECK_THROWS_AS(linalg::block_positivity_check(one, ComplexMatrix::Zero(2, 1), one), Error);
  }

  TEST_CASE("schur complement agrees with the block-positivity characterization") {
    // rho - rho~ >= 0 is the statement [[rho11 - rho~, rho12], [rho21, rho22]] >= 0.
    CounterRng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
      const auto pr = harness::ensembles::pair(4, harness::ensembles::SupportCase::Undominated, rng);
      const HermitianOperator tilde = linalg::schur_tilde(pr.rho, pr.sigma);
      const ComplexMatrix pi = linalg::support_projector(pr.sigma).matrix();
      const ComplexMatrix bar = ComplexMatrix::Identity(4, 4) - pi;
      const ComplexMatrix& r = pr.rho.matrix();
      CHECK(linalg::block_positivity_check(pi * r * pi - tilde.matrix(), pi * r * bar, bar * r * bar, 1e-9));
    }
  }
}
