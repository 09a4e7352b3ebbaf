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

#ifndef QFDIV_TYPES_HPP
#define QFDIV_TYPES_HPP

#include <complex>
#include <compare>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "qfdiv/error.hpp"

namespace qfdiv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Numerical knobs shared by the whole library.
struct Tolerances {
  /// Relative numerical-rank threshold per dimension (rank_tol = dim * this).
  double rank_tol_per_dim = 1e-12;
  /// Relative eigenvalue gap below which eigenprojectors are merged.
  double cluster_tol = 1e-8;
  /// Relative trace mass below which rho - rho_tilde counts as zero.
  double mass_tol = 1e-10;
  /// Allowed relative negative eigenvalue before an operator is "not PSD".
  double psd_tol = 1e-9;

  double rank_tol(Eigen::Index dim) const { return static_cast<double>(dim) * rank_tol_per_dim; }
};

inline const Tolerances kDefaultTolerances{};

/// Dense complex matrix with M = M^dagger (within 1e-12 * max(1, |M|_max)).
///
/// Construction validates the invariant and stores the exactly symmetrized
/// matrix, so downstream code can rely on bitwise Hermiticity.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const ComplexMatrix& m);

  /// Symmetrizes (M + M^dagger)/2 without checking; for results of algebra
  /// that is Hermitian in exact arithmetic.
  static HermitianOperator symmetrized(const ComplexMatrix& m);
  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator zero(Eigen::Index dim);
  static HermitianOperator diagonal(const RealVector& diag);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace().real(); }
  double max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;
  friend HermitianOperator operator*(double s, const HermitianOperator& a) { return a * s; }

 private:
  struct Unchecked {};
  HermitianOperator(const ComplexMatrix& m, Unchecked) : m_(m) {}

  ComplexMatrix m_;
};

/// Value in (-inf, +inf]; divergences never reach -inf.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double v);  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedReal infinity() { return ExtendedReal(Inf{}); }

  constexpr bool is_finite() const noexcept { return !inf_; }
  constexpr bool is_infinite() const noexcept { return inf_; }
  /// The finite value, or +inf as a double.
  constexpr double value() const noexcept {
    return inf_ ? std::numeric_limits<double>::infinity() : v_;
  }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b);
  friend ExtendedReal operator*(double s, ExtendedReal a);  // s >= 0; 0 * inf = 0
  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend std::partial_ordering operator<=>(ExtendedReal a, ExtendedReal b) {
    return a.value() <=> b.value();
  }

  std::string to_string() const;

 private:
  struct Inf {};
  constexpr explicit ExtendedReal(Inf) : inf_(true) {}

  double v_ = 0.0;
  bool inf_ = false;
};

/// a <= b + tol in the extended order (inf <= inf holds).
bool leq_with_tol(ExtendedReal a, ExtendedReal b, double tol);

}  // namespace qfdiv

#endif  // QFDIV_TYPES_HPP
