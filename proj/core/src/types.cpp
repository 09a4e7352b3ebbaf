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

#include "qfdiv/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfdiv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidOperator: return "InvalidOperator";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SupportError: return "SupportError";
    case ErrorCode::ZeroSigma: return "ZeroSigma";
    case ErrorCode::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorCode::MissingRecession: return "MissingRecession";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InfiniteDivergence: return "InfiniteDivergence";
    case ErrorCode::StepError: return "StepError";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidOperator, "matrix is not square");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidOperator, "matrix has non-finite entries");
  }
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  const double asym = m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "matrix is not Hermitian (|M - M^dagger|_max = " << asym << ")";
    throw Error(ErrorCode::InvalidOperator, os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::symmetrized(const ComplexMatrix& m) {
  return HermitianOperator(0.5 * (m + m.adjoint()), Unchecked{});
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::diagonal(const RealVector& diag) {
  return HermitianOperator(diag.cast<Complex>().asDiagonal().toDenseMatrix(), Unchecked{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "operator +");
  return HermitianOperator(m_ + o.m_, Unchecked{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "operator -");
  return HermitianOperator(m_ - o.m_, Unchecked{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(m_ * s, Unchecked{});
}

ExtendedReal::ExtendedReal(double v) {
  if (std::isnan(v)) throw Error(ErrorCode::DomainError, "NaN is not an extended real");
  if (v == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::DomainError, "-inf is not representable");
  }
  if (v == std::numeric_limits<double>::infinity()) {
    inf_ = true;
  } else {
    v_ = v;
  }
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
  if (a.inf_ || b.inf_) return ExtendedReal::infinity();
  return ExtendedReal(a.v_ + b.v_);
}

ExtendedReal operator*(double s, ExtendedReal a) {
  if (s < 0.0) throw Error(ErrorCode::DomainError, "negative scaling of an extended real");
  if (a.inf_) return s == 0.0 ? ExtendedReal(0.0) : ExtendedReal::infinity();
  return ExtendedReal(s * a.v_);
}

std::string ExtendedReal::to_string() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v_;
  return os.str();
}

bool leq_with_tol(ExtendedReal a, ExtendedReal b, double tol) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.value() <= b.value() + tol;
}

}  // namespace qfdiv
