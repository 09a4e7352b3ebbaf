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

#include "qfdiv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qfdiv::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

ComplexMatrix outer_sum(const EigenPairs& ep, const std::function<double(Eigen::Index)>& weight) {
  const Eigen::Index n = ep.values.size();
  RealVector w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = weight(i);
  return ep.vectors * w.cast<Complex>().asDiagonal() * ep.vectors.adjoint();
}

double spectral_scale(const RealVector& values) {
  return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
}

}  // namespace

HermitianOperator SpectralDecomposition::reconstruct(const std::function<double(double)>& h) const {
  if (projectors.empty()) return HermitianOperator{};
  ComplexMatrix m = ComplexMatrix::Zero(projectors.front().dim(), projectors.front().dim());
  for (std::size_t x = 0; x < size(); ++x) m += h(eigenvalues[x]) * projectors[x].matrix();
  return HermitianOperator::symmetrized(m);
}

HermitianOperator SpectralDecomposition::reconstruct() const {
  return reconstruct([](double y) { return y; });
}

EigenPairs eigh(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidOperator, "eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectralDecomposition herm_eig(const HermitianOperator& a, double cluster_tol) {
  const EigenPairs ep = eigh(a);
  const Eigen::Index n = ep.values.size();
  const double gap = cluster_tol * spectral_scale(ep.values);

  SpectralDecomposition out;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && ep.values(end) - ep.values(start) <= gap) ++end;
    const Eigen::Index count = end - start;
    const auto block = ep.vectors.middleCols(start, count);
    out.eigenvalues.push_back(ep.values.segment(start, count).mean());
    out.projectors.push_back(HermitianOperator::symmetrized(block * block.adjoint()));
    out.multiplicities.push_back(static_cast<int>(count));
    start = end;
  }
  return out;
}

double max_eigenvalue(const HermitianOperator& a) {
  if (a.dim() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(a.matrix(), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .maxCoeff();
}

double min_eigenvalue(const HermitianOperator& a) {
  if (a.dim() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(a.matrix(), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

bool is_psd(const HermitianOperator& a, double tol) {
  if (a.dim() == 0) return true;
  const RealVector ev =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(a.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  return ev.minCoeff() >= -tol * std::max(1.0, spectral_scale(ev));
}

void require_psd(const HermitianOperator& a, const char* what, double tol) {
  if (!is_psd(a, tol)) {
    std::ostringstream os;
    os << what << " has a negative eigenvalue " << min_eigenvalue(a);
    throw Error(ErrorCode::NotPSD, os.str());
  }
}

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimensions " << a.dim() << " and " << b.dim() << " differ";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

HermitianOperator support_projector(const HermitianOperator& a, double rank_tol,
                                    std::optional<double> scale) {
  const EigenPairs ep = eigh(a);
  const double lmax = ep.values.size() == 0 ? 0.0 : ep.values.maxCoeff();
  if (ep.values.size() > 0 && ep.values.minCoeff() < -kDefaultTolerances.psd_tol * std::max(1.0, lmax)) {
    throw Error(ErrorCode::NotPSD, "support_projector of an operator with negative spectrum");
  }
  const double ref = scale.value_or(lmax);
  if (ref <= 0.0) return HermitianOperator::zero(a.dim());
  const double thr = rank_tol * ref;
  return HermitianOperator::symmetrized(
      outer_sum(ep, [&](Eigen::Index i) { return ep.values(i) > thr ? 1.0 : 0.0; }));
}

HermitianOperator support_projector(const HermitianOperator& a) {
  return support_projector(a, kDefaultTolerances.rank_tol(a.dim()));
}

bool support_dominates(const HermitianOperator& b, const HermitianOperator& a, double tol) {
  require_same_dim(a, b, "support_dominates");
  const HermitianOperator pa = support_projector(a);
  const HermitianOperator pb = support_projector(b);
  return (pb.matrix() * pa.matrix() - pa.matrix()).cwiseAbs().maxCoeff() <= tol;
}

HermitianOperator gen_inverse_sqrt(const HermitianOperator& a, double rank_tol) {
  require_psd(a, "gen_inverse_sqrt argument");
  const EigenPairs ep = eigh(a);
  const double thr = rank_tol * std::max(0.0, ep.values.size() ? ep.values.maxCoeff() : 0.0);
  return HermitianOperator::symmetrized(outer_sum(ep, [&](Eigen::Index i) {
    const double l = ep.values(i);
    return l > thr && l > 0.0 ? 1.0 / std::sqrt(l) : 0.0;
  }));
}

HermitianOperator gen_inverse_sqrt(const HermitianOperator& a) {
  return gen_inverse_sqrt(a, kDefaultTolerances.rank_tol(a.dim()));
}

HermitianOperator gen_inverse(const HermitianOperator& a, double rank_tol) {
  require_psd(a, "gen_inverse argument");
  const EigenPairs ep = eigh(a);
  const double thr = rank_tol * std::max(0.0, ep.values.size() ? ep.values.maxCoeff() : 0.0);
  return HermitianOperator::symmetrized(outer_sum(ep, [&](Eigen::Index i) {
    const double l = ep.values(i);
    return l > thr && l > 0.0 ? 1.0 / l : 0.0;
  }));
}

HermitianOperator matrix_sqrt(const HermitianOperator& a) {
  require_psd(a, "matrix_sqrt argument");
  return apply_psd_function(a, [](double y) { return std::sqrt(y); });
}

HermitianOperator apply_scalar_function(const HermitianOperator& a,
                                        const std::function<double(double)>& h) {
  const EigenPairs ep = eigh(a);
  return HermitianOperator::symmetrized(outer_sum(ep, [&](Eigen::Index i) {
    const double v = h(ep.values(i));
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "function is undefined at eigenvalue " << ep.values(i);
      throw Error(ErrorCode::DomainError, os.str());
    }
    return v;
  }));
}

HermitianOperator apply_psd_function(const HermitianOperator& a,
                                     const std::function<double(double)>& h) {
  const EigenPairs ep = eigh(a);
  const double lmax = ep.values.size() ? std::max(0.0, ep.values.maxCoeff()) : 0.0;
  const double floor = 64.0 * kEps * static_cast<double>(std::max<Eigen::Index>(1, a.dim())) * lmax;
  return HermitianOperator::symmetrized(outer_sum(ep, [&](Eigen::Index i) {
    const double l = ep.values(i) <= floor ? 0.0 : ep.values(i);
    const double v = h(l);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "function is undefined at eigenvalue " << l;
      throw Error(ErrorCode::DomainError, os.str());
    }
    return v;
  }));
}

HermitianOperator schur_tilde(const HermitianOperator& rho, const HermitianOperator& sigma,
                              double rank_tol) {
  require_same_dim(rho, sigma, "schur_tilde");
  require_psd(rho, "rho");
  require_psd(sigma, "sigma");
  const Eigen::Index n = rho.dim();
  const double rho_scale = std::max(0.0, max_eigenvalue(rho));
  if (rho_scale == 0.0) return rho;

  const ComplexMatrix pi_sigma = support_projector(sigma, rank_tol).matrix();
  const ComplexMatrix outside = ComplexMatrix::Identity(n, n) - pi_sigma;

  // Complement block: the part of rho living outside supp sigma, measured
  // against rho's own scale so roundoff leakage does not count as support.
  const EigenPairs block = eigh(HermitianOperator::symmetrized(outside * rho.matrix() * outside));
  const double thr = rank_tol * rho_scale;
  ComplexMatrix pi_bar = ComplexMatrix::Zero(n, n);
  ComplexMatrix rho22_inv = ComplexMatrix::Zero(n, n);
  bool any = false;
  for (Eigen::Index i = 0; i < block.values.size(); ++i) {
    if (block.values(i) <= thr) continue;
    any = true;
    const auto v = block.vectors.col(i);
    pi_bar += v * v.adjoint();
    rho22_inv += (1.0 / block.values(i)) * (v * v.adjoint());
  }
  if (!any) return rho;

  const ComplexMatrix rho11 = pi_sigma * rho.matrix() * pi_sigma;
  const ComplexMatrix rho12 = pi_sigma * rho.matrix() * pi_bar;
  return HermitianOperator::symmetrized(rho11 - rho12 * rho22_inv * rho12.adjoint());
}

HermitianOperator schur_tilde(const HermitianOperator& rho, const HermitianOperator& sigma) {
  return schur_tilde(rho, sigma, kDefaultTolerances.rank_tol(rho.dim()));
}

bool block_positivity_check(const ComplexMatrix& x, const ComplexMatrix& c, const ComplexMatrix& y,
                            double tol) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || c.rows() != x.rows() ||
      c.cols() != y.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "block_positivity_check");
  }
  const Eigen::Index n = x.rows() + y.rows();
  ComplexMatrix m(n, n);
  m << x, c, c.adjoint(), y;
  const HermitianOperator block(m);
  const RealVector ev =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(block.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  return ev.minCoeff() >= -tol * std::max(1.0, spectral_scale(ev));
}

double hs_norm(const ComplexMatrix& a) { return a.norm(); }

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues()(0);
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return op_norm(a * b - b * a);
}

}  // namespace qfdiv::linalg
