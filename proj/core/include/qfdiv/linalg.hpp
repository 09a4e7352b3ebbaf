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

#ifndef QFDIV_LINALG_HPP
#define QFDIV_LINALG_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qfdiv/types.hpp"

namespace qfdiv::linalg {

/// Raw eigenpairs, eigenvalues ascending, eigenvectors as columns.
struct EigenPairs {
  RealVector values;
  ComplexMatrix vectors;
};

/// Eigenprojectors of a Hermitian operator with near-equal eigenvalues merged.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending, one per cluster
  std::vector<HermitianOperator> projectors;
  std::vector<int> multiplicities;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  /// Sum_x h(lambda_x) P_x.
  HermitianOperator reconstruct(const std::function<double(double)>& h) const;
  HermitianOperator reconstruct() const;
};

EigenPairs eigh(const HermitianOperator& a);

/// Eigenvalues whose gap to the first member of the current cluster is at most
/// cluster_tol * max|lambda| share one projector; the cluster value is the mean.
SpectralDecomposition herm_eig(const HermitianOperator& a,
                               double cluster_tol = kDefaultTolerances.cluster_tol);

double max_eigenvalue(const HermitianOperator& a);
double min_eigenvalue(const HermitianOperator& a);

bool is_psd(const HermitianOperator& a, double tol = kDefaultTolerances.psd_tol);
/// Throws NotPSD when a has an eigenvalue below -tol * max(1, lambda_max).
void require_psd(const HermitianOperator& a, const char* what,
                 double tol = kDefaultTolerances.psd_tol);

/// Projector onto eigenvectors with eigenvalue > rank_tol * scale.  scale
/// defaults to lambda_max(a); pass a reference scale when a is itself a
/// compression whose own lambda_max may be roundoff.
HermitianOperator support_projector(const HermitianOperator& a, double rank_tol,
                                    std::optional<double> scale = std::nullopt);
HermitianOperator support_projector(const HermitianOperator& a);

/// supp a ⊆ supp b.
bool support_dominates(const HermitianOperator& b, const HermitianOperator& a,
                       double tol = 1e-9);

/// a^{-1/2} on supp a, zero on the kernel.
HermitianOperator gen_inverse_sqrt(const HermitianOperator& a, double rank_tol);
HermitianOperator gen_inverse_sqrt(const HermitianOperator& a);
/// Moore-Penrose inverse of a PSD operator.
HermitianOperator gen_inverse(const HermitianOperator& a, double rank_tol);
HermitianOperator matrix_sqrt(const HermitianOperator& a);

/// Spectral functional calculus.  Throws DomainError if h yields a non-finite
/// value on the spectrum.
HermitianOperator apply_scalar_function(const HermitianOperator& a,
                                        const std::function<double(double)>& h);

/// Functional calculus on a PSD operator: eigenvalues at or below the
/// roundoff floor (64 * eps * dim * lambda_max) are taken as exactly zero.
HermitianOperator apply_psd_function(const HermitianOperator& a,
                                     const std::function<double(double)>& h);

/// Schur-complement reduction of rho onto supp sigma: the largest PSD operator
/// below rho supported in supp sigma.  Returns rho when supp rho ⊆ supp sigma.
HermitianOperator schur_tilde(const HermitianOperator& rho, const HermitianOperator& sigma,
                              double rank_tol);
HermitianOperator schur_tilde(const HermitianOperator& rho, const HermitianOperator& sigma);

/// [[X, C], [C^dagger, Y]] >= 0.
bool block_positivity_check(const ComplexMatrix& x, const ComplexMatrix& c,
                            const ComplexMatrix& y, double tol = 1e-12);

double hs_norm(const ComplexMatrix& a);
double op_norm(const ComplexMatrix& a);
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws DimensionMismatch unless a and b are both dim x dim.
void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* what);

}  // namespace qfdiv::linalg

#endif  // QFDIV_LINALG_HPP
