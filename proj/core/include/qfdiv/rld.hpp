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

#ifndef QFDIV_RLD_HPP
#define QFDIV_RLD_HPP

#include <optional>

#include "qfdiv/divergence.hpp"

namespace qfdiv {

/// A traceless Hermitian direction living in the support of a unit-trace base
/// state, with the largest step that keeps base + s * direction PSD.
struct TangentPerturbation {
  HermitianOperator base;
  HermitianOperator direction;
  double step_bound = 0.0;

  /// Throws InvalidArgument (trace), SupportError (support) or NotPSD (base).
  static TangentPerturbation make(const HermitianOperator& base, const HermitianOperator& direction);
};

/// tr X rho^{-1} Y with the generalized inverse.  Throws SupportError when X
/// or Y reaches outside supp rho.
Complex rld_metric(const HermitianOperator& rho, const HermitianOperator& x,
                   const HermitianOperator& y, const Tolerances& tol = kDefaultTolerances);

struct SecondDerivativeResult {
  double step = 0.0;
  /// Mixed central difference of D'(rho + sX || rho - tY).
  double fd = 0.0;
  /// f''(1) Re J(X, Y).
  double analytic = 0.0;
  double abs_err = 0.0;
  double imag_metric = 0.0;
  /// Mixed differences of D'(rho || rho + sX + tY) and D'(rho + sX + tY || rho).
  double fd_sigma_variant = 0.0;
  double fd_joint_variant = 0.0;
};

/// Default step: 1e-3 * lambda_min(rho on its support) / max(|X|, |Y|).
double default_rld_step(const HermitianOperator& rho, const HermitianOperator& x,
                        const HermitianOperator& y, const Tolerances& tol = kDefaultTolerances);

/// Finite-difference check of the Hessian identity for D'.  Throws StepError
/// when a perturbed argument leaves the PSD cone and UnsupportedGenerator when
/// f has no declared f''(1).
SecondDerivativeResult second_derivative_check(const HermitianOperator& rho,
                                               const HermitianOperator& x,
                                               const HermitianOperator& y,
                                               const DivergenceGenerator& f,
                                               std::optional<double> step = std::nullopt,
                                               const Tolerances& tol = kDefaultTolerances);

}  // namespace qfdiv

#endif  // QFDIV_RLD_HPP
