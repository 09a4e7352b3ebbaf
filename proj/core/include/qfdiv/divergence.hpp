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

#ifndef QFDIV_DIVERGENCE_HPP
#define QFDIV_DIVERGENCE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfdiv/linalg.hpp"
#include "qfdiv/scalar_functions.hpp"

namespace qfdiv {

/// A finite classical-to-quantum simulation of a pair (rho, sigma):
/// Sum_x p(x) output_x = rho and Sum_x q(x) output_x = sigma, each output a
/// unit-trace PSD operator.
struct ReverseTest {
  struct Atom {
    std::string label;
    HermitianOperator output;
    double p = 0.0;
    double q = 0.0;
    /// Eigenvalue d_x of the Radon-Nikodym derivative; empty for the atom
    /// carrying the mass of rho outside supp sigma.
    std::optional<double> ratio;
  };

  std::vector<Atom> atoms;

  std::vector<double> p() const;
  std::vector<double> q() const;
  HermitianOperator reconstruct_p() const;
  HermitianOperator reconstruct_q() const;
};

/// Intermediate objects of a divergence evaluation, for reporting.
struct DivergenceDetail {
  ExtendedReal value;
  HermitianOperator rho_tilde;
  double rho_tilde_trace = 0.0;
  /// tr rho - tr rho_tilde, after the mass tolerance has been applied.
  double outside_mass = 0.0;
};

/// d(rho, sigma) = sigma^{-1/2} rho sigma^{-1/2} (generalized inverse).
/// Throws SupportError unless supp rho ⊆ supp sigma.
HermitianOperator rn_derivative(const HermitianOperator& rho, const HermitianOperator& sigma,
                                const Tolerances& tol = kDefaultTolerances);

/// tr sigma f(d(rho~, sigma)) + (tr rho - tr rho~) * lim f(y)/y.
/// Reduces to tr sigma f(d(rho, sigma)) when supp rho ⊆ supp sigma.
ExtendedReal d_prime(const HermitianOperator& rho, const HermitianOperator& sigma,
                     const DivergenceGenerator& f, const Tolerances& tol = kDefaultTolerances);
DivergenceDetail d_prime_detail(const HermitianOperator& rho, const HermitianOperator& sigma,
                                const DivergenceGenerator& f,
                                const Tolerances& tol = kDefaultTolerances);

/// Maximal f-divergence.  Equals d_prime for operator convex f; other
/// generators are rejected with UnsupportedGenerator.
ExtendedReal d_max(const HermitianOperator& rho, const HermitianOperator& sigma,
                   const DivergenceGenerator& f, const Tolerances& tol = kDefaultTolerances);

/// The reverse test attaining d_max: one atom per eigenprojector P_x of
/// d(rho~, sigma) with q(x) = tr sigma P_x, p(x) = d_x q(x) and output
/// sigma^{1/2} P_x sigma^{1/2} / q(x), plus an atom (rho - rho~)/(tr rho - tr rho~)
/// with q = 0 when rho has mass outside supp sigma.
ReverseTest minimal_reverse_test(const HermitianOperator& rho, const HermitianOperator& sigma,
                                 const Tolerances& tol = kDefaultTolerances);

/// D_f(p || q) of the test's weights.
ExtendedReal reverse_test_value(const ReverseTest& rt, const DivergenceGenerator& f);

/// d_prime(rho || sigma + eps 1) for each eps (positive, descending).
std::vector<std::pair<double, ExtendedReal>> perturbation_limit_probe(
    const HermitianOperator& rho, const HermitianOperator& sigma, const DivergenceGenerator& f,
    const std::vector<double>& epsilons, const Tolerances& tol = kDefaultTolerances);

}  // namespace qfdiv

#endif  // QFDIV_DIVERGENCE_HPP
