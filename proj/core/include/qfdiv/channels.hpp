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

#ifndef QFDIV_CHANNELS_HPP
#define QFDIV_CHANNELS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qfdiv/divergence.hpp"

namespace qfdiv {

/// CPTP map A -> Sum_i K_i A K_i^dagger with Sum_i K_i^dagger K_i = 1.
class KrausChannel {
 public:
  /// Throws InvalidArgument on inconsistent shapes or a trace-preservation
  /// defect above 1e-10.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus);

  static KrausChannel identity(Eigen::Index dim);
  static KrausChannel unitary(const ComplexMatrix& u);
  /// Kraus {|i><j| / sqrt(d)}: every input goes to tr(A) 1/d.
  static KrausChannel completely_depolarizing(Eigen::Index dim);
  /// A -> (1-p) A + p tr(A) 1/dim.
  static KrausChannel depolarizing(Eigen::Index dim, double p);
  /// Qubit depolarizing A -> (1-p) A + p tr(A) 1/2 in the Pauli Kraus form.
  static KrausChannel qubit_depolarizing(double p);
  /// Dephasing in the computational basis.
  static KrausChannel dephasing(Eigen::Index dim);
  /// A -> A ⊗ ancilla for a fixed state `ancilla`.
  static KrausChannel append_ancilla(Eigen::Index dim, const HermitianOperator& ancilla);
  /// A -> V A V^dagger for an isometry V (e.g. a direct-sum embedding).
  static KrausChannel isometry(const ComplexMatrix& v);

  Eigen::Index dim_in() const noexcept { return dim_in_; }
  Eigen::Index dim_out() const noexcept { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  ComplexMatrix apply(const ComplexMatrix& a) const;
  HermitianOperator apply(const HermitianOperator& a) const;
  /// Heisenberg picture Sum_i K_i^dagger B K_i (unital).
  ComplexMatrix adjoint_apply(const ComplexMatrix& b) const;
  HermitianOperator adjoint_apply(const HermitianOperator& b) const;

  /// Composition: (this ∘ first)(A) = this(first(A)).
  KrausChannel after(const KrausChannel& first) const;

 private:
  std::vector<ComplexMatrix> kraus_;
  Eigen::Index dim_in_ = 0;
  Eigen::Index dim_out_ = 0;
};

/// Lambda_sigma(Z) = Lambda(sigma)^{-1/2} Lambda(sigma^{1/2} Z sigma^{1/2}) Lambda(sigma)^{-1/2}.
HermitianOperator lambda_sigma(const KrausChannel& ch, const HermitianOperator& sigma,
                               const HermitianOperator& z,
                               const Tolerances& tol = kDefaultTolerances);

struct DpiResult {
  ExtendedReal in;
  ExtendedReal out;
  bool holds = false;
};

/// d_max before and after the channel; holds iff out <= in + 1e-8.
DpiResult dpi_check(const HermitianOperator& rho, const HermitianOperator& sigma,
                    const KrausChannel& ch, const DivergenceGenerator& f,
                    const Tolerances& tol = kDefaultTolerances);

struct EqualityReport {
  ExtendedReal value_in;
  ExtendedReal value_out;
  bool equal = false;
  /// Lambda_sigma(h(d)) = h(Lambda_sigma(d)) for every eigenvalue indicator h.
  bool multiplicative_domain_ok = false;
  /// False when the generator's Loewner measure lacks full support, in which
  /// case multiplicative_domain_ok is computed but carries no implication.
  bool multiplicative_domain_applicable = true;
  bool reverse_test_preserved = false;
  bool p_match = false;
  bool q_match = false;
  /// sigma singular: the sub-checks are reported, not inferred from.
  bool sigma_singular = false;
  double worst_multiplicative_defect = 0.0;
  double worst_atom_defect = 0.0;
  double worst_p_defect = 0.0;
  double worst_q_defect = 0.0;
};

struct EqualityTolerances {
  /// |in - out| <= max(value_abs, value_rel * |in|).
  double value_abs = 1e-8;
  double value_rel = 1e-8;
  /// Operator-level sub-checks (max-entry norm).
  double operator_tol = 1e-8;
  double weight_tol = 1e-10;
};

/// Compares d_max(rho||sigma) with d_max(Lambda rho||Lambda sigma) and runs
/// the structural sub-checks.  Throws InfiniteDivergence when d_max(rho||sigma)
/// is infinite and UnsupportedGenerator for generators not flagged operator
/// convex.
EqualityReport equality_check(const HermitianOperator& rho, const HermitianOperator& sigma,
                              const KrausChannel& ch, const DivergenceGenerator& f,
                              const EqualityTolerances& etol = {},
                              const Tolerances& tol = kDefaultTolerances);

/// V(Z) = Lambda^dagger(Z Lambda(sigma)^{-1/2}) sigma^{1/2}, Z on the output space.
ComplexMatrix v_operator(const KrausChannel& ch, const HermitianOperator& sigma,
                         const ComplexMatrix& z, const Tolerances& tol = kDefaultTolerances);
/// V^dagger(Z) = Lambda(Z sigma^{1/2}) Lambda(sigma)^{-1/2}, Z on the input space.
ComplexMatrix v_adjoint(const KrausChannel& ch, const HermitianOperator& sigma,
                        const ComplexMatrix& z, const Tolerances& tol = kDefaultTolerances);

/// Stinespring channel from a Haar isometry C^{dim_in} -> C^{dim_out} ⊗ C^{env_dim}.
KrausChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index env_dim,
                            std::uint64_t seed);

/// G G^dagger / tr(G G^dagger) with G a dim x rank complex Gaussian matrix.
HermitianOperator random_state(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);

}  // namespace qfdiv

#endif  // QFDIV_CHANNELS_HPP
