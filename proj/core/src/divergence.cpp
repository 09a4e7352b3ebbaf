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

#include "qfdiv/divergence.hpp"

#include <cmath>
#include <limits>

namespace qfdiv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void validate_pair(const HermitianOperator& rho, const HermitianOperator& sigma,
                   const Tolerances& tol) {
  linalg::require_same_dim(rho, sigma, "rho/sigma");
  linalg::require_psd(rho, "rho", tol.psd_tol);
  linalg::require_psd(sigma, "sigma", tol.psd_tol);
  if (sigma.dim() == 0 || linalg::max_eigenvalue(sigma) <= 0.0) {
    throw Error(ErrorCode::ZeroSigma, "sigma must be nonzero");
  }
}

struct Reduction {
  HermitianOperator rho_tilde;
  double outside_mass = 0.0;
};

// rho~ with dust below the mass tolerance removed on both sides.
Reduction reduce(const HermitianOperator& rho, const HermitianOperator& sigma,
                 const Tolerances& tol) {
  Reduction r{linalg::schur_tilde(rho, sigma, tol.rank_tol(rho.dim())), 0.0};
  const double total = rho.trace();
  const double cutoff = tol.mass_tol * std::max(total, 0.0);
  r.outside_mass = total - r.rho_tilde.trace();
  if (r.outside_mass <= cutoff) r.outside_mass = 0.0;
  if (r.rho_tilde.trace() <= cutoff) r.rho_tilde = HermitianOperator::zero(rho.dim());
  return r;
}

HermitianOperator rn_unchecked(const HermitianOperator& rho, const HermitianOperator& sigma,
                               const Tolerances& tol) {
  const HermitianOperator s = linalg::gen_inverse_sqrt(sigma, tol.rank_tol(sigma.dim()));
  return HermitianOperator::symmetrized(s.matrix() * rho.matrix() * s.matrix());
}

double dominated_value(const HermitianOperator& rho, const HermitianOperator& sigma,
                       const DivergenceGenerator& f, const Tolerances& tol) {
  const HermitianOperator d = rn_unchecked(rho, sigma, tol);
  const HermitianOperator fd = linalg::apply_psd_function(d, f.eval());
  return (sigma.matrix() * fd.matrix()).trace().real();
}

}  // namespace

std::vector<double> ReverseTest::p() const {
  std::vector<double> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(a.p);
  return out;
}

std::vector<double> ReverseTest::q() const {
  std::vector<double> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(a.q);
  return out;
}

HermitianOperator ReverseTest::reconstruct_p() const {
  if (atoms.empty()) return HermitianOperator{};
  HermitianOperator acc = HermitianOperator::zero(atoms.front().output.dim());
  for (const auto& a : atoms) acc = acc + a.p * a.output;
  return acc;
}

HermitianOperator ReverseTest::reconstruct_q() const {
  if (atoms.empty()) return HermitianOperator{};
  HermitianOperator acc = HermitianOperator::zero(atoms.front().output.dim());
  for (const auto& a : atoms) acc = acc + a.q * a.output;
  return acc;
}

HermitianOperator rn_derivative(const HermitianOperator& rho, const HermitianOperator& sigma,
                                const Tolerances& tol) {
  validate_pair(rho, sigma, tol);
  if (!linalg::support_dominates(sigma, rho)) {
    throw Error(ErrorCode::SupportError, "supp rho is not contained in supp sigma");
  }
  return rn_unchecked(rho, sigma, tol);
}

DivergenceDetail d_prime_detail(const HermitianOperator& rho, const HermitianOperator& sigma,
                                const DivergenceGenerator& f, const Tolerances& tol) {
  validate_pair(rho, sigma, tol);
  Reduction r = reduce(rho, sigma, tol);

  DivergenceDetail out;
  out.rho_tilde_trace = r.rho_tilde.trace();
  out.outside_mass = r.outside_mass;
  ExtendedReal value(dominated_value(r.rho_tilde, sigma, f, tol));
  if (r.outside_mass > 0.0) value = value + r.outside_mass * recession_value(f);
  out.value = value;
  out.rho_tilde = std::move(r.rho_tilde);
  return out;
}

ExtendedReal d_prime(const HermitianOperator& rho, const HermitianOperator& sigma,
                     const DivergenceGenerator& f, const Tolerances& tol) {
  return d_prime_detail(rho, sigma, f, tol).value;
}

ExtendedReal d_max(const HermitianOperator& rho, const HermitianOperator& sigma,
                   const DivergenceGenerator& f, const Tolerances& tol) {
  if (!f.operator_convex()) {
    throw Error(ErrorCode::UnsupportedGenerator,
                "d_max requires an operator convex generator; '" + f.name() + "' is not flagged");
  }
  return d_prime(rho, sigma, f, tol);
}

ReverseTest minimal_reverse_test(const HermitianOperator& rho, const HermitianOperator& sigma,
                                 const Tolerances& tol) {
  validate_pair(rho, sigma, tol);
  const Reduction r = reduce(rho, sigma, tol);
  const Eigen::Index n = sigma.dim();

  const HermitianOperator d = rn_unchecked(r.rho_tilde, sigma, tol);
  const linalg::SpectralDecomposition spec = linalg::herm_eig(d, tol.cluster_tol);
  const ComplexMatrix sqrt_sigma = linalg::matrix_sqrt(sigma).matrix();

  double dmax = 0.0;
  for (const double v : spec.eigenvalues) dmax = std::max(dmax, v);
  const double floor = 64.0 * kEps * static_cast<double>(n) * dmax;
  const double q_floor = 64.0 * kEps * static_cast<double>(n) * sigma.trace();

  ReverseTest rt;
  for (std::size_t x = 0; x < spec.size(); ++x) {
    const ComplexMatrix sandwich = sqrt_sigma * spec.projectors[x].matrix() * sqrt_sigma;
    const double q = sandwich.trace().real();
    if (q <= q_floor) continue;
    const double ratio = spec.eigenvalues[x] <= floor ? 0.0 : spec.eigenvalues[x];
    ReverseTest::Atom atom;
    atom.label = "x" + std::to_string(rt.atoms.size() + 1);
    atom.output = HermitianOperator::symmetrized(sandwich / q);
    atom.q = q;
    atom.p = ratio * q;
    atom.ratio = ratio;
    rt.atoms.push_back(std::move(atom));
  }

  if (r.outside_mass > 0.0) {
    ReverseTest::Atom atom;
    atom.label = "x0";
    atom.output = (rho - r.rho_tilde) * (1.0 / r.outside_mass);
    atom.p = r.outside_mass;
    atom.q = 0.0;
    rt.atoms.push_back(std::move(atom));
  }
  return rt;
}

ExtendedReal reverse_test_value(const ReverseTest& rt, const DivergenceGenerator& f) {
  const std::vector<double> p = rt.p();
  const std::vector<double> q = rt.q();
  return classical_f_divergence(p, q, f);
}

std::vector<std::pair<double, ExtendedReal>> perturbation_limit_probe(
    const HermitianOperator& rho, const HermitianOperator& sigma, const DivergenceGenerator& f,
    const std::vector<double>& epsilons, const Tolerances& tol) {
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "epsilons must be strictly descending");
    }
  }
  std::vector<std::pair<double, ExtendedReal>> out;
  out.reserve(epsilons.size());
  const HermitianOperator id = HermitianOperator::identity(sigma.dim());
  for (const double eps : epsilons) out.emplace_back(eps, d_prime(rho, sigma + eps * id, f, tol));
  return out;
}

}  // namespace qfdiv
