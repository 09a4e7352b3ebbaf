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

#include "qfdiv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

#include "qfdiv/rld.hpp"

namespace qfdiv::harness {

namespace ensembles {

HermitianOperator state(Eigen::Index dim, Eigen::Index rank, CounterRng& rng) {
  return random_state(dim, rank, rng());
}

HermitianOperator well_conditioned_state(Eigen::Index dim, double floor_mix, CounterRng& rng) {
  const HermitianOperator mixed = HermitianOperator::identity(dim) * (1.0 / static_cast<double>(dim));
  return state(dim, dim, rng) * (1.0 - floor_mix) + mixed * floor_mix;
}

HermitianOperator state_inside(const HermitianOperator& support, Eigen::Index rank, CounterRng& rng) {
  const linalg::EigenPairs ep = linalg::eigh(support);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < ep.values.size(); ++i) {
    if (ep.values(i) > 0.5) cols.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(cols.size());
  if (r == 0 || rank < 1 || rank > r) throw Error(ErrorCode::InvalidArgument, "state_inside rank");
  ComplexMatrix basis(support.dim(), r);
  for (Eigen::Index k = 0; k < r; ++k) basis.col(k) = ep.vectors.col(cols[static_cast<std::size_t>(k)]);
  const ComplexMatrix g = basis * ginibre(r, rank, rng);
  const ComplexMatrix m = g * g.adjoint();
  return HermitianOperator::symmetrized(m / m.trace().real());
}

Pair pair(Eigen::Index dim, SupportCase c, CounterRng& rng) {
  const auto d = static_cast<int>(dim);
  switch (c) {
    case SupportCase::FullRank:
      return {state(dim, dim, rng), state(dim, dim, rng)};
    case SupportCase::Dominated: {
      HermitianOperator sigma = state(dim, rng.uniform_int(1, d - 1), rng);
      const HermitianOperator pi = linalg::support_projector(sigma);
      const int r = static_cast<int>(std::lround(pi.trace()));
      HermitianOperator rho = state_inside(pi, rng.uniform_int(1, r), rng);
      return {std::move(rho), std::move(sigma)};
    }
    case SupportCase::Undominated: {
      HermitianOperator rho = state(dim, dim, rng);
      HermitianOperator sigma = state(dim, rng.uniform_int(1, d - 1), rng);
      return {std::move(rho), std::move(sigma)};
    }
    case SupportCase::RhoDeficient: {
      HermitianOperator rho = state(dim, rng.uniform_int(1, d - 1), rng);
      HermitianOperator sigma = state(dim, dim, rng);
      return {std::move(rho), std::move(sigma)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown support case");
}

Pair pair(Eigen::Index dim, CounterRng& rng) {
  return pair(dim, kAllSupportCases[rng.uniform_int(0, 3)], rng);
}

Pair commuting_pair(Eigen::Index dim, CounterRng& rng) {
  const ComplexMatrix u = haar_unitary(dim, rng);
  RealVector p(dim), q(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    p(i) = rng.uniform() < 0.25 ? 0.0 : rng.uniform(0.02, 1.0);
    q(i) = rng.uniform() < 0.25 ? 0.0 : rng.uniform(0.02, 1.0);
  }
  if (p.sum() == 0.0) p(rng.uniform_int(0, static_cast<int>(dim) - 1)) = 1.0;
  if (q.sum() == 0.0) q(rng.uniform_int(0, static_cast<int>(dim) - 1)) = 1.0;
  p /= p.sum();
  q /= q.sum();
  const auto conj = [&](const RealVector& v) {
    return HermitianOperator::symmetrized(u * v.cast<Complex>().asDiagonal() * u.adjoint());
  };
  return {conj(p), conj(q)};
}

HermitianOperator traceless_direction(const HermitianOperator& support, CounterRng& rng) {
  const Eigen::Index n = support.dim();
  const ComplexMatrix g = ginibre(n, n, rng);
  const ComplexMatrix p = support.matrix();
  ComplexMatrix h = p * (g + g.adjoint()) * p;
  const double r = p.trace().real();
  if (r > 0.5) h -= (h.trace().real() / r) * p;
  const double norm = h.norm();
  if (norm > 0.0) h /= norm;
  return HermitianOperator::symmetrized(h);
}

KrausChannel channel(Eigen::Index dim, CounterRng& rng) {
  const int env = rng.uniform_int(1, 3);
  return random_channel(dim, dim, env, rng());
}

}  // namespace ensembles

ExtendedReal classical_oracle(const HermitianOperator& rho, const HermitianOperator& sigma,
                              const DivergenceGenerator& f) {
  linalg::require_same_dim(rho, sigma, "classical_oracle");
  const double scale = std::max(1.0, linalg::op_norm(rho.matrix()) * linalg::op_norm(sigma.matrix()));
  if (linalg::commutator_norm(rho.matrix(), sigma.matrix()) > 1e-10 * scale) {
    throw Error(ErrorCode::NonCommuting, "rho and sigma do not commute");
  }
  const Eigen::Index n = rho.dim();
  // Joint eigenbasis: diagonalize sigma, then rho inside each eigenspace.
  const linalg::EigenPairs es = linalg::eigh(sigma);
  const double gap = 1e-8 * std::max(1e-300, es.values.cwiseAbs().maxCoeff());
  ComplexMatrix joint(n, n);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && es.values(end) - es.values(start) <= gap) ++end;
    const ComplexMatrix block = es.vectors.middleCols(start, end - start);
    const ComplexMatrix compressed = block.adjoint() * rho.matrix() * block;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> inner(0.5 * (compressed + compressed.adjoint()));
    joint.middleCols(start, end - start) = block * inner.eigenvectors();
    start = end;
  }
  std::vector<double> p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
  double pmax = 0.0, qmax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto v = joint.col(i);
    p[static_cast<std::size_t>(i)] = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    q[static_cast<std::size_t>(i)] = (v.adjoint() * sigma.matrix() * v)(0, 0).real();
    pmax = std::max(pmax, p[static_cast<std::size_t>(i)]);
    qmax = std::max(qmax, q[static_cast<std::size_t>(i)]);
  }
  const double rank_tol = kDefaultTolerances.rank_tol(n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= rank_tol * pmax) p[i] = 0.0;
    if (q[i] <= rank_tol * qmax) q[i] = 0.0;
  }
  return classical_f_divergence(p, q, f);
}

double umegaki_relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma) {
  const auto log = [](double y) { return std::log(y); };
  const HermitianOperator diff =
      linalg::apply_scalar_function(rho, log) - linalg::apply_scalar_function(sigma, log);
  return (rho.matrix() * diff.matrix()).trace().real();
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ExtendedReal abs_diff(ExtendedReal a, ExtendedReal b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite() || b.is_infinite()) return ExtendedReal::infinity();
  return std::abs(a.value() - b.value());
}

double min_eig(const HermitianOperator& a) { return linalg::min_eigenvalue(a); }

struct Context {
  const SuiteConfig& cfg;
  int dim;
  int trial;
  std::uint64_t seed;
  CounterRng rng;
  std::vector<DivergenceGenerator> generators;
  std::vector<TrialRecord> records;

  double tol(const std::string& property, double fallback) const {
    if (const auto it = cfg.tol_overrides.find(property); it != cfg.tol_overrides.end()) return it->second;
    if (const auto it = cfg.tol_overrides.find("*"); it != cfg.tol_overrides.end()) return it->second;
    return fallback;
  }

  // lhs <= rhs + tol
  // Recorded as lhs <= rhs + tol so the CSV margin is the slack.
  void leq(const std::string& property, ExtendedReal lhs, ExtendedReal rhs, double t) {
    const ExtendedReal bound = rhs + ExtendedReal(t);
    records.push_back({cfg.suite, property, dim, trial, seed, lhs, bound, leq_with_tol(lhs, rhs, t)});
  }
  void check(const std::string& property, ExtendedReal lhs, ExtendedReal rhs, bool pass) {
    records.push_back({cfg.suite, property, dim, trial, seed, lhs, rhs, pass});
  }
};

void suite_dpi(Context& c) {
  const auto pr = ensembles::pair(c.dim, c.rng);
  const KrausChannel ch = ensembles::channel(c.dim, c.rng);
  const KrausChannel u = KrausChannel::unitary(haar_unitary(c.dim, c.rng));
  for (const auto& f : c.generators) {
    const DpiResult r = dpi_check(pr.rho, pr.sigma, ch, f);
    c.leq("dpi", r.out, r.in, c.tol("dpi", 1e-8));
    const DpiResult ru = dpi_check(pr.rho, pr.sigma, u, f);
    c.leq("dpi-unitary", abs_diff(ru.in, ru.out), 0.0, c.tol("dpi-unitary", 1e-9));
  }
}

void suite_convexity(Context& c) {
  const auto a = ensembles::pair(c.dim, c.rng);
  const auto b = ensembles::pair(c.dim, c.rng);
  for (const auto& f : c.generators) {
    const ExtendedReal da = d_max(a.rho, a.sigma, f);
    const ExtendedReal db = d_max(b.rho, b.sigma, f);
    for (int k = 1; k <= 9; ++k) {
      const double w = 0.1 * k;
      const ExtendedReal mixed =
          d_max(a.rho * w + b.rho * (1.0 - w), a.sigma * w + b.sigma * (1.0 - w), f);
      // Finite generators may be negative: combine as plain reals when finite.
      const ExtendedReal rhs = (da.is_finite() && db.is_finite())
                                   ? ExtendedReal(w * da.value() + (1.0 - w) * db.value())
                                   : ExtendedReal::infinity();
      c.leq("joint-convexity", mixed, rhs, c.tol("joint-convexity", 1e-8));
    }
  }
}

void suite_sigma_monotonicity(Context& c) {
  const auto pr = ensembles::pair(c.dim, c.rng);
  const int rank = c.rng.uniform_int(1, c.dim);
  const HermitianOperator bigger = pr.sigma + ensembles::state(c.dim, rank, c.rng) * c.rng.uniform(0.01, 1.0);
  for (const auto& f : c.generators) {
    c.leq("sigma-monotonicity", d_max(pr.rho, bigger, f), d_max(pr.rho, pr.sigma, f),
          c.tol("sigma-monotonicity", 1e-8));
  }
}

void suite_perturbation_limit(Context& c) {
  const auto pr = ensembles::pair(c.dim, ensembles::SupportCase::Undominated, c.rng);
  const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  const auto neg_half = DivergenceGenerator::builtin("neg_power", 0.5);
  const auto square = DivergenceGenerator::builtin("square");

  for (const auto* f : {&neg_half, &square}) {
    const auto values = perturbation_limit_probe(pr.rho, pr.sigma, *f, eps);
    double worst_drop = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      const double prev = values[i - 1].second.value();
      const double cur = values[i].second.value();
      worst_drop = std::max(worst_drop, (prev - cur) / std::max(1.0, std::abs(prev)));
    }
    c.leq("perturbation-monotone", worst_drop, 0.0, c.tol("perturbation-monotone", 1e-10));
    if (f == &neg_half) {
      const ExtendedReal limit = d_max(pr.rho, pr.sigma, *f);
      c.leq("perturbation-limit", abs_diff(values.back().second, limit), 0.0,
            c.tol("perturbation-limit", 1e-4));
    } else {
      const double threshold = c.tol("perturbation-divergence", 1e6);
      c.check("perturbation-divergence", threshold, values.back().second,
              values.back().second.value() > threshold);
    }
  }
}

void suite_rho_tilde(Context& c) {
  const auto kase = c.trial % 2 == 0 ? ensembles::SupportCase::Undominated
                                     : ensembles::kAllSupportCases[c.rng.uniform_int(0, 3)];
  const auto pr = ensembles::pair(c.dim, kase, c.rng);
  const HermitianOperator tilde = linalg::schur_tilde(pr.rho, pr.sigma);
  c.leq("rho-minus-tilde-psd", -min_eig(pr.rho - tilde), 0.0, c.tol("rho-minus-tilde-psd", 1e-10));
  c.leq("tilde-psd", -min_eig(tilde), 0.0, c.tol("tilde-psd", 1e-10));
  const HermitianOperator pi = linalg::support_projector(pr.sigma);
  const ComplexMatrix outside = ComplexMatrix::Identity(c.dim, c.dim) - pi.matrix();
  c.leq("tilde-support", (outside * tilde.matrix()).cwiseAbs().maxCoeff(), 0.0,
        c.tol("tilde-support", 1e-10));

  if (linalg::min_eigenvalue(pr.rho) <= 1e-9) return;
  // Feasible rho_1: a random operator in supp sigma pushed to the boundary of
  // {X <= rho}, mixed with a scaled rho~.
  const int r = static_cast<int>(std::lround(pi.trace()));
  const HermitianOperator b = ensembles::state_inside(pi, c.rng.uniform_int(1, r), c.rng);
  const HermitianOperator rho_is = linalg::gen_inverse_sqrt(pr.rho);
  const double top = linalg::max_eigenvalue(
      HermitianOperator::symmetrized(rho_is.matrix() * b.matrix() * rho_is.matrix()));
  const double u = c.rng.uniform();
  const HermitianOperator rho1 = b * (u / top) + tilde * ((1.0 - u) * c.rng.uniform());
  c.leq("rho1-below-tilde", -min_eig(tilde - rho1), 0.0, c.tol("rho1-below-tilde", 1e-9));

  // The infimum form: any feasible rho_1 gives an upper bound on d_max.
  const double leftover = pr.rho.trace() - rho1.trace();
  for (const auto& f : c.generators) {
    const ExtendedReal upper =
        d_prime(rho1, pr.sigma, f) + std::max(0.0, leftover) * recession_value(f);
    c.leq("inf-form", d_max(pr.rho, pr.sigma, f), upper, c.tol("inf-form", 1e-8));
  }
}

void suite_umegaki(Context& c) {
  const auto pr = ensembles::pair(c.dim, ensembles::SupportCase::FullRank, c.rng);
  const auto f = DivergenceGenerator::builtin("xlogx");
  c.leq("umegaki-bound", umegaki_relative_entropy(pr.rho, pr.sigma), d_max(pr.rho, pr.sigma, f),
        c.tol("umegaki-bound", 1e-8));
}

void suite_reconstruction(Context& c) {
  const auto pr = ensembles::pair(c.dim, ensembles::kAllSupportCases[c.trial % 4], c.rng);
  const ReverseTest rt = minimal_reverse_test(pr.rho, pr.sigma);
  c.leq("reconstruct-rho", (rt.reconstruct_p() - pr.rho).max_abs(), 0.0, c.tol("reconstruct-rho", 1e-9));
  c.leq("reconstruct-sigma", (rt.reconstruct_q() - pr.sigma).max_abs(), 0.0,
        c.tol("reconstruct-sigma", 1e-9));
  double atom_defect = 0.0;
  for (const auto& a : rt.atoms) {
    atom_defect = std::max({atom_defect, std::abs(a.output.trace() - 1.0), -min_eig(a.output)});
  }
  c.leq("atom-states", atom_defect, 0.0, c.tol("atom-states", 1e-9));
  for (const auto& f : c.generators) {
    c.leq("value-identity", abs_diff(reverse_test_value(rt, f), d_max(pr.rho, pr.sigma, f)), 0.0,
          c.tol("value-identity", 1e-8));
  }
}

void suite_optimality(Context& c) {
  // Random reverse test (Gamma, p, q); its pair is (Gamma(p), Gamma(q)).
  const int atoms = c.rng.uniform_int(1, 2 * c.dim);
  std::vector<HermitianOperator> outputs;
  std::vector<double> p, q;
  for (int x = 0; x < atoms; ++x) {
    outputs.push_back(ensembles::state(c.dim, c.rng.uniform_int(1, c.dim), c.rng));
    p.push_back(c.rng.uniform() < 0.1 ? 0.0 : c.rng.uniform());
    q.push_back(c.rng.uniform() < 0.2 ? 0.0 : c.rng.uniform());
  }
  if (*std::max_element(q.begin(), q.end()) == 0.0) q.front() = 1.0;
  HermitianOperator rho = HermitianOperator::zero(c.dim);
  HermitianOperator sigma = HermitianOperator::zero(c.dim);
  for (int x = 0; x < atoms; ++x) {
    rho = rho + outputs[static_cast<std::size_t>(x)] * p[static_cast<std::size_t>(x)];
    sigma = sigma + outputs[static_cast<std::size_t>(x)] * q[static_cast<std::size_t>(x)];
  }
  for (const auto& f : c.generators) {
    c.leq("minimal-below-any", d_max(rho, sigma, f), classical_f_divergence(p, q, f),
          c.tol("minimal-below-any", 1e-8));
  }
}

void suite_equality(Context& c) {
  const auto kase = c.trial % 2 == 0 ? ensembles::SupportCase::FullRank : ensembles::SupportCase::Dominated;
  const auto pr = ensembles::pair(c.dim, kase, c.rng);
  const KrausChannel u = KrausChannel::unitary(haar_unitary(c.dim, c.rng));
  const KrausChannel anc = KrausChannel::append_ancilla(c.dim, ensembles::state(2, c.rng.uniform_int(1, 2), c.rng));
  const auto noisy_pair = ensembles::pair(c.dim, ensembles::SupportCase::FullRank, c.rng);
  const KrausChannel noisy = KrausChannel::depolarizing(c.dim, 0.3);

  const auto preserved = [](const EqualityReport& r) {
    return r.equal && r.reverse_test_preserved && r.p_match && r.q_match &&
           (r.multiplicative_domain_ok || !r.multiplicative_domain_applicable);
  };
  for (const auto& f : c.generators) {
    const EqualityReport ru = equality_check(pr.rho, pr.sigma, u, f);
    c.check("unitary-preserved", abs_diff(ru.value_in, ru.value_out), 0.0, preserved(ru));
    const EqualityReport ra = equality_check(pr.rho, pr.sigma, anc, f);
    c.check("ancilla-preserved", abs_diff(ra.value_in, ra.value_out), 0.0, preserved(ra));
    const EqualityReport rn = equality_check(noisy_pair.rho, noisy_pair.sigma, noisy, f);
    c.check("noisy-strict-decrease", rn.value_out, rn.value_in,
            !rn.equal && rn.value_out < rn.value_in);
  }

  // A dephasing measurement can only preserve d_max on commuting pairs.
  ensembles::Pair dp = ensembles::pair(c.dim, ensembles::SupportCase::FullRank, c.rng);
  if (c.trial % 2 == 0) {
    RealVector a(c.dim), b(c.dim);
    for (int i = 0; i < c.dim; ++i) {
      a(i) = c.rng.uniform(0.05, 1.0);
      b(i) = c.rng.uniform(0.05, 1.0);
    }
    dp = {HermitianOperator::diagonal(a / a.sum()), HermitianOperator::diagonal(b / b.sum())};
  }
  const auto xlogx = DivergenceGenerator::builtin("xlogx");
  const EqualityReport rd = equality_check(dp.rho, dp.sigma, KrausChannel::dephasing(c.dim), xlogx);
  const double comm = linalg::commutator_norm(dp.rho.matrix(), dp.sigma.matrix());
  c.check("dephasing-commutation", comm, 1e-8, !rd.equal || comm <= c.tol("dephasing-commutation", 1e-8));
}

void suite_rld(Context& c) {
  const HermitianOperator rho = ensembles::well_conditioned_state(c.dim, 0.5, c.rng);
  const HermitianOperator id = HermitianOperator::identity(c.dim);
  const HermitianOperator x = ensembles::traceless_direction(id, c.rng);
  const HermitianOperator y = ensembles::traceless_direction(id, c.rng);
  const double step = c.tol("rld-step", 1e-3);
  for (const auto& f : c.generators) {
    if (!f.second_deriv_at_1()) continue;
    const SecondDerivativeResult r = second_derivative_check(rho, x, y, f, step);
    c.leq("rld-identity", r.abs_err, 0.0, c.tol("rld-identity", 1e-4));
    // The three forms are compared at the default (conditioning-scaled) step.
    const SecondDerivativeResult v = second_derivative_check(rho, x, y, f);
    const double spread =
        std::max(std::abs(v.fd_sigma_variant - v.fd), std::abs(v.fd_joint_variant - v.fd));
    c.leq("rld-variants", spread, 0.0, c.tol("rld-variants", std::max(1e-4, 10.0 * v.step * v.step)));
    if (f.name() == "square") {
      c.leq("rld-exact-quadratic", std::abs(r.fd_joint_variant - r.analytic), 0.0,
            c.tol("rld-exact-quadratic", 1e-9));
    }
  }
}

void suite_lowner(Context& c) {
  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(0.1 * std::pow(100.0, k / 200.0));
  const auto xlogx = DivergenceGenerator::builtin("xlogx");
  const LownerForm form = lebesgue_lowner_form(1e-6, 1e8, 4000);
  c.leq("lowner-xlogx", lowner_quadrature_check(xlogx, form, grid), 0.0, c.tol("lowner-xlogx", 1e-3));

  const double t = std::exp(c.rng.uniform(-5.0, 5.0));
  LownerForm single;
  single.measure.push_back({t, 1.0});
  // psi_t's atom carries y/(1+t), so psi_t itself is recovered with a = -1/(1+t).
  single.a = -1.0 / (1.0 + t);
  c.leq("lowner-psi", lowner_quadrature_check(DivergenceGenerator::builtin("psi", t), single, grid),
        0.0, c.tol("lowner-psi", 1e-12));

  LownerForm quad;
  quad.b = 1.0;
  c.leq("lowner-square", lowner_quadrature_check(DivergenceGenerator::builtin("square"), quad, grid),
        0.0, c.tol("lowner-square", 0.0));
}

void suite_geometric_mean(Context& c) {
  const auto pr = ensembles::pair(c.dim, ensembles::SupportCase::FullRank, c.rng);
  const double alpha = c.rng.uniform(0.05, 0.95);
  const auto fa = DivergenceGenerator::builtin("neg_power", alpha);
  const auto fb = DivergenceGenerator::builtin("neg_power", 1.0 - alpha);
  c.leq("geometric-mean-swap", abs_diff(d_max(pr.rho, pr.sigma, fa), d_max(pr.sigma, pr.rho, fb)), 0.0,
        c.tol("geometric-mean-swap", 1e-8));
}

void suite_commutative(Context& c) {
  const auto pr = ensembles::commuting_pair(c.dim, c.rng);
  for (const auto& f : c.generators) {
    c.leq("commutative-recovery", abs_diff(d_max(pr.rho, pr.sigma, f), classical_oracle(pr.rho, pr.sigma, f)),
          0.0, c.tol("commutative-recovery", 1e-10));
  }
}

using SuiteFn = void (*)(Context&);

const std::vector<std::pair<std::string, SuiteFn>>& catalog() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"dpi", suite_dpi},
      {"convexity", suite_convexity},
      {"sigma-monotonicity", suite_sigma_monotonicity},
      {"perturbation-limit", suite_perturbation_limit},
      {"rho-tilde-maximality", suite_rho_tilde},
      {"umegaki-bound", suite_umegaki},
      {"reverse-test-reconstruction", suite_reconstruction},
      {"reverse-test-optimality", suite_optimality},
      {"equality-preservation", suite_equality},
      {"rld-second-derivative", suite_rld},
      {"lowner-quadrature", suite_lowner},
      {"geometric-mean-symmetry", suite_geometric_mean},
      {"commutative-oracle", suite_commutative},
  };
  return suites;
}

SuiteFn find_suite(const std::string& name) {
  for (const auto& [n, fn] : catalog()) {
    if (n == name) return fn;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void SuiteConfig::validate() const {
  find_suite(suite);
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "dims must be nonempty");
  for (const int d : dims) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "dims must be >= 2");
  }
  if (threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be >= 1");
  for (const auto& g : generators) DivergenceGenerator::parse(g);
}

double TrialRecord::margin() const {
  if (rhs.is_infinite()) return lhs.is_infinite() ? 0.0 : kInf;
  if (lhs.is_infinite()) return -kInf;
  return rhs.value() - lhs.value();
}

bool SuiteReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const auto& kv) { return kv.second.failed == 0; });
}

nlohmann::json SuiteReport::to_json(bool include_wall_time) const {
  nlohmann::json props = nlohmann::json::object();
  for (const auto& [name, st] : properties) {
    props[name] = {{"passed", st.passed},
                   {"failed", st.failed},
                   {"worst_violation", std::isfinite(st.worst_violation) ? nlohmann::json(st.worst_violation)
                                                                         : nlohmann::json("inf")},
                   {"failing_seeds", st.failing_seeds}};
  }
  nlohmann::json j = {{"suite", config.suite},
                      {"seed", config.seed},
                      {"trials", config.trials},
                      {"dims", config.dims},
                      {"generators", config.generators},
                      {"passed", all_passed()},
                      {"properties", props}};
  if (include_wall_time) j["wall_time_s"] = wall_time_s;
  return j;
}

std::string SuiteReport::to_csv() const {
  std::ostringstream os;
  os << "suite,dim,seed,lhs,rhs,margin,pass\n";
  for (const auto& r : records) {
    os << r.suite << '/' << r.property << ',' << r.dim << ',' << r.seed << ','
       << format_number(r.lhs.value()) << ',' << format_number(r.rhs.value()) << ','
       << format_number(r.margin()) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : catalog()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

std::vector<TrialRecord> run_trial(const SuiteConfig& cfg, int trial_index) {
  const SuiteFn fn = find_suite(cfg.suite);
  const std::uint64_t seed = CounterRng::derive_seed(cfg.seed, static_cast<std::uint64_t>(trial_index));
  Context ctx{cfg, cfg.dims[static_cast<std::size_t>(trial_index) % cfg.dims.size()], trial_index, seed,
              CounterRng(seed), {}, {}};
  for (const auto& g : cfg.generators) ctx.generators.push_back(DivergenceGenerator::parse(g));
  fn(ctx);
  return std::move(ctx.records);
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(cfg.trials));
  const auto run_range = [&](int begin, int step) {
    for (int i = begin; i < cfg.trials; i += step) per_trial[static_cast<std::size_t>(i)] = run_trial(cfg, i);
  };
  if (cfg.threads == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::future<void>> workers;
    for (int w = 0; w < cfg.threads; ++w) workers.push_back(std::async(std::launch::async, run_range, w, cfg.threads));
    for (auto& w : workers) w.get();
  }

  SuiteReport rep;
  rep.config = cfg;
  for (auto& recs : per_trial) {
    for (auto& r : recs) {
      PropertyStats& st = rep.properties[r.property];
      if (r.pass) {
        ++st.passed;
      } else {
        ++st.failed;
        st.worst_violation = std::max(st.worst_violation, -r.margin());
        if (st.failing_seeds.empty() || st.failing_seeds.back() != r.seed) st.failing_seeds.push_back(r.seed);
      }
      rep.records.push_back(std::move(r));
    }
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace qfdiv::harness
