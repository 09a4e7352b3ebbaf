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

#include "qfdiv/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qfdiv/random.hpp"

namespace qfdiv {

namespace {

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_nonzero(const HermitianOperator& sigma) {
  if (sigma.dim() == 0 || linalg::max_eigenvalue(sigma) <= 0.0) {
    throw Error(ErrorCode::ZeroSigma, "sigma must be nonzero");
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorCode::InvalidArgument, "channel needs at least one Kraus operator");
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  if (dim_in_ == 0 || dim_out_ == 0) throw Error(ErrorCode::InvalidArgument, "empty Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw Error(ErrorCode::InvalidArgument, "Kraus operators have inconsistent shapes");
    }
    sum += k.adjoint() * k;
  }
  const double defect = max_abs(sum - ComplexMatrix::Identity(dim_in_, dim_in_));
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "Kraus operators are not trace preserving (defect " << defect << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

KrausChannel KrausChannel::identity(Eigen::Index dim) {
  return KrausChannel({ComplexMatrix::Identity(dim, dim)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) { return KrausChannel({u}); }

KrausChannel KrausChannel::completely_depolarizing(Eigen::Index dim) {
  std::vector<ComplexMatrix> ks;
  const double s = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
      k(i, j) = s;
      ks.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(ks));
}

KrausChannel KrausChannel::depolarizing(Eigen::Index dim, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "depolarizing p out of range");
  std::vector<ComplexMatrix> ks{std::sqrt(1.0 - p) * ComplexMatrix::Identity(dim, dim)};
  if (p > 0.0) {
    for (auto& k : completely_depolarizing(dim).kraus_) ks.push_back(std::sqrt(p) * k);
  }
  return KrausChannel(std::move(ks));
}

KrausChannel KrausChannel::qubit_depolarizing(double p) {
  if (!(p >= 0.0 && p <= 4.0 / 3.0)) throw Error(ErrorCode::InvalidArgument, "depolarizing p out of range");
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const double a = std::sqrt(1.0 - 3.0 * p / 4.0);
  const double b = std::sqrt(p / 4.0);
  return KrausChannel({a * ComplexMatrix::Identity(2, 2), b * x, b * y, b * z});
}

KrausChannel KrausChannel::dephasing(Eigen::Index dim) {
  std::vector<ComplexMatrix> ks;
  for (Eigen::Index i = 0; i < dim; ++i) {
    ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
    k(i, i) = 1.0;
    ks.push_back(std::move(k));
  }
  return KrausChannel(std::move(ks));
}

KrausChannel KrausChannel::append_ancilla(Eigen::Index dim, const HermitianOperator& ancilla) {
  linalg::require_psd(ancilla, "ancilla");
  const linalg::EigenPairs ep = linalg::eigh(ancilla);
  const Eigen::Index m = ancilla.dim();
  const double total = ep.values.sum();
  std::vector<ComplexMatrix> ks;
  for (Eigen::Index e = 0; e < m; ++e) {
    const double w = ep.values(e) / total;
    if (w <= 0.0) continue;
    // K_e = 1 ⊗ sqrt(w_e) |v_e>, mapping C^dim -> C^dim ⊗ C^m.
    ComplexMatrix k = ComplexMatrix::Zero(dim * m, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index a = 0; a < m; ++a) k(i * m + a, i) = std::sqrt(w) * ep.vectors(a, e);
    }
    ks.push_back(std::move(k));
  }
  return KrausChannel(std::move(ks));
}

KrausChannel KrausChannel::isometry(const ComplexMatrix& v) { return KrausChannel({v}); }

ComplexMatrix KrausChannel::apply(const ComplexMatrix& a) const {
  if (a.rows() != dim_in_ || a.cols() != dim_in_) {
    throw Error(ErrorCode::DimensionMismatch, "channel input dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out += k * a * k.adjoint();
  return out;
}

HermitianOperator KrausChannel::apply(const HermitianOperator& a) const {
  return HermitianOperator::symmetrized(apply(a.matrix()));
}

ComplexMatrix KrausChannel::adjoint_apply(const ComplexMatrix& b) const {
  if (b.rows() != dim_out_ || b.cols() != dim_out_) {
    throw Error(ErrorCode::DimensionMismatch, "channel output dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) out += k.adjoint() * b * k;
  return out;
}

HermitianOperator KrausChannel::adjoint_apply(const HermitianOperator& b) const {
  return HermitianOperator::symmetrized(adjoint_apply(b.matrix()));
}

KrausChannel KrausChannel::after(const KrausChannel& first) const {
  if (first.dim_out_ != dim_in_) throw Error(ErrorCode::DimensionMismatch, "channel composition");
  std::vector<ComplexMatrix> ks;
  for (const auto& k2 : kraus_) {
    for (const auto& k1 : first.kraus_) ks.push_back(k2 * k1);
  }
  return KrausChannel(std::move(ks));
}

HermitianOperator lambda_sigma(const KrausChannel& ch, const HermitianOperator& sigma,
                               const HermitianOperator& z, const Tolerances& tol) {
  if (sigma.dim() != ch.dim_in() || z.dim() != ch.dim_in()) {
    throw Error(ErrorCode::DimensionMismatch, "lambda_sigma");
  }
  require_nonzero(sigma);
  const ComplexMatrix s = linalg::matrix_sqrt(sigma).matrix();
  const HermitianOperator out_sigma = ch.apply(sigma);
  const ComplexMatrix w = linalg::gen_inverse_sqrt(out_sigma, tol.rank_tol(out_sigma.dim())).matrix();
  return HermitianOperator::symmetrized(w * ch.apply(ComplexMatrix(s * z.matrix() * s)) * w);
}

DpiResult dpi_check(const HermitianOperator& rho, const HermitianOperator& sigma,
                    const KrausChannel& ch, const DivergenceGenerator& f, const Tolerances& tol) {
  DpiResult r;
  r.in = d_max(rho, sigma, f, tol);
  r.out = d_max(ch.apply(rho), ch.apply(sigma), f, tol);
  r.holds = leq_with_tol(r.out, r.in, 1e-8);
  return r;
}

EqualityReport equality_check(const HermitianOperator& rho, const HermitianOperator& sigma,
                              const KrausChannel& ch, const DivergenceGenerator& f,
                              const EqualityTolerances& etol, const Tolerances& tol) {
  EqualityReport rep;
  const DivergenceDetail in = d_prime_detail(rho, sigma, f, tol);
  if (!f.operator_convex()) {
    throw Error(ErrorCode::UnsupportedGenerator, "equality_check requires an operator convex generator");
  }
  if (in.value.is_infinite()) {
    throw Error(ErrorCode::InfiniteDivergence, "d_max(rho||sigma) is infinite");
  }
  const HermitianOperator rho_out = ch.apply(rho);
  const HermitianOperator sigma_out = ch.apply(sigma);
  rep.value_in = in.value;
  rep.value_out = d_max(rho_out, sigma_out, f, tol);
  rep.equal = rep.value_out.is_finite() &&
              std::abs(rep.value_in.value() - rep.value_out.value()) <=
                  std::max(etol.value_abs, etol.value_rel * std::abs(rep.value_in.value()));
  rep.multiplicative_domain_applicable = f.full_support_measure();

  const Eigen::Index n = sigma.dim();
  rep.sigma_singular =
      linalg::support_projector(sigma).trace() < static_cast<double>(n) - 0.5;

  // Eigenvalue indicators of d against the spectrum of Lambda_sigma(d),
  // compared on supp Lambda(sigma) where Lambda_sigma is unital.
  {
    const HermitianOperator s_inv = linalg::gen_inverse_sqrt(sigma, tol.rank_tol(n));
    const HermitianOperator d =
        HermitianOperator::symmetrized(s_inv.matrix() * in.rho_tilde.matrix() * s_inv.matrix());
    const linalg::SpectralDecomposition spec = linalg::herm_eig(d, tol.cluster_tol);
    const HermitianOperator d_out = lambda_sigma(ch, sigma, d, tol);
    const linalg::SpectralDecomposition spec_out = linalg::herm_eig(d_out, tol.cluster_tol);
    const ComplexMatrix pi_out = linalg::support_projector(sigma_out).matrix();
    double scale = 1.0;
    for (const double v : spec.eigenvalues) scale = std::max(scale, std::abs(v));
    const double match = 1e-6 * scale;

    rep.worst_multiplicative_defect = 0.0;
    for (std::size_t x = 0; x < spec.size(); ++x) {
      const ComplexMatrix lhs = lambda_sigma(ch, sigma, spec.projectors[x], tol).matrix();
      ComplexMatrix rhs = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
      for (std::size_t y = 0; y < spec_out.size(); ++y) {
        if (std::abs(spec_out.eigenvalues[y] - spec.eigenvalues[x]) <= match) {
          rhs += spec_out.projectors[y].matrix();
        }
      }
      rhs = pi_out * rhs * pi_out;
      rep.worst_multiplicative_defect = std::max(rep.worst_multiplicative_defect, max_abs(lhs - rhs));
    }
    rep.multiplicative_domain_ok = rep.worst_multiplicative_defect <= etol.operator_tol;
  }

  // Minimal reverse tests, atom by atom (ratio atoms ascending, then x0).
  {
    const ReverseTest rt = minimal_reverse_test(rho, sigma, tol);
    const ReverseTest rt_out = minimal_reverse_test(rho_out, sigma_out, tol);
    if (rt.atoms.size() != rt_out.atoms.size()) {
      rep.reverse_test_preserved = rep.p_match = rep.q_match = false;
      rep.worst_atom_defect = rep.worst_p_defect = rep.worst_q_defect =
          std::numeric_limits<double>::infinity();
    } else {
      for (std::size_t x = 0; x < rt.atoms.size(); ++x) {
        const auto& a = rt.atoms[x];
        const auto& b = rt_out.atoms[x];
        const double atom_defect = a.ratio.has_value() != b.ratio.has_value()
                                       ? std::numeric_limits<double>::infinity()
                                       : max_abs(ch.apply(a.output).matrix() - b.output.matrix());
        rep.worst_atom_defect = std::max(rep.worst_atom_defect, atom_defect);
        rep.worst_p_defect = std::max(rep.worst_p_defect, std::abs(a.p - b.p));
        rep.worst_q_defect = std::max(rep.worst_q_defect, std::abs(a.q - b.q));
      }
      rep.reverse_test_preserved = rep.worst_atom_defect <= etol.operator_tol;
      rep.p_match = rep.worst_p_defect <= etol.weight_tol;
      rep.q_match = rep.worst_q_defect <= etol.weight_tol;
    }
  }
  return rep;
}

ComplexMatrix v_operator(const KrausChannel& ch, const HermitianOperator& sigma,
                         const ComplexMatrix& z, const Tolerances& tol) {
  if (sigma.dim() != ch.dim_in() || z.rows() != ch.dim_out() || z.cols() != ch.dim_out()) {
    throw Error(ErrorCode::DimensionMismatch, "v_operator");
  }
  linalg::require_psd(sigma, "sigma");
  const HermitianOperator out_sigma = ch.apply(sigma);
  const ComplexMatrix w = linalg::gen_inverse_sqrt(out_sigma, tol.rank_tol(out_sigma.dim())).matrix();
  return ch.adjoint_apply(ComplexMatrix(z * w)) * linalg::matrix_sqrt(sigma).matrix();
}

ComplexMatrix v_adjoint(const KrausChannel& ch, const HermitianOperator& sigma,
                        const ComplexMatrix& z, const Tolerances& tol) {
  if (sigma.dim() != ch.dim_in() || z.rows() != ch.dim_in() || z.cols() != ch.dim_in()) {
    throw Error(ErrorCode::DimensionMismatch, "v_adjoint");
  }
  linalg::require_psd(sigma, "sigma");
  const HermitianOperator out_sigma = ch.apply(sigma);
  const ComplexMatrix w = linalg::gen_inverse_sqrt(out_sigma, tol.rank_tol(out_sigma.dim())).matrix();
  return ch.apply(ComplexMatrix(z * linalg::matrix_sqrt(sigma).matrix())) * w;
}

KrausChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index env_dim,
                            std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || env_dim < 1 || dim_out * env_dim < dim_in) {
    throw Error(ErrorCode::InvalidArgument, "random_channel needs dim_out * env_dim >= dim_in >= 1");
  }
  CounterRng rng(seed);
  const ComplexMatrix v = haar_isometry(dim_out * env_dim, dim_in, rng);
  std::vector<ComplexMatrix> ks;
  ks.reserve(static_cast<std::size_t>(env_dim));
  for (Eigen::Index e = 0; e < env_dim; ++e) {
    ComplexMatrix k(dim_out, dim_in);
    for (Eigen::Index i = 0; i < dim_out; ++i) k.row(i) = v.row(i * env_dim + e);
    ks.push_back(std::move(k));
  }
  return KrausChannel(std::move(ks));
}

HermitianOperator random_state(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw Error(ErrorCode::InvalidArgument, "random_state needs 1 <= rank <= dim");
  }
  CounterRng rng(seed);
  const ComplexMatrix g = ginibre(dim, rank, rng);
  const ComplexMatrix m = g * g.adjoint();
  return HermitianOperator::symmetrized(m / m.trace().real());
}

}  // namespace qfdiv
