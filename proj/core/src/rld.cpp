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

#include "qfdiv/rld.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qfdiv {

namespace {

void require_in_support(const ComplexMatrix& outside, const HermitianOperator& x, const char* what) {
  const double leak = (outside * x.matrix()).cwiseAbs().maxCoeff();
  if (leak > 1e-10 * std::max(1.0, x.max_abs())) {
    throw Error(ErrorCode::SupportError, std::string(what) + " is not supported in supp rho");
  }
}

double positive_min_eigenvalue(const HermitianOperator& rho, const Tolerances& tol) {
  const linalg::EigenPairs ep = linalg::eigh(rho);
  const double thr = tol.rank_tol(rho.dim()) * std::max(0.0, ep.values.maxCoeff());
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ep.values.size(); ++i) {
    if (ep.values(i) > thr) best = std::min(best, ep.values(i));
  }
  return best;
}

double finite_value(const ExtendedReal& v) {
  if (v.is_infinite()) throw Error(ErrorCode::StepError, "divergence became infinite along the path");
  return v.value();
}

}  // namespace

TangentPerturbation TangentPerturbation::make(const HermitianOperator& base,
                                              const HermitianOperator& direction) {
  linalg::require_same_dim(base, direction, "tangent perturbation");
  linalg::require_psd(base, "base");
  if (std::abs(base.trace() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "base state must have unit trace");
  }
  if (std::abs(direction.trace()) > 1e-12 * std::max(1.0, direction.max_abs())) {
    throw Error(ErrorCode::InvalidArgument, "direction must be traceless");
  }
  const HermitianOperator pi = linalg::support_projector(base);
  require_in_support(ComplexMatrix::Identity(base.dim(), base.dim()) - pi.matrix(), direction,
                     "direction");
  // Largest s with base + s X >= 0 on supp base: lambda_min(base^{-1/2} X base^{-1/2}).
  const HermitianOperator s = linalg::gen_inverse_sqrt(base);
  const linalg::EigenPairs ep =
      linalg::eigh(HermitianOperator::symmetrized(s.matrix() * direction.matrix() * s.matrix()));
  const double spread = std::max(std::abs(ep.values.minCoeff()), std::abs(ep.values.maxCoeff()));
  return {base, direction,
          spread > 0.0 ? 1.0 / spread : std::numeric_limits<double>::infinity()};
}

Complex rld_metric(const HermitianOperator& rho, const HermitianOperator& x,
                   const HermitianOperator& y, const Tolerances& tol) {
  linalg::require_same_dim(rho, x, "rld_metric");
  linalg::require_same_dim(rho, y, "rld_metric");
  const ComplexMatrix outside =
      ComplexMatrix::Identity(rho.dim(), rho.dim()) -
      linalg::support_projector(rho, tol.rank_tol(rho.dim())).matrix();
  require_in_support(outside, x, "X");
  require_in_support(outside, y, "Y");
  const HermitianOperator inv = linalg::gen_inverse(rho, tol.rank_tol(rho.dim()));
  return (x.matrix() * inv.matrix() * y.matrix()).trace();
}

double default_rld_step(const HermitianOperator& rho, const HermitianOperator& x,
                        const HermitianOperator& y, const Tolerances& tol) {
  const double lmin = positive_min_eigenvalue(rho, tol);
  const double size = std::max(linalg::op_norm(x.matrix()), linalg::op_norm(y.matrix()));
  if (!std::isfinite(lmin)) throw Error(ErrorCode::StepError, "rho is zero");
  return size > 0.0 ? 1e-3 * lmin / size : 1e-3;
}

SecondDerivativeResult second_derivative_check(const HermitianOperator& rho,
                                               const HermitianOperator& x,
                                               const HermitianOperator& y,
                                               const DivergenceGenerator& f,
                                               std::optional<double> step, const Tolerances& tol) {
  const auto f2 = f.second_deriv_at_1();
  if (!f2) {
    throw Error(ErrorCode::UnsupportedGenerator, "generator '" + f.name() + "' has no declared f''(1)");
  }
  SecondDerivativeResult r;
  const Complex j = rld_metric(rho, x, y, tol);
  r.analytic = *f2 * j.real();
  r.imag_metric = j.imag();
  r.step = step.value_or(default_rld_step(rho, x, y, tol));
  if (!(r.step > 0.0)) throw Error(ErrorCode::StepError, "step must be positive");

  const double h = r.step;
  auto checked = [&](const HermitianOperator& a) {
    if (!linalg::is_psd(a, 1e-12)) throw Error(ErrorCode::StepError, "step leaves the PSD cone");
    return a;
  };
  auto mixed = [&](auto&& value) {
    return (value(h, h) - value(h, -h) - value(-h, h) + value(-h, -h)) / (4.0 * h * h);
  };

  r.fd = mixed([&](double s, double t) {
    return finite_value(d_prime(checked(rho + s * x), checked(rho - t * y), f, tol));
  });
  r.fd_sigma_variant = mixed([&](double s, double t) {
    return finite_value(d_prime(rho, checked(rho + s * x + t * y), f, tol));
  });
  r.fd_joint_variant = mixed([&](double s, double t) {
    return finite_value(d_prime(checked(rho + s * x + t * y), rho, f, tol));
  });
  r.abs_err = std::abs(r.fd - r.analytic);
  return r;
}

}  // namespace qfdiv
