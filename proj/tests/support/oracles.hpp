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

// Test-only reference computations.  Nothing here calls into the library's
// spectral code: 2x2 problems are solved in closed form, integrals by
// adaptive Simpson, inverses by LU solves, and larger matrix functions go
// straight to Eigen's solver without rank thresholds or clustering.

#ifndef QFDIV_TESTS_ORACLES_HPP
#define QFDIV_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qfdiv::oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Eigenvalues (ascending) of the Hermitian 2x2 [[a, b], [conj(b), c]].
inline std::array<double, 2> eig2(double a, cd b, double c) {
  const double mid = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), std::abs(b));
  return {mid - rad, mid + rad};
}

inline std::array<double, 2> eig2(const Mat& m) {
  return eig2(m(0, 0).real(), m(0, 1), m(1, 1).real());
}

/// Unit eigenvector of the Hermitian 2x2 m for eigenvalue lambda.
inline Eigen::Vector2cd eigvec2(const Mat& m, double lambda) {
  Eigen::Vector2cd v;
  const cd b = m(0, 1);
  if (std::abs(b) > 1e-300) {
    v << b, cd(lambda - m(0, 0).real(), 0.0);
  } else {
    v << cd(std::abs(m(0, 0).real() - lambda) < std::abs(m(1, 1).real() - lambda) ? 1.0 : 0.0),
        cd(std::abs(m(0, 0).real() - lambda) < std::abs(m(1, 1).real() - lambda) ? 0.0 : 1.0);
  }
  return v / v.norm();
}

/// Sum_x q f(p/q) with the recession term for q = 0 < p; +inf allowed.
inline double classical(const std::vector<double>& p, const std::vector<double>& q,
                        const std::function<double(double)>& f, double recession) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0) {
      acc += q[i] * f(p[i] / q[i]);
    } else if (p[i] > 0.0) {
      acc += p[i] * recession;
    }
  }
  return acc;
}

/// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& g, double a, double b, double eps,
                      int depth = 50) {
  const auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi,
                       double whole, double e, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = g(lm), frm = g(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * e) {
      return left + right + (left + right - whole) / 15.0;
    }
    return self(self, lo, mid, flo, flm, fmid, left, 0.5 * e, d - 1) +
           self(self, mid, hi, fmid, frm, fhi, right, 0.5 * e, d - 1);
  };
  const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  return rec(rec, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), eps, depth);
}

/// tr rho sigma^{-1} rho for invertible sigma (the y^2 divergence), by LU.
inline double square_divergence(const Mat& rho, const Mat& sigma) {
  return (rho * sigma.partialPivLu().solve(rho)).trace().real();
}

/// Hermitian square root of a PSD 2x2 matrix, closed form:
/// sqrt(M) = (M + sqrt(det) 1) / sqrt(tr + 2 sqrt(det)).
inline Mat sqrt2(const Mat& m) {
  const double det = std::max(0.0, (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real());
  const double s = std::sqrt(det);
  const double t = std::sqrt(m.trace().real() + 2.0 * s);
  return (m + s * Mat::Identity(2, 2)) / t;
}

/// Natural log of a positive definite 2x2 matrix via its closed-form spectrum.
inline Mat log2x2(const Mat& m) {
  const auto ev = eig2(m);
  if (ev[1] - ev[0] < 1e-14 * std::abs(ev[1])) return std::log(ev[0]) * Mat::Identity(2, 2);
  Mat out = Mat::Zero(2, 2);
  for (const double l : ev) {
    const Eigen::Vector2cd v = eigvec2(m, l);
    out += std::log(l) * (v * v.adjoint());
  }
  return out;
}

/// h applied to a Hermitian matrix through Eigen's eigensolver directly.
inline Mat herm_function(const Mat& m, const std::function<double(double)>& h) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd v = es.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = h(v(i));
  return es.eigenvectors() * v.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Square root of a PSD matrix.  Eigenvalues at the roundoff floor of the
/// solver (|x| <= 64 n eps lambda_max) are zero, not sqrt(1e-17).
inline Mat psd_sqrt(const Mat& m) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double floor = 64.0 * 2.220446049250313e-16 * static_cast<double>(m.rows()) *
                       std::max(0.0, es.eigenvalues().maxCoeff());
  return herm_function(m, [floor](double x) { return x <= floor ? 0.0 : std::sqrt(x); });
}

/// Logarithm of a positive definite matrix.
inline Mat herm_log(const Mat& m) {
  return herm_function(m, [](double x) { return std::log(x); });
}

inline double min_eig(const Mat& m) {
  return Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace qfdiv::oracle

#endif  // QFDIV_TESTS_ORACLES_HPP
