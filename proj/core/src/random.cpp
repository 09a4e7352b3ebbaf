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

#include "qfdiv/random.hpp"

#include <cmath>
#include <numbers>

namespace qfdiv {

int CounterRng::uniform_int(int lo, int hi) noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>((*this)() % span);
}

double CounterRng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex CounterRng::complex_normal() noexcept {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix haar_unitary(Eigen::Index dim, CounterRng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix haar_isometry(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
  if (cols > rows) throw Error(ErrorCode::InvalidArgument, "isometry needs rows >= cols");
  return haar_unitary(rows, rng).leftCols(cols);
}

}  // namespace qfdiv
