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

#ifndef QFDIV_SCALAR_FUNCTIONS_HPP
#define QFDIV_SCALAR_FUNCTIONS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfdiv/types.hpp"

namespace qfdiv {

/// A convex generator f on [0, inf) with f(0) = 0.
///
/// Built-ins carry their analytic recession constant lim f(y)/y and f''(1).
/// Generators are immutable once built.
class DivergenceGenerator {
 public:
  using Eval = std::function<double(double)>;

  /// Built-in families: "xlogx", "square", "neg_power" (alpha in (0,1]),
  /// "power" (alpha in (1,2]), "psi" (t > 0).  Throws UnsupportedGenerator
  /// for unknown names or parameters outside the operator-convex range.
  static DivergenceGenerator builtin(std::string_view name, std::optional<double> param = {});

  /// Parses "xlogx", "square", "neg_power:0.5", "power:1.5", "psi:2.0".
  static DivergenceGenerator parse(std::string_view spec);

  /// A caller-supplied generator.  f(0) = 0 and scalar convexity are spot
  /// checked (UnsupportedGenerator on failure); operator convexity is taken
  /// on trust from the flag.
  static DivergenceGenerator custom(std::string name, Eval eval,
                                    std::optional<ExtendedReal> recession,
                                    std::optional<double> second_deriv_at_1,
                                    bool operator_convex);

  double operator()(double y) const { return eval_(y); }
  const Eval& eval() const noexcept { return eval_; }
  const std::string& name() const noexcept { return name_; }
  std::optional<double> param() const noexcept { return param_; }
  /// Round-trips through parse().
  std::string spec() const;
  std::optional<ExtendedReal> declared_recession() const noexcept { return recession_; }
  std::optional<double> second_deriv_at_1() const noexcept { return second_deriv_; }
  bool operator_convex() const noexcept { return operator_convex_; }
  /// Whether the Loewner measure of f has support on all of (0, inf).
  bool full_support_measure() const noexcept { return full_support_measure_; }

 private:
  DivergenceGenerator() = default;

  std::string name_;
  std::optional<double> param_;
  Eval eval_;
  std::optional<ExtendedReal> recession_;
  std::optional<double> second_deriv_;
  bool operator_convex_ = false;
  bool full_support_measure_ = false;
};

/// lim_{y->inf} f(y)/y.  Throws MissingRecession when undeclared.
ExtendedReal recession_value(const DivergenceGenerator& f);

/// Sum_x q(x) f(p(x)/q(x)), with p(x) * recession for q(x) = 0 < p(x).
ExtendedReal classical_f_divergence(std::span<const double> p, std::span<const double> q,
                                    const DivergenceGenerator& f);

/// psi_t(y) = -y/(y+t).
double psi(double t, double y);

/// a y + b y^2 + Sum_j w_j (y/(1+t_j) + psi_{t_j}(y)), a finite-atom
/// representation of an operator convex function vanishing at zero.
struct LownerForm {
  struct Atom {
    double t;
    double weight;
  };
  double a = 0.0;
  double b = 0.0;
  std::vector<Atom> measure;

  double evaluate(double y) const;
};

/// Trapezoid discretization (in log t) of the measure dmu = dt on [t_min, t_max].
LownerForm lebesgue_lowner_form(double t_min, double t_max, std::size_t points);

/// max_y |lform(y) - f(y)| over the grid.
double lowner_quadrature_check(const DivergenceGenerator& f, const LownerForm& lform,
                               std::span<const double> grid);

/// Outcome of the scalar invariant suite for a generator.
struct GeneratorCheck {
  bool zero_at_origin = false;
  bool convex = false;
  bool recession_consistent = false;
  /// Largest (f(y1) - chord) / max(1, |f|) seen; convex requires <= 1e-12.
  double worst_chord_violation = 0.0;
};

/// Checks f(0) = 0, chord convexity on `trials` random triples in [0, 100],
/// and consistency of the declared recession with f(Y)/Y at Y = 1e8.
GeneratorCheck check_generator(const DivergenceGenerator& f, std::uint64_t seed,
                               int trials = 1000);

}  // namespace qfdiv

#endif  // QFDIV_SCALAR_FUNCTIONS_HPP
