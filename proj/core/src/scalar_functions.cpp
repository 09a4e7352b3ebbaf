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

#include "qfdiv/scalar_functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qfdiv/random.hpp"

namespace qfdiv {

namespace {

[[noreturn]] void unsupported(const std::string& msg) {
  throw Error(ErrorCode::UnsupportedGenerator, msg);
}

double require_param(std::string_view name, std::optional<double> param) {
  if (!param) unsupported(std::string(name) + " needs a parameter");
  if (!std::isfinite(*param)) unsupported(std::string(name) + " parameter must be finite");
  return *param;
}

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

DivergenceGenerator DivergenceGenerator::builtin(std::string_view name, std::optional<double> param) {
  DivergenceGenerator g;
  g.name_ = std::string(name);
  g.operator_convex_ = true;
  const auto inf = ExtendedReal::infinity();

  if (name == "xlogx") {
    if (param) unsupported("xlogx takes no parameter");
    g.eval_ = [](double y) { return y == 0.0 ? 0.0 : y * std::log(y); };
    g.recession_ = inf;
    g.second_deriv_ = 1.0;
    g.full_support_measure_ = true;
  } else if (name == "square") {
    if (param) unsupported("square takes no parameter");
    g.eval_ = [](double y) { return y * y; };
    g.recession_ = inf;
    g.second_deriv_ = 2.0;
  } else if (name == "neg_power") {
    const double a = require_param(name, param);
    if (!(a > 0.0 && a <= 1.0)) unsupported("neg_power needs alpha in (0, 1]");
    g.param_ = a;
    g.eval_ = [a](double y) { return y == 0.0 ? 0.0 : -std::pow(y, a); };
    // -y is linear, so its slope at infinity is -1.
    g.recession_ = a < 1.0 ? ExtendedReal(0.0) : ExtendedReal(-1.0);
    g.second_deriv_ = a * (1.0 - a);
    g.full_support_measure_ = a < 1.0;
  } else if (name == "power") {
    const double a = require_param(name, param);
    if (!(a > 1.0 && a <= 2.0)) {
      unsupported("power needs alpha in (1, 2]; y^alpha is not operator convex for alpha > 2");
    }
    g.param_ = a;
    g.eval_ = [a](double y) { return y == 0.0 ? 0.0 : std::pow(y, a); };
    g.recession_ = inf;
    g.second_deriv_ = a * (a - 1.0);
    g.full_support_measure_ = a < 2.0;
  } else if (name == "psi") {
    const double t = require_param(name, param);
    if (!(t > 0.0)) unsupported("psi needs t > 0");
    g.param_ = t;
    g.eval_ = [t](double y) { return psi(t, y); };
    g.recession_ = ExtendedReal(0.0);
    g.second_deriv_ = 2.0 * t / ((1.0 + t) * (1.0 + t) * (1.0 + t));
  } else {
    unsupported("unknown generator '" + std::string(name) + "'");
  }
  return g;
}

DivergenceGenerator DivergenceGenerator::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return builtin(spec);
  const std::string_view name = spec.substr(0, colon);
  const std::string_view num = spec.substr(colon + 1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
  if (ec != std::errc{} || ptr != num.data() + num.size() || num.empty()) {
    throw Error(ErrorCode::ParseError, "bad generator parameter in '" + std::string(spec) + "'");
  }
  return builtin(name, value);
}

DivergenceGenerator DivergenceGenerator::custom(std::string name, Eval eval,
                                                std::optional<ExtendedReal> recession,
                                                std::optional<double> second_deriv_at_1,
                                                bool operator_convex) {
  if (!eval) unsupported("custom generator without an evaluation rule");
  DivergenceGenerator g;
  g.name_ = std::move(name);
  g.eval_ = std::move(eval);
  g.recession_ = recession;
  g.second_deriv_ = second_deriv_at_1;
  g.operator_convex_ = operator_convex;
  const GeneratorCheck check = check_generator(g, 0x5EEDULL);
  if (!check.zero_at_origin) unsupported("custom generator must satisfy f(0) = 0");
  if (!check.convex) unsupported("custom generator fails the scalar convexity check");
  if (recession && !check.recession_consistent) {
    unsupported("declared recession is inconsistent with f(y)/y at large y");
  }
  return g;
}

std::string DivergenceGenerator::spec() const {
  return param_ ? name_ + ":" + format_param(*param_) : name_;
}

ExtendedReal recession_value(const DivergenceGenerator& f) {
  const auto r = f.declared_recession();
  if (!r) throw Error(ErrorCode::MissingRecession, "generator '" + f.name() + "' declares no recession");
  return *r;
}

ExtendedReal classical_f_divergence(std::span<const double> p, std::span<const double> q,
                                    const DivergenceGenerator& f) {
  if (p.size() != q.size()) throw Error(ErrorCode::DimensionMismatch, "p and q lengths differ");
  double finite_part = 0.0;
  double outside_mass = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!(p[x] >= 0.0) || !(q[x] >= 0.0) || !std::isfinite(p[x]) || !std::isfinite(q[x])) {
      throw Error(ErrorCode::InvalidDistribution, "weights must be finite and nonnegative");
    }
    if (q[x] > 0.0) {
      finite_part += q[x] * f(p[x] / q[x]);
    } else if (p[x] > 0.0) {
      outside_mass += p[x];
    }
  }
  if (outside_mass == 0.0) return ExtendedReal(finite_part);
  const ExtendedReal rec = recession_value(f);
  if (rec.is_infinite()) return ExtendedReal::infinity();
  return ExtendedReal(finite_part + outside_mass * rec.value());
}

double psi(double t, double y) { return -y / (y + t); }

double LownerForm::evaluate(double y) const {
  double v = a * y + b * y * y;
  for (const auto& atom : measure) v += atom.weight * (y / (1.0 + atom.t) + psi(atom.t, y));
  return v;
}

LownerForm lebesgue_lowner_form(double t_min, double t_max, std::size_t points) {
  if (!(t_min > 0.0) || !(t_max > t_min) || points < 2) {
    throw Error(ErrorCode::InvalidArgument, "lebesgue_lowner_form needs 0 < t_min < t_max, points >= 2");
  }
  LownerForm form;
  const double u0 = std::log(t_min);
  const double du = (std::log(t_max) - u0) / static_cast<double>(points - 1);
  form.measure.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = std::exp(u0 + du * static_cast<double>(k));
    const double end_weight = (k == 0 || k + 1 == points) ? 0.5 : 1.0;
    // dt = t du
    form.measure.push_back({t, end_weight * du * t});
  }
  return form;
}

double lowner_quadrature_check(const DivergenceGenerator& f, const LownerForm& lform,
                               std::span<const double> grid) {
  double worst = 0.0;
  for (const double y : grid) worst = std::max(worst, std::abs(lform.evaluate(y) - f(y)));
  return worst;
}

GeneratorCheck check_generator(const DivergenceGenerator& f, std::uint64_t seed, int trials) {
  GeneratorCheck out;
  out.zero_at_origin = f(0.0) == 0.0;

  CounterRng rng(seed);
  out.convex = true;
  for (int i = 0; i < trials; ++i) {
    double y[3] = {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
    // Every fourth triple pins the left end at the origin.
    if (i % 4 == 0) y[0] = 0.0;
    std::sort(std::begin(y), std::end(y));
    if (!(y[0] < y[1] && y[1] < y[2])) continue;
    const double f0 = f(y[0]), f1 = f(y[1]), f2 = f(y[2]);
    const double chord = ((y[2] - y[1]) * f0 + (y[1] - y[0]) * f2) / (y[2] - y[0]);
    // Relative to the size of f on the triple; y^2 reaches 1e4 on [0, 100].
    const double scale = std::max({1.0, std::abs(f0), std::abs(f1), std::abs(f2)});
    const double violation = (f1 - chord) / scale;
    out.worst_chord_violation = std::max(out.worst_chord_violation, violation);
    if (violation > 1e-12) out.convex = false;
  }

  const auto rec = f.declared_recession();
  if (!rec) {
    out.recession_consistent = false;
  } else if (rec->is_finite()) {
    const double big = 1e8;
    out.recession_consistent =
        std::abs(f(big) / big - rec->value()) <= std::max(1e-3, 0.01 * std::abs(rec->value()));
  } else {
    // Unbounded slope: f(y)/y must keep growing across decades and be large.
    out.recession_consistent = true;
    double prev = f(1e2) / 1e2;
    for (double y = 1e4; y <= 1e8; y *= 1e2) {
      const double cur = f(y) / y;
      if (!(cur > prev)) out.recession_consistent = false;
      prev = cur;
    }
    if (!(prev >= 10.0)) out.recession_consistent = false;
  }
  return out;
}

}  // namespace qfdiv
