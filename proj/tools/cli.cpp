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

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfdiv/harness.hpp"
#include "qfdiv/io.hpp"
#include "qfdiv/rld.hpp"

namespace qfdiv::cli {
namespace {

using json = nlohmann::json;

struct Options {
  std::string rho, sigma, channel, x, y;
  std::string f = "xlogx";
  std::optional<double> alpha;
  std::optional<double> tol;
  std::optional<double> step;
  std::uint64_t seed = 42;
  std::vector<int> dims{2, 3};
  int trials = 100;
  int threads = 1;
  std::string suite;
  std::vector<std::string> generators;
  std::string out;
  std::string format = "json";
  bool atoms = false;
};

// Usage problems detected after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::UnsupportedGenerator:
    case ErrorCode::MissingRecession:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

DivergenceGenerator generator(const Options& o) {
  if (!o.alpha) return DivergenceGenerator::parse(o.f);
  if (o.f.find(':') != std::string::npos) throw UsageError("--alpha given together with a parametrized --f");
  return DivergenceGenerator::builtin(o.f, *o.alpha);
}

Tolerances tolerances(const Options& o) {
  Tolerances t = kDefaultTolerances;
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw UsageError("--tol must be positive");
    t.rank_tol_per_dim = *o.tol;
  }
  return t;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + o.out);
  file << text;
  if (!file) throw UsageError("failed writing output file " + o.out);
}

std::string csv_number(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_json(const Options& o, const char* cmd) {
  if (o.format != "json") throw UsageError(std::string(cmd) + " only supports --format json");
}

int cmd_compute(const Options& o, std::ostream& out) {
  const auto rho = io::read_operator(o.rho);
  const auto sigma = io::read_operator(o.sigma);
  const auto f = generator(o);
  const auto tol = tolerances(o);
  const auto detail = d_prime_detail(rho, sigma, f, tol);
  if (f.operator_convex()) d_max(rho, sigma, f, tol);  // same value; rejects non-(F) generators

  if (o.format == "csv") {
    emit(o,
         "value,finite,rho_tilde_trace\n" + csv_number(detail.value.value()) + ',' +
             (detail.value.is_finite() ? "true" : "false") + ',' + csv_number(detail.rho_tilde_trace) + '\n',
         out);
    return kExitOk;
  }
  json j = {{"value", io::extended_to_json(detail.value)},
            {"finite", detail.value.is_finite()},
            {"rho_tilde_trace", detail.rho_tilde_trace},
            {"generator", f.spec()}};
  if (o.atoms) j["atoms"] = io::reverse_test_to_json(minimal_reverse_test(rho, sigma, tol))["atoms"];
  emit(o, j.dump(2) + '\n', out);
  return kExitOk;
}

int cmd_reverse_test(const Options& o, std::ostream& out) {
  require_json(o, "reverse-test");
  const auto rho = io::read_operator(o.rho);
  const auto sigma = io::read_operator(o.sigma);
  const auto rt = minimal_reverse_test(rho, sigma, tolerances(o));
  emit(o, io::reverse_test_to_json(rt).dump(2) + '\n', out);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  require_json(o, "check");
  const auto rho = io::read_operator(o.rho);
  const auto sigma = io::read_operator(o.sigma);
  const auto ch = io::read_channel(o.channel);
  EqualityTolerances etol;
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw UsageError("--tol must be positive");
    etol.value_abs = etol.value_rel = etol.operator_tol = *o.tol;
  }
  const auto rep = equality_check(rho, sigma, ch, generator(o), etol);
  emit(o, io::equality_report_to_json(rep).dump(2) + '\n', out);
  // Equality with invertible sigma forces every sub-check; a miss is a failure.
  const bool implied_ok = rep.reverse_test_preserved && rep.p_match && rep.q_match &&
                          (!rep.multiplicative_domain_applicable || rep.multiplicative_domain_ok);
  return (rep.equal && !rep.sigma_singular && !implied_ok) ? kExitPropertyFailure : kExitOk;
}

int cmd_rld(const Options& o, std::ostream& out) {
  const auto rho = io::read_operator(o.rho);
  const auto x = io::read_operator(o.x);
  const auto y = io::read_operator(o.y);
  const double tol = o.tol.value_or(1e-4);
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  const auto r = second_derivative_check(rho, x, y, generator(o), o.step);
  if (o.format == "csv") {
    emit(o,
         "fd,analytic,err,step\n" + csv_number(r.fd) + ',' + csv_number(r.analytic) + ',' +
             csv_number(r.abs_err) + ',' + csv_number(r.step) + '\n',
         out);
  } else {
    const json j = {{"fd", r.fd},
                    {"analytic", r.analytic},
                    {"err", r.abs_err},
                    {"step", r.step},
                    {"imag_metric", r.imag_metric},
                    {"fd_sigma_variant", r.fd_sigma_variant},
                    {"fd_joint_variant", r.fd_joint_variant}};
    emit(o, j.dump(2) + '\n', out);
  }
  return r.abs_err <= tol ? kExitOk : kExitPropertyFailure;
}

int cmd_suite(const Options& o, std::ostream& out) {
  harness::SuiteConfig cfg;
  cfg.suite = o.suite;
  cfg.dims = o.dims;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (!o.generators.empty()) cfg.generators = o.generators;
  if (o.tol) cfg.tol_overrides["*"] = *o.tol;
  const auto rep = harness::run_suite(cfg);
  emit(o, o.format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + '\n', out);
  return rep.all_passed() ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"qfdiv: maximal quantum f-divergences, reverse tests and property suites"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qfdiv 0.1.0");

  const auto add_pair = [&](CLI::App* c) {
    c->add_option("--rho", o.rho, "rho as a matrix JSON file")->required()->check(CLI::ExistingFile);
    c->add_option("--sigma", o.sigma, "sigma as a matrix JSON file")->required()->check(CLI::ExistingFile);
  };
  const auto add_f = [&](CLI::App* c) {
    c->add_option("--f", o.f, "generator: xlogx, square, neg_power:A, power:A, psi:T")->capture_default_str();
    c->add_option("--alpha", o.alpha, "parameter for --f given without one");
  };
  const auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    c->add_option("--out", o.out, "write the result here instead of stdout");
  };

  auto* compute = app.add_subcommand("compute", "D_f^max of a pair");
  add_pair(compute);
  add_f(compute);
  add_format(compute);
  compute->add_option("--tol", o.tol, "rank tolerance per dimension (relative to lambda_max)");
  compute->add_flag("--atoms", o.atoms, "include the minimal reverse test weights");

  auto* reverse = app.add_subcommand("reverse-test", "minimal reverse test of a pair");
  add_pair(reverse);
  add_format(reverse);
  reverse->add_option("--tol", o.tol, "rank tolerance per dimension");

  auto* check = app.add_subcommand("check", "preservation of D_f^max under a channel");
  add_pair(check);
  add_f(check);
  add_format(check);
  check->add_option("--channel", o.channel, "channel JSON file")->required()->check(CLI::ExistingFile);
  check->add_option("--tol", o.tol, "value and operator tolerance");

  auto* rld = app.add_subcommand("rld", "finite-difference check of the RLD second derivative");
  rld->add_option("--rho", o.rho)->required()->check(CLI::ExistingFile);
  rld->add_option("--x", o.x)->required()->check(CLI::ExistingFile);
  rld->add_option("--y", o.y)->required()->check(CLI::ExistingFile);
  add_f(rld);
  add_format(rld);
  rld->add_option("--step", o.step, "finite-difference step");
  rld->add_option("--tol", o.tol, "pass tolerance on |fd - analytic| (default 1e-4)");

  auto* suite = app.add_subcommand("suite", "run a property suite");
  suite->add_option("name", o.suite, "suite name")->required();
  suite->add_option("--seed", o.seed, "master seed")->envname("QFDIV_SEED")->capture_default_str();
  suite->add_option("--dims", o.dims, "comma-separated dimensions")->delimiter(',')->capture_default_str();
  suite->add_option("--trials", o.trials)->capture_default_str();
  suite->add_option("--threads", o.threads)->capture_default_str();
  suite->add_option("--generators", o.generators, "comma-separated generator specs")->delimiter(',');
  suite->add_option("--tol", o.tol, "tolerance override for every property");
  add_format(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    const int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(o, out);
    if (*reverse) return cmd_reverse_test(o, out);
    if (*check) return cmd_check(o, out);
    if (*rld) return cmd_rld(o, out);
    return cmd_suite(o, out);
  } catch (const UsageError& e) {
    err << "qfdiv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "qfdiv: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace qfdiv::cli
