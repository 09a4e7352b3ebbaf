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

#ifndef QFDIV_HARNESS_HPP
#define QFDIV_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfdiv/channels.hpp"
#include "qfdiv/random.hpp"

namespace qfdiv::harness {

// ---------------------------------------------------------------------------
// Ensembles

namespace ensembles {

/// Unit-trace PSD operator of the given rank.
HermitianOperator state(Eigen::Index dim, Eigen::Index rank, CounterRng& rng);
/// Full-rank state mixed with the maximally mixed state (weight `floor_mix`).
HermitianOperator well_conditioned_state(Eigen::Index dim, double floor_mix, CounterRng& rng);
/// State supported inside supp `support` (projector), of the given rank.
HermitianOperator state_inside(const HermitianOperator& support, Eigen::Index rank, CounterRng& rng);

enum class SupportCase { FullRank, Dominated, Undominated, RhoDeficient };
inline constexpr SupportCase kAllSupportCases[] = {SupportCase::FullRank, SupportCase::Dominated,
                                                   SupportCase::Undominated,
                                                   SupportCase::RhoDeficient};
struct Pair {
  HermitianOperator rho;
  HermitianOperator sigma;
};
/// FullRank: both invertible.  Dominated: sigma singular, supp rho ⊆ supp sigma.
/// Undominated: sigma singular, rho full rank.  RhoDeficient: sigma full rank,
/// rho singular.
Pair pair(Eigen::Index dim, SupportCase c, CounterRng& rng);
Pair pair(Eigen::Index dim, CounterRng& rng);
/// [rho, sigma] = 0, shared Haar eigenbasis, random zero patterns.
Pair commuting_pair(Eigen::Index dim, CounterRng& rng);
/// Random traceless Hermitian operator with unit Hilbert-Schmidt norm,
/// supported inside `support`.
HermitianOperator traceless_direction(const HermitianOperator& support, CounterRng& rng);
/// Random CPTP map dim -> dim with environment dimension 1..3.
KrausChannel channel(Eigen::Index dim, CounterRng& rng);

}  // namespace ensembles

/// D_f of the joint eigenvalue vectors of a commuting pair.  Throws
/// NonCommuting when |[rho, sigma]| > 1e-10 * max(1, |rho| |sigma|).
ExtendedReal classical_oracle(const HermitianOperator& rho, const HermitianOperator& sigma,
                              const DivergenceGenerator& f);

/// tr rho (log rho - log sigma) for invertible rho, sigma.
double umegaki_relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma);

// ---------------------------------------------------------------------------
// Suites

struct SuiteConfig {
  std::string suite;
  std::vector<int> dims{2, 3};
  int trials = 100;
  std::uint64_t seed = 42;
  std::vector<std::string> generators{"xlogx", "square", "neg_power:0.5", "power:1.5"};
  /// Overrides of the per-suite tolerance, keyed by property name; "*"
  /// applies to every property without its own entry.
  std::map<std::string, double> tol_overrides;
  int threads = 1;

  /// Throws InvalidArgument for trials < 1, dims < 2, unknown suites.
  void validate() const;
};

/// One checked inequality lhs <= rhs (or |a - b| <= tol with lhs = |a - b|).
struct TrialRecord {
  std::string suite;
  std::string property;
  int dim = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  ExtendedReal lhs;
  ExtendedReal rhs;
  bool pass = false;

  /// rhs - lhs; +inf when rhs is infinite, -inf when only lhs is.
  double margin() const;
};

struct PropertyStats {
  int passed = 0;
  int failed = 0;
  double worst_violation = 0.0;
  std::vector<std::uint64_t> failing_seeds;
};

struct SuiteReport {
  SuiteConfig config;
  std::map<std::string, PropertyStats> properties;
  std::vector<TrialRecord> records;
  double wall_time_s = 0.0;

  bool all_passed() const;
  nlohmann::json to_json(bool include_wall_time = true) const;
  /// Header: suite,dim,seed,lhs,rhs,margin,pass
  std::string to_csv() const;
};

const std::vector<std::string>& suite_names();

/// Runs one trial of a suite with its own seed; reproduces a failing case.
std::vector<TrialRecord> run_trial(const SuiteConfig& cfg, int trial_index);

SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace qfdiv::harness

#endif  // QFDIV_HARNESS_HPP
