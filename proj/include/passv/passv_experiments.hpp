// Copyright 2026 The passv Authors.
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

// Comparison of squeezed-state parity sampling against permanent predictions.
//
// Input: n photon-added (or photon-subtracted) squeezed vacua followed by
// m - n plain squeezed vacua, all with the same xi, sent through a real
// orthogonal network and read out by per-mode parity. For a pattern with
// exactly n odd modes the only contributing photon configuration is the
// binary one, and its probability is |Per(O_S)|^2 for every xi.
//
// For photon subtraction the same submatrix O_S applies: on each mode
// a|xi> and a^+|xi> are both proportional to S(xi)|1>, and a real network
// commutes with the uniform squeezer, so the two variants give identical
// parity statistics. A transposed submatrix does not match the oracle.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "passv/error.hpp"
#include "passv/fock_core.hpp"
#include "passv/fock_evolution.hpp"
#include "passv/fock_sampler.hpp"
#include "passv/interferometer.hpp"
#include "passv/permanent.hpp"

namespace passv {

/// Permanent prediction over the C(m, n) patterns with exactly n odd modes.
struct PredictedParity {
  ParityDistribution distribution;  // collision-free patterns only
  double unassigned_mass = 0.0;     // 1 - sum, i.e. the collision sectors
};

/// |Per(M[S, 1..n])|^2 for every binary output S, keyed by parity pattern.
inline PredictedParity collision_free_permanent_distribution(const ComplexMatrix& m, int n) {
  const int modes = static_cast<int>(m.rows());
  if (n < 0 || n > modes) {
    throw InvalidArgument("collision-free prediction needs n <= m (n=" + std::to_string(n) +
                          ", m=" + std::to_string(modes) + ")");
  }
  const auto input = ModeConfiguration::leading_ones(n, modes);
  PredictedParity out;
  double total = 0.0;
  for (auto& s : collision_free_configurations(n, modes)) {
    const double p = std::norm(permanent(scattering_submatrix(m, input, s)));
    total += p;
    out.distribution.support.emplace_back(parity_pattern_of(s), p);
  }
  out.unassigned_mass = std::max(0.0, 1.0 - total);
  out.distribution.normalization_defect = std::abs(1.0 - total);
  return out;
}

inline PredictedParity predicted_parity_distribution(const LinearNetwork& o, int n, PhotonVariant variant) {
  if (!o.is_real()) throw InvalidArgument("parity prediction requires a real orthogonal network");
  // Both variants use O itself; see the note at the top of this file.
  (void)variant;
  return collision_free_permanent_distribution(o.matrix(), n);
}

/// Half the L1 distance between two distributions, missing keys read as 0.
template <typename Key>
double total_variation_distance(const OutputDistribution<Key>& p, const OutputDistribution<Key>& q) {
  std::map<Key, double> diff;
  std::optional<std::size_t> modes;
  auto check = [&](const Key& k) {
    if (!modes) modes = k.modes();
    if (*modes != k.modes()) throw InvalidArgument("distributions are over different mode counts");
  };
  for (const auto& [k, v] : p.support) {
    check(k);
    diff[k] += v;
  }
  for (const auto& [k, v] : q.support) {
    check(k);
    diff[k] -= v;
  }
  double s = 0.0;
  for (const auto& kv : diff) s += std::abs(kv.second);
  return 0.5 * s;
}

struct EquivalenceRow {
  ParityPattern pattern;
  std::optional<double> predicted;  // set for collision-free patterns
  std::vector<double> brute_force;  // one per xi
};

struct EquivalenceReport {
  int n = 0;
  int m = 0;
  PhotonVariant variant = PhotonVariant::kAdded;
  std::vector<double> xi_list;
  std::uint64_t seed = 0;
  double epsilon_tail = 0.0;
  ComplexMatrix network;
  std::vector<int> cutoffs;  // one per xi
  std::vector<EquivalenceRow> rows;
  double max_deviation = 0.0;           // brute force vs prediction, collision-free patterns
  double max_cross_xi_deviation = 0.0;  // between any two xi, collision-free patterns
  std::vector<double> collision_sector_mass;  // per xi
  double predicted_collision_mass = 0.0;      // Fock-sampling mass off binary outputs
  double truncation_budget = 0.0;             // largest retained-norm defect over xi
  double tolerance = 0.0;

  bool within_tolerance() const { return max_deviation <= tolerance && max_cross_xi_deviation <= tolerance; }
};

inline double equivalence_tolerance(int m, double epsilon_tail) { return 10.0 * m * epsilon_tail + 1e-9; }

inline constexpr int kMaxExperimentModes = 5;
inline constexpr double kMaxExperimentSqueezing = 1.0;

/// Brute-force parity distribution of the PASSV input sent through `o`.
inline ParityDistribution simulate_passv_parity(const LinearNetwork& o, int n, const SqueezingParameter& xi,
                                                PhotonVariant variant, int cutoff, double* loss = nullptr) {
  auto state = build_passv_input(n, o.modes(), xi, variant, cutoff);
  apply_network(state, reck_decompose(o));
  auto dist = parity_distribution(state);
  if (loss) *loss = state.truncation_loss();
  return dist;
}

inline EquivalenceReport run_equivalence_experiment(int n, int m, const std::vector<double>& xi_list,
                                                    PhotonVariant variant, std::uint64_t seed,
                                                    double epsilon_tail = 1e-8) {
  if (m < 1) throw InvalidDimension("mode count must be >= 1");
  if (n < 1 || n > m) {
    throw InvalidArgument("need 1 <= n <= m: no collision-free pattern has " + std::to_string(n) + " odd modes out of " +
                          std::to_string(m));
  }
  if (m > kMaxExperimentModes) {
    throw SizeLimitError("brute-force oracle limited to m <= " + std::to_string(kMaxExperimentModes));
  }
  if (xi_list.empty()) throw InvalidArgument("need at least one squeezing value");
  if (!(epsilon_tail > 0.0 && epsilon_tail < 1.0)) throw InvalidArgument("tail tolerance must be in (0, 1)");
  for (double r : xi_list) {
    if (!(r >= 0.0 && r <= kMaxExperimentSqueezing)) {
      throw InvalidArgument("squeezing magnitudes must lie in [0, 1], got " + std::to_string(r));
    }
    if (variant == PhotonVariant::kSubtracted && r == 0.0) {
      throw ZeroStateError("photon subtraction needs xi > 0 (a|0> = 0)");
    }
  }

  EquivalenceReport rep;
  rep.n = n;
  rep.m = m;
  rep.variant = variant;
  rep.xi_list = xi_list;
  rep.seed = seed;
  rep.epsilon_tail = epsilon_tail;
  rep.tolerance = equivalence_tolerance(m, epsilon_tail);

  // Check every cutoff against the memory bound before doing any work.
  for (double r : xi_list) {
    const int d = recommended_cutoff(r, n, epsilon_tail);
    const double amps = std::pow(static_cast<double>(d) + 1.0, m);
    if (amps > static_cast<double>(kMaxStateAmplitudes)) {
      throw SizeLimitError("xi=" + std::to_string(r) + " needs cutoff " + std::to_string(d) + " and (" +
                           std::to_string(d + 1) + ")^" + std::to_string(m) +
                           " amplitudes; use a smaller xi or fewer modes");
    }
    rep.cutoffs.push_back(d);
  }

  const LinearNetwork o = haar_special_orthogonal(m, seed);
  rep.network = o.matrix();
  const auto predicted = predicted_parity_distribution(o, n, variant);
  rep.predicted_collision_mass = predicted.unassigned_mass;
  const auto predicted_map = predicted.distribution.as_map();
  const Decomposition elements = reck_decompose(o);

  for (const auto& pattern : all_parity_patterns(m)) {
    EquivalenceRow row;
    row.pattern = pattern;
    if (auto it = predicted_map.find(pattern); it != predicted_map.end()) row.predicted = it->second;
    rep.rows.push_back(std::move(row));
  }

  for (std::size_t x = 0; x < xi_list.size(); ++x) {
    auto state = build_passv_input(n, m, SqueezingParameter(xi_list[x]), variant, rep.cutoffs[x]);
    apply_network(state, elements);
    const auto dist = parity_distribution(state);
    rep.truncation_budget = std::max(rep.truncation_budget, dist.normalization_defect);
    double collision = 0.0;
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
      const double p = dist.support[k].second;
      rep.rows[k].brute_force.push_back(p);
      if (rep.rows[k].predicted) {
        rep.max_deviation = std::max(rep.max_deviation, std::abs(p - *rep.rows[k].predicted));
      } else {
        collision += p;
      }
    }
    rep.collision_sector_mass.push_back(collision);
  }

  for (const auto& row : rep.rows) {
    if (!row.predicted) continue;
    const auto [lo, hi] = std::minmax_element(row.brute_force.begin(), row.brute_force.end());
    rep.max_cross_xi_deviation = std::max(rep.max_cross_xi_deviation, *hi - *lo);
  }
  return rep;
}

/// |<psi|U psi>| for psi the uniform product of squeezed vacua. Close to 1
/// for real networks; a network that mixes quadratures lowers it.
inline double squeezed_invariance_check(const LinearNetwork& network, const SqueezingParameter& xi, int cutoff) {
  const auto original = squeezed_product_state(network.modes(), xi, cutoff);
  auto evolved = original;
  apply_network(evolved, reck_decompose(network));
  return std::abs(state_overlap(original, evolved));
}

}  // namespace passv
