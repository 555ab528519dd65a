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

// Permanent-based output distributions of Fock-state boson sampling.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "passv/error.hpp"
#include "passv/fock_core.hpp"
#include "passv/interferometer.hpp"
#include "passv/permanent.hpp"

namespace passv {

/// Probabilities over configurations or parity patterns. Entries keep the
/// order they were produced in; zero-probability keys are retained.
template <typename Key>
struct OutputDistribution {
  std::vector<std::pair<Key, double>> support;
  double normalization_defect = 0.0;  // |1 - sum p| before any renormalization

  std::size_t size() const { return support.size(); }
  bool empty() const { return support.empty(); }

  double total() const {
    double s = 0.0;
    for (const auto& kv : support) s += kv.second;
    return s;
  }

  /// Probability of `key`, 0 if absent.
  double probability(const Key& key) const {
    for (const auto& kv : support) {
      if (kv.first == key) return kv.second;
    }
    return 0.0;
  }

  std::map<Key, double> as_map() const {
    std::map<Key, double> out;
    for (const auto& kv : support) out[kv.first] += kv.second;
    return out;
  }
};

using ConfigurationDistribution = OutputDistribution<ModeConfiguration>;
using ParityDistribution = OutputDistribution<ParityPattern>;

inline constexpr int kMaxAmplitudePhotons = 20;
inline constexpr std::uint64_t kMaxSupportSize = 1'000'000;

inline double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

/// <output| U |input> = Per(U[output, input]) / sqrt(prod input! * prod output!)
inline Complex transition_amplitude(const ComplexMatrix& m, const ModeConfiguration& input,
                                    const ModeConfiguration& output) {
  const ComplexMatrix sub = scattering_submatrix(m, input, output);
  if (sub.rows() > kMaxAmplitudePhotons) {
    throw SizeLimitError("transition amplitudes limited to " + std::to_string(kMaxAmplitudePhotons) +
                         " photons");
  }
  double norm = 1.0;
  for (int t : input.occupations) norm *= factorial(t);
  for (int s : output.occupations) norm *= factorial(s);
  return permanent(sub) / std::sqrt(norm);
}

inline Complex transition_amplitude(const LinearNetwork& m, const ModeConfiguration& input,
                                    const ModeConfiguration& output) {
  return transition_amplitude(m.matrix(), input, output);
}

/// Exact distribution over every n-photon configuration, in enumeration order.
inline ConfigurationDistribution output_distribution(const LinearNetwork& m, const ModeConfiguration& input) {
  const int n = input.total();
  const int modes = m.modes();
  if (static_cast<int>(input.modes()) != modes) {
    throw InvalidArgument("input configuration has " + std::to_string(input.modes()) + " modes, network has " +
                          std::to_string(modes));
  }
  if (binomial(n + modes - 1, n) > kMaxSupportSize) {
    throw SizeLimitError("output support of C(" + std::to_string(n + modes - 1) + "," + std::to_string(n) +
                         ") configurations exceeds the limit of " + std::to_string(kMaxSupportSize));
  }
  ConfigurationDistribution dist;
  auto outputs = enumerate_configurations(n, modes);
  dist.support.reserve(outputs.size());
  double total = 0.0;
  for (auto& out : outputs) {
    const double p = std::norm(transition_amplitude(m.matrix(), input, out));
    total += p;
    dist.support.emplace_back(std::move(out), p);
  }
  dist.normalization_defect = std::abs(1.0 - total);
  return dist;
}

inline constexpr double kSamplingNormTolerance = 1e-6;

/// Inverse-CDF categorical sampling, deterministic in `seed`.
template <typename Key>
std::vector<Key> draw_samples(const OutputDistribution<Key>& dist, std::uint64_t seed, std::int64_t shots) {
  if (shots < 0) throw InvalidArgument("shot count must be >= 0");
  if (dist.empty()) throw ValidationError("cannot sample from an empty distribution");
  std::vector<double> cdf;
  cdf.reserve(dist.size());
  double acc = 0.0;
  for (const auto& kv : dist.support) {
    if (!(kv.second >= 0.0)) throw ValidationError("negative or NaN probability in distribution");
    acc += kv.second;
    cdf.push_back(acc);
  }
  if (std::abs(acc - 1.0) > kSamplingNormTolerance) {
    throw ValidationError("distribution sums to " + std::to_string(acc) + ", not 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<Key> out;
  out.reserve(static_cast<std::size_t>(shots));
  for (std::int64_t s = 0; s < shots; ++s) {
    // 53 random bits scaled into [0, acc)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    // Skip zero-width bins at the top end (u can only land there through rounding).
    idx = std::min(idx, cdf.size() - 1);
    while (idx > 0 && dist.support[idx].second == 0.0) --idx;
    out.push_back(dist.support[idx].first);
  }
  return out;
}

/// Counts of each key in the distribution's order.
template <typename Key>
std::vector<std::int64_t> tally(const OutputDistribution<Key>& dist, const std::vector<Key>& samples) {
  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < dist.size(); ++i) index.emplace(dist.support[i].first, i);
  std::vector<std::int64_t> counts(dist.size(), 0);
  for (const auto& s : samples) {
    auto it = index.find(s);
    if (it != index.end()) ++counts[it->second];
  }
  return counts;
}

}  // namespace passv
