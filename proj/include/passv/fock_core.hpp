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

// Photon configurations over optical modes and their parity outcomes.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "passv/error.hpp"

namespace passv {

/// Occupation numbers (photons per mode).
struct ModeConfiguration {
  std::vector<int> occupations;

  ModeConfiguration() = default;
  explicit ModeConfiguration(std::vector<int> occ) : occupations(std::move(occ)) {
    for (int k : occupations) {
      if (k < 0) throw InvalidArgument("negative occupation number");
    }
  }

  std::size_t modes() const { return occupations.size(); }
  int total() const { return std::accumulate(occupations.begin(), occupations.end(), 0); }
  int operator[](std::size_t i) const { return occupations[i]; }

  bool collision_free() const {
    return std::all_of(occupations.begin(), occupations.end(), [](int k) { return k <= 1; });
  }

  /// The standard boson-sampling input: one photon in each of the first n modes.
  static ModeConfiguration leading_ones(int n, int m) {
    if (m < 1) throw InvalidDimension("mode count must be >= 1");
    if (n < 0 || n > m) throw InvalidArgument("need 0 <= n <= m for a binary input");
    std::vector<int> occ(static_cast<std::size_t>(m), 0);
    std::fill_n(occ.begin(), n, 1);
    return ModeConfiguration(std::move(occ));
  }

  friend auto operator<=>(const ModeConfiguration&, const ModeConfiguration&) = default;
  friend bool operator==(const ModeConfiguration&, const ModeConfiguration&) = default;
};

/// Per-mode parity outcome: +1 for an even photon number, -1 for odd.
struct ParityPattern {
  std::vector<std::int8_t> outcomes;

  ParityPattern() = default;
  explicit ParityPattern(std::vector<std::int8_t> out) : outcomes(std::move(out)) {
    for (auto v : outcomes) {
      if (v != 1 && v != -1) throw InvalidArgument("parity outcomes must be +1 or -1");
    }
  }

  std::size_t modes() const { return outcomes.size(); }
  int operator[](std::size_t i) const { return outcomes[i]; }

  int odd_count() const {
    return static_cast<int>(std::count(outcomes.begin(), outcomes.end(), std::int8_t{-1}));
  }

  /// Pattern index with bit i set when mode i is odd.
  std::uint64_t bits() const {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (outcomes[i] == -1) b |= std::uint64_t{1} << i;
    }
    return b;
  }

  static ParityPattern from_bits(std::uint64_t b, std::size_t m) {
    std::vector<std::int8_t> out(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
      if ((b >> i) & 1U) out[i] = -1;
    }
    return ParityPattern(std::move(out));
  }

  friend auto operator<=>(const ParityPattern&, const ParityPattern&) = default;
  friend bool operator==(const ParityPattern&, const ParityPattern&) = default;
};

/// Binomial coefficient C(n, k) in 64-bit arithmetic; 0 when k is out of range.
inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // exact at every step: r * (n - k + i) is divisible by i
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

namespace detail {

// Fills occupations [pos, m) with `left` photons, first mode descending.
inline void enumerate_rec(std::vector<int>& occ, std::size_t pos, int left,
                          std::vector<ModeConfiguration>& out) {
  if (pos + 1 == occ.size()) {
    occ[pos] = left;
    out.emplace_back(occ);
    return;
  }
  for (int k = left; k >= 0; --k) {
    occ[pos] = k;
    enumerate_rec(occ, pos + 1, left - k, out);
  }
  occ[pos] = 0;
}

}  // namespace detail

/// All ways to place n indistinguishable photons in m modes, in descending
/// lexicographic order: (n,0,...,0) first, (0,...,0,n) last.
inline std::vector<ModeConfiguration> enumerate_configurations(int n, int m) {
  if (m < 1) throw InvalidDimension("mode count must be >= 1");
  if (n < 0) throw InvalidArgument("photon count must be >= 0");
  std::vector<ModeConfiguration> out;
  out.reserve(binomial(n + m - 1, n));
  std::vector<int> occ(static_cast<std::size_t>(m), 0);
  detail::enumerate_rec(occ, 0, n, out);
  return out;
}

inline ParityPattern parity_pattern_of(const ModeConfiguration& config) {
  std::vector<std::int8_t> out;
  out.reserve(config.modes());
  for (int k : config.occupations) out.push_back(k % 2 == 0 ? 1 : -1);
  return ParityPattern(std::move(out));
}

/// The binary configuration whose odd modes are exactly the pattern's odd modes.
inline ModeConfiguration binary_configuration_of(const ParityPattern& pattern) {
  std::vector<int> occ;
  occ.reserve(pattern.modes());
  for (auto v : pattern.outcomes) occ.push_back(v == -1 ? 1 : 0);
  return ModeConfiguration(std::move(occ));
}

/// The C(m, n) binary configurations with exactly n occupied modes, in the
/// same order as enumerate_configurations.
inline std::vector<ModeConfiguration> collision_free_configurations(int n, int m) {
  if (m < 1) throw InvalidDimension("mode count must be >= 1");
  if (n < 0 || n > m) {
    throw InvalidArgument("no binary configuration of " + std::to_string(n) + " photons in " +
                          std::to_string(m) + " modes");
  }
  std::vector<ModeConfiguration> out;
  out.reserve(binomial(m, n));
  // Descending lexicographic order over 0/1 vectors == prev_permutation from 1..10..0.
  std::vector<int> occ(static_cast<std::size_t>(m), 0);
  std::fill_n(occ.begin(), n, 1);
  do {
    out.emplace_back(occ);
  } while (std::prev_permutation(occ.begin(), occ.end()));
  return out;
}

// Text forms: configurations as "1,0,2", parity patterns as "+-+".

inline std::string to_string(const ModeConfiguration& c) {
  std::string s;
  for (std::size_t i = 0; i < c.occupations.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c.occupations[i]);
  }
  return s;
}

inline std::string to_string(const ParityPattern& p) {
  std::string s;
  s.reserve(p.modes());
  for (auto v : p.outcomes) s += (v == 1 ? '+' : '-');
  return s;
}

inline ModeConfiguration parse_configuration(std::string_view text) {
  std::vector<int> occ;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (tok.empty()) throw InvalidArgument("empty field in configuration '" + std::string(text) + "'");
    int v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') {
        throw InvalidArgument("bad occupation in configuration '" + std::string(text) + "'");
      }
      v = v * 10 + (ch - '0');
    }
    occ.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return ModeConfiguration(std::move(occ));
}

inline ParityPattern parse_parity_pattern(std::string_view text) {
  std::vector<std::int8_t> out;
  for (char ch : text) {
    if (ch == '+') {
      out.push_back(1);
    } else if (ch == '-') {
      out.push_back(-1);
    } else {
      throw InvalidArgument("bad parity pattern '" + std::string(text) + "'");
    }
  }
  return ParityPattern(std::move(out));
}

}  // namespace passv
