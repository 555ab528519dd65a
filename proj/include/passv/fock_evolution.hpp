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

// Brute-force simulation in a truncated Fock space.
//
// A state of m modes with per-mode cutoff d is a dense tensor of (d+1)^m
// amplitudes. Anything pushed above the cutoff is dropped and its squared
// norm is added to `truncation_loss`; nothing is renormalized until a
// distribution is read out.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "passv/error.hpp"
#include "passv/fock_core.hpp"
#include "passv/fock_sampler.hpp"
#include "passv/interferometer.hpp"

namespace passv {

/// xi = r e^{i theta}
struct SqueezingParameter {
  double r = 0.0;
  double theta = 0.0;

  SqueezingParameter() = default;
  SqueezingParameter(double magnitude, double phase = 0.0) : r(magnitude), theta(phase) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("squeezing magnitude must be finite and >= 0");
  }
  Complex value() const { return std::polar(r, theta); }
};

enum class PhotonVariant { kAdded, kSubtracted };

inline const char* to_string(PhotonVariant v) { return v == PhotonVariant::kAdded ? "added" : "subtracted"; }

enum class Ladder { kRaise, kLower };

/// Single-mode amplitudes up to a cutoff plus the exact mass beyond it.
struct SingleModeVector {
  std::vector<Complex> amplitudes;
  double tail_mass = 0.0;
};

/// Fock expansion of S(xi)|0>:
///   c_{2k} = (-1)^k sqrt((2k)!) / (2^k k!) e^{i k theta} tanh^k(r) / sqrt(cosh r),
/// odd coefficients zero.
inline SingleModeVector squeezed_vacuum_vector(const SqueezingParameter& xi, int cutoff) {
  if (cutoff < 0) throw InvalidArgument("cutoff must be >= 0");
  SingleModeVector out;
  out.amplitudes.assign(static_cast<std::size_t>(cutoff) + 1, Complex(0.0));
  const double t = std::tanh(xi.r);
  const Complex step = -std::polar(t, xi.theta);
  Complex c = 1.0 / std::sqrt(std::cosh(xi.r));
  out.amplitudes[0] = c;
  // |c_{2k}|^2 / |c_{2k-2}|^2 = t^2 (2k-1)/(2k); the tail is summed term by term.
  double tail = 0.0;
  for (int k = 1; t > 0.0; ++k) {
    c *= step * std::sqrt((2.0 * k - 1.0) / (2.0 * k));
    const double mass = std::norm(c);
    if (2 * k <= cutoff) {
      out.amplitudes[static_cast<std::size_t>(2 * k)] = c;
    } else {
      tail += mass;
      if (mass <= tail * 1e-18 || mass == 0.0) break;
    }
  }
  out.tail_mass = tail;
  return out;
}

/// Mass of |xi> above photon number `cutoff`.
inline double squeezed_tail_mass(double r, int cutoff) {
  return squeezed_vacuum_vector(SqueezingParameter(r), cutoff).tail_mass;
}

inline constexpr int kMaxCutoff = 4096;

namespace detail {

// Cutoff beyond which |xi> carries less than 1e-30 of its mass.
inline int wide_cutoff(double r) {
  int d = 0;
  while (squeezed_tail_mass(r, d) > 1e-30) {
    d += 2;
    if (d > kMaxCutoff) throw SizeLimitError("squeezing too large for any practical cutoff");
  }
  return d;
}

}  // namespace detail

/// Squeezed number state S(xi)|k> = (cosh r a^+ + e^{-i theta} sinh r a)^k |xi> / sqrt(k!),
/// with amplitudes up to `cutoff` and the mass above it.
inline SingleModeVector squeezed_number_state(const SqueezingParameter& xi, int k, int cutoff) {
  if (k < 0) throw InvalidArgument("photon number must be >= 0");
  if (cutoff < 0) throw InvalidArgument("cutoff must be >= 0");
  const int wide = std::max(cutoff, detail::wide_cutoff(xi.r) + 2 * k) + 2;
  std::vector<Complex> v = squeezed_vacuum_vector(xi, wide).amplitudes;
  const double ch = std::cosh(xi.r);
  const Complex sh = std::polar(std::sinh(xi.r), -xi.theta);
  std::vector<Complex> next(v.size());
  for (int step = 1; step <= k; ++step) {
    std::fill(next.begin(), next.end(), Complex(0.0));
    for (std::size_t p = 0; p < v.size(); ++p) {
      if (p + 1 < v.size()) next[p + 1] += ch * std::sqrt(static_cast<double>(p + 1)) * v[p];
      if (p > 0) next[p - 1] += sh * std::sqrt(static_cast<double>(p)) * v[p];
    }
    const double inv = 1.0 / std::sqrt(static_cast<double>(step));
    for (std::size_t p = 0; p < v.size(); ++p) v[p] = next[p] * inv;
  }
  SingleModeVector out;
  out.amplitudes.assign(v.begin(), v.begin() + cutoff + 1);
  for (std::size_t p = static_cast<std::size_t>(cutoff) + 1; p < v.size(); ++p) out.tail_mass += std::norm(v[p]);
  return out;
}

/// Smallest cutoff d such that every squeezed number state S(r)|k>, k <= n,
/// keeps all but eps_tail of its mass at or below d. A real network commutes
/// with the uniform squeezer, so any single mode of the evolving n-photon
/// state is built from these.
inline int recommended_cutoff(double r, int n, double eps_tail = 1e-8) {
  if (!(eps_tail > 0.0)) throw InvalidArgument("tail tolerance must be > 0");
  if (n < 0) throw InvalidArgument("photon number must be >= 0");
  const SqueezingParameter xi(r);
  int best = 0;
  const int wide = detail::wide_cutoff(r) + 2 * n + 2;
  for (int k = 0; k <= n; ++k) {
    const auto v = squeezed_number_state(xi, k, wide);
    // Walk down from the top while the mass above d stays within budget.
    double tail = v.tail_mass;
    int d = wide;
    while (d > k) {
      const double next = tail + std::norm(v.amplitudes[static_cast<std::size_t>(d)]);
      if (next > eps_tail) break;
      tail = next;
      --d;
    }
    best = std::max(best, d);
  }
  return best;
}

inline constexpr std::uint64_t kMaxStateAmplitudes = std::uint64_t{1} << 24;

class TruncatedFockState {
 public:
  TruncatedFockState(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
    if (modes < 1) throw InvalidDimension("mode count must be >= 1");
    if (cutoff < 0) throw InvalidArgument("cutoff must be >= 0");
    std::uint64_t size = 1;
    for (int i = 0; i < modes; ++i) {
      size *= static_cast<std::uint64_t>(cutoff) + 1;
      if (size > kMaxStateAmplitudes) {
        throw SizeLimitError("(cutoff+1)^modes = (" + std::to_string(cutoff + 1) + ")^" + std::to_string(modes) +
                             " exceeds " + std::to_string(kMaxStateAmplitudes) +
                             " amplitudes; reduce squeezing or mode count");
      }
    }
    amplitudes_.assign(size, Complex(0.0));
    strides_.resize(static_cast<std::size_t>(modes));
    std::size_t s = 1;
    for (int i = modes - 1; i >= 0; --i) {
      strides_[static_cast<std::size_t>(i)] = s;
      s *= static_cast<std::size_t>(cutoff) + 1;
    }
  }

  static TruncatedFockState vacuum(int modes, int cutoff) {
    TruncatedFockState s(modes, cutoff);
    s.amplitudes_[0] = 1.0;
    return s;
  }

  static TruncatedFockState basis(const ModeConfiguration& config, int cutoff) {
    TruncatedFockState s(static_cast<int>(config.modes()), cutoff);
    s.at(config) = 1.0;
    return s;
  }

  /// Tensor product of single-mode vectors (each of length cutoff+1).
  static TruncatedFockState product(const std::vector<std::vector<Complex>>& factors, int cutoff) {
    TruncatedFockState s(static_cast<int>(factors.size()), cutoff);
    for (const auto& f : factors) {
      if (f.size() != static_cast<std::size_t>(cutoff) + 1) throw InvalidArgument("factor length != cutoff + 1");
    }
    std::vector<int> occ(factors.size(), 0);
    for (std::size_t idx = 0; idx < s.amplitudes_.size(); ++idx) {
      s.decode(idx, occ);
      Complex a = 1.0;
      for (std::size_t i = 0; i < occ.size() && a != 0.0; ++i) a *= factors[i][static_cast<std::size_t>(occ[i])];
      s.amplitudes_[idx] = a;
    }
    return s;
  }

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  double truncation_loss() const { return truncation_loss_; }
  void set_truncation_loss(double loss) { truncation_loss_ = loss; }
  void add_truncation_loss(double loss) { truncation_loss_ += loss; }

  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  std::vector<Complex>& amplitudes() { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::size_t stride(int mode) const { return strides_[static_cast<std::size_t>(mode)]; }

  std::size_t index_of(const ModeConfiguration& config) const {
    if (static_cast<int>(config.modes()) != modes_) throw InvalidArgument("configuration mode count mismatch");
    std::size_t idx = 0;
    for (int i = 0; i < modes_; ++i) {
      const int k = config[static_cast<std::size_t>(i)];
      if (k > cutoff_) throw InvalidArgument("occupation " + std::to_string(k) + " exceeds cutoff");
      idx += static_cast<std::size_t>(k) * strides_[static_cast<std::size_t>(i)];
    }
    return idx;
  }

  void decode(std::size_t idx, std::vector<int>& occ) const {
    occ.resize(static_cast<std::size_t>(modes_));
    const auto base = static_cast<std::size_t>(cutoff_) + 1;
    for (int i = modes_ - 1; i >= 0; --i) {
      occ[static_cast<std::size_t>(i)] = static_cast<int>(idx % base);
      idx /= base;
    }
  }

  int occupation(std::size_t idx, int mode) const {
    return static_cast<int>((idx / strides_[static_cast<std::size_t>(mode)]) % (static_cast<std::size_t>(cutoff_) + 1));
  }

  Complex& at(const ModeConfiguration& config) { return amplitudes_[index_of(config)]; }
  Complex at(const ModeConfiguration& config) const { return amplitudes_[index_of(config)]; }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
  }

  /// Multiplies every amplitude (and the recorded loss, in squared norm) by c.
  void scale(Complex c) {
    for (auto& a : amplitudes_) a *= c;
    truncation_loss_ *= std::norm(c);
  }

 private:
  int modes_;
  int cutoff_;
  std::vector<Complex> amplitudes_;
  std::vector<std::size_t> strides_;
  double truncation_loss_ = 0.0;
};

namespace detail {

inline void check_mode(const TruncatedFockState& s, int mode) {
  if (mode < 0 || mode >= s.modes()) {
    throw InvalidArgument("mode " + std::to_string(mode) + " out of range for " + std::to_string(s.modes()) +
                          " modes");
  }
}

// a^+ (raise) or a (lower) on a single-mode amplitude vector; the result has
// the same length and returns the squared norm pushed above the end.
inline double ladder_single(std::vector<Complex>& v, Ladder dir) {
  const std::size_t n = v.size();
  double dropped = 0.0;
  if (dir == Ladder::kRaise) {
    dropped = static_cast<double>(n) * std::norm(v[n - 1]);
    for (std::size_t k = n - 1; k > 0; --k) v[k] = std::sqrt(static_cast<double>(k)) * v[k - 1];
    v[0] = 0.0;
  } else {
    for (std::size_t k = 0; k + 1 < n; ++k) v[k] = std::sqrt(static_cast<double>(k + 1)) * v[k + 1];
    v[n - 1] = 0.0;
  }
  return dropped;
}

}  // namespace detail

/// Applies a^+ or a to one mode in place.
inline void apply_ladder(TruncatedFockState& state, int mode, Ladder dir) {
  detail::check_mode(state, mode);
  const int d = state.cutoff();
  const std::size_t stride = state.stride(mode);
  auto& amps = state.amplitudes();
  double dropped = 0.0;
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if (state.occupation(idx, mode) != 0) continue;
    if (dir == Ladder::kRaise) {
      dropped += static_cast<double>(d + 1) * std::norm(amps[idx + static_cast<std::size_t>(d) * stride]);
      for (int k = d; k > 0; --k) {
        amps[idx + static_cast<std::size_t>(k) * stride] =
            std::sqrt(static_cast<double>(k)) * amps[idx + static_cast<std::size_t>(k - 1) * stride];
      }
      amps[idx] = 0.0;
    } else {
      for (int k = 0; k < d; ++k) {
        amps[idx + static_cast<std::size_t>(k) * stride] =
            std::sqrt(static_cast<double>(k + 1)) * amps[idx + static_cast<std::size_t>(k + 1) * stride];
      }
      amps[idx + static_cast<std::size_t>(d) * stride] = 0.0;
    }
  }
  state.add_truncation_loss(dropped);
}

/// Product of squeezed vacua |xi>^{(x) m}; the missing tail mass is recorded as loss.
inline TruncatedFockState squeezed_product_state(int modes, const SqueezingParameter& xi, int cutoff) {
  const auto sv = squeezed_vacuum_vector(xi, cutoff);
  std::vector<std::vector<Complex>> factors(static_cast<std::size_t>(modes), sv.amplitudes);
  auto state = TruncatedFockState::product(factors, cutoff);
  state.set_truncation_loss(std::max(0.0, 1.0 - state.squared_norm()));
  return state;
}

/// a^+ (or a) on each of the first n modes of |xi,...,xi>, normalized
/// analytically: |a^+|xi>|| = cosh r and |a|xi>|| = sinh r.
inline TruncatedFockState build_passv_input(int n, int m, const SqueezingParameter& xi, PhotonVariant variant,
                                            int cutoff) {
  if (m < 1) throw InvalidDimension("mode count must be >= 1");
  if (n < 1 || n > m) throw InvalidArgument("need 1 <= n <= m");
  if (cutoff < 0) throw InvalidArgument("cutoff must be >= 0");
  if (variant == PhotonVariant::kSubtracted && xi.r == 0.0) {
    throw ZeroStateError("photon subtraction from unsqueezed vacuum gives the zero state (a|0> = 0)");
  }
  // One extra level so the ladder result is exact up to the cutoff.
  const auto sv = squeezed_vacuum_vector(xi, cutoff + 1);
  std::vector<Complex> ladder = sv.amplitudes;
  double norm = 1.0;
  if (variant == PhotonVariant::kAdded) {
    detail::ladder_single(ladder, Ladder::kRaise);
    norm = std::cosh(xi.r);
  } else {
    detail::ladder_single(ladder, Ladder::kLower);
    norm = std::sinh(xi.r);
  }
  for (auto& a : ladder) a /= norm;
  ladder.resize(static_cast<std::size_t>(cutoff) + 1);
  std::vector<Complex> plain = sv.amplitudes;
  plain.resize(static_cast<std::size_t>(cutoff) + 1);

  std::vector<std::vector<Complex>> factors;
  factors.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) factors.push_back(i < n ? ladder : plain);
  auto state = TruncatedFockState::product(factors, cutoff);
  state.set_truncation_loss(std::max(0.0, 1.0 - state.squared_norm()));
  return state;
}

/// Fock-space action of a 2x2 unitary on one mode pair, tabulated per total
/// photon number N = k + l <= 2d.
///
/// With B acting on creation operators as a_i^+ -> B00 a_i^+ + B10 a_j^+ and
/// a_j^+ -> B01 a_i^+ + B11 a_j^+, write B = exp(iH) with H Hermitian. On the
/// N-photon sector the operator is exp(iG) where G = sum_ab H_ab a_a^+ a_b is
/// tridiagonal in |p, N-p>. Diagonalizing G keeps every sector unitary to
/// rounding; the raising recurrence U|k,l> = (B00 a_i^+ + B10 a_j^+) U|k-1,l>
/// / sqrt(k) is simpler but loses accuracy above N ~ 60.
class TwoModeFockOperator {
 public:
  TwoModeFockOperator(const Eigen::Matrix2cd& block, int cutoff) : cutoff_(cutoff) {
    // B is normal, so its Schur form is diagonal up to rounding.
    const Eigen::ComplexSchur<Eigen::Matrix2cd> schur(block);
    const Eigen::Matrix2cd& q = schur.matrixU();
    const Eigen::Vector2cd phases(std::arg(schur.matrixT()(0, 0)), std::arg(schur.matrixT()(1, 1)));
    const Eigen::Matrix2cd h = q * phases.asDiagonal() * q.adjoint();

    sectors_.reserve(static_cast<std::size_t>(2 * cutoff) + 1);
    for (int n = 0; n <= 2 * cutoff; ++n) {
      ComplexMatrix g = ComplexMatrix::Zero(n + 1, n + 1);
      for (int p = 0; p <= n; ++p) {
        g(p, p) = static_cast<double>(p) * h(0, 0).real() + static_cast<double>(n - p) * h(1, 1).real();
        if (p < n) {
          // a_i^+ a_j |p, n-p> = sqrt((p+1)(n-p)) |p+1, n-p-1>
          const double w = std::sqrt(static_cast<double>(p + 1) * static_cast<double>(n - p));
          g(p + 1, p) = h(0, 1) * w;
          g(p, p + 1) = h(1, 0) * w;
        }
      }
      const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(g);
      const Eigen::VectorXcd e = (Complex(0.0, 1.0) * eig.eigenvalues().cast<Complex>()).array().exp();
      sectors_.push_back(eig.eigenvectors() * e.asDiagonal() * eig.eigenvectors().adjoint());
    }
  }

  int cutoff() const { return cutoff_; }

  /// Amplitudes of U|k,l> indexed by photons p in the first mode (length k+l+1).
  const Complex* image(int k, int l) const {
    const auto& s = sectors_[static_cast<std::size_t>(k + l)];
    return s.data() + static_cast<std::ptrdiff_t>(k) * s.rows();
  }

 private:
  int cutoff_;
  std::vector<ComplexMatrix> sectors_;  // column k of sector N is U|k, N-k>
};

/// Applies a 2x2 mode transformation (column convention, see interferometer.hpp)
/// to modes (i, j). Output components with more than `cutoff` photons in
/// either mode are dropped into the truncation loss.
inline void apply_two_mode(TruncatedFockState& state, int i, int j, const Eigen::Matrix2cd& block) {
  detail::check_mode(state, i);
  detail::check_mode(state, j);
  if (i == j) throw InvalidArgument("two-mode element needs distinct modes");
  const int d = state.cutoff();
  const TwoModeFockOperator op(block, d);
  const std::size_t si = state.stride(i);
  const std::size_t sj = state.stride(j);
  const auto dim = static_cast<std::size_t>(d) + 1;
  auto& amps = state.amplitudes();

  std::vector<Complex> in(dim * dim);
  std::vector<Complex> out(dim * dim);
  std::vector<Complex> sector(2 * dim);
  double dropped = 0.0;
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (state.occupation(base, i) != 0 || state.occupation(base, j) != 0) continue;
    bool any = false;
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t l = 0; l < dim; ++l) {
        in[k * dim + l] = amps[base + k * si + l * sj];
        any = any || in[k * dim + l] != 0.0;
      }
    }
    if (!any) continue;
    std::fill(out.begin(), out.end(), Complex(0.0));
    for (int total = 0; total <= 2 * d; ++total) {
      const int kmin = std::max(0, total - d);
      const int kmax = std::min(total, d);
      std::fill_n(sector.begin(), total + 1, Complex(0.0));
      bool nonzero = false;
      for (int k = kmin; k <= kmax; ++k) {
        const Complex a = in[static_cast<std::size_t>(k) * dim + static_cast<std::size_t>(total - k)];
        if (a == 0.0) continue;
        nonzero = true;
        const Complex* img = op.image(k, total - k);
        for (int p = 0; p <= total; ++p) sector[static_cast<std::size_t>(p)] += a * img[p];
      }
      if (!nonzero) continue;
      for (int p = 0; p <= total; ++p) {
        const Complex v = sector[static_cast<std::size_t>(p)];
        if (p > d || total - p > d) {
          dropped += std::norm(v);
        } else {
          out[static_cast<std::size_t>(p) * dim + static_cast<std::size_t>(total - p)] = v;
        }
      }
    }
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t l = 0; l < dim; ++l) amps[base + k * si + l * sj] = out[k * dim + l];
    }
  }
  state.add_truncation_loss(dropped);
}

/// Real beamsplitter a_i^+ -> c a_i^+ + s a_j^+, a_j^+ -> -s a_i^+ + c a_j^+.
inline void apply_beamsplitter(TruncatedFockState& state, int i, int j, double theta) {
  if (i == j) throw InvalidArgument("beamsplitter needs distinct modes");
  apply_two_mode(state, i, j, TwoModeElement{i, j, theta, 0.0}.block());
}

/// Phase e^{i phi n} on mode `mode`.
inline void apply_phase(TruncatedFockState& state, int mode, double phi) {
  detail::check_mode(state, mode);
  if (phi == 0.0) return;
  auto& amps = state.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    const int k = state.occupation(idx, mode);
    if (k) amps[idx] *= std::polar(1.0, phi * k);
  }
}

/// Elements in list order (elements[0] acts first).
inline void apply_network(TruncatedFockState& state, const std::vector<TwoModeElement>& elements) {
  for (const auto& e : elements) {
    detail::check_element(e, state.modes());
  }
  for (const auto& e : elements) apply_two_mode(state, e.i, e.j, e.block());
}

inline void apply_network(TruncatedFockState& state, const Decomposition& d) {
  if (d.modes != state.modes()) throw InvalidArgument("decomposition mode count does not match the state");
  apply_network(state, d.elements);
  for (std::size_t k = 0; k < d.residual_phases.size(); ++k) {
    apply_phase(state, static_cast<int>(k), d.residual_phases[k]);
  }
}

namespace detail {

inline double readout_norm(const TruncatedFockState& state) {
  const double norm2 = state.squared_norm();
  if (!(norm2 > 0.0)) throw UndefinedDistribution("state has zero norm");
  if (norm2 > 1.0 + 1e-9) {
    throw ValidationError("state squared norm " + std::to_string(norm2) + " exceeds 1");
  }
  return norm2;
}

}  // namespace detail

/// All 2^m parity patterns, "++...+" first, mode 0 most significant.
inline std::vector<ParityPattern> all_parity_patterns(int m) {
  if (m < 1) throw InvalidDimension("mode count must be >= 1");
  if (m > 24) throw SizeLimitError("too many modes to list every parity pattern");
  std::vector<ParityPattern> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b) {
    std::vector<std::int8_t> o(static_cast<std::size_t>(m), 1);
    for (int i = 0; i < m; ++i) {
      if ((b >> (m - 1 - i)) & 1U) o[static_cast<std::size_t>(i)] = -1;
    }
    out.emplace_back(std::move(o));
  }
  return out;
}

/// Probability of every parity pattern, renormalized by the retained norm.
inline ParityDistribution parity_distribution(const TruncatedFockState& state) {
  const double norm2 = detail::readout_norm(state);
  const int m = state.modes();
  std::vector<double> by_bits(std::size_t{1} << m, 0.0);
  const auto& amps = state.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    const double p = std::norm(amps[idx]);
    if (p == 0.0) continue;
    std::uint64_t bits = 0;
    for (int i = 0; i < m; ++i) {
      if (state.occupation(idx, i) & 1) bits |= std::uint64_t{1} << i;
    }
    by_bits[bits] += p;
  }
  ParityDistribution dist;
  for (auto& pattern : all_parity_patterns(m)) {
    const double p = by_bits[pattern.bits()] / norm2;
    dist.support.emplace_back(std::move(pattern), p);
  }
  dist.normalization_defect = std::abs(1.0 - norm2);
  return dist;
}

/// Joint photon-number probabilities of all retained basis states with
/// non-zero amplitude, in ascending index order.
inline ConfigurationDistribution number_distribution(const TruncatedFockState& state) {
  const double norm2 = detail::readout_norm(state);
  ConfigurationDistribution dist;
  const auto& amps = state.amplitudes();
  std::vector<int> occ;
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    const double p = std::norm(amps[idx]);
    if (p == 0.0) continue;
    state.decode(idx, occ);
    dist.support.emplace_back(ModeConfiguration(occ), p / norm2);
  }
  dist.normalization_defect = std::abs(1.0 - norm2);
  return dist;
}

/// <a|b>
inline Complex state_overlap(const TruncatedFockState& a, const TruncatedFockState& b) {
  if (a.modes() != b.modes() || a.cutoff() != b.cutoff()) {
    throw InvalidArgument("overlap needs states with equal mode count and cutoff");
  }
  Complex s = 0.0;
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

}  // namespace passv
