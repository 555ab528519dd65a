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

// Linear-optical transfer matrices.
//
// Convention: a network with matrix M maps the input creation operator of
// mode j to  a_j^+  ->  sum_i M(i, j) a_i^+,  i.e. column j is the output
// amplitude vector of a single photon entering mode j. A real two-mode
// element with angle theta on modes (i, j) therefore acts as
//
//   a_i^+ -> cos(theta) a_i^+ + sin(theta) a_j^+
//   a_j^+ -> -sin(theta) a_i^+ + cos(theta) a_j^+
//
// with 2x2 block [[c, -s], [s, c]] in rows/columns (i, j).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "passv/error.hpp"
#include "passv/fock_core.hpp"

namespace passv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class NetworkKind {
  kUnitary,
  kSpecialOrthogonal,
  // Real orthogonal with det = -1 allowed; only produced when the
  // determinant repair of haar_orthogonal is switched off.
  kOrthogonal,
};

inline constexpr double kNetworkTolerance = 1e-10;

inline const char* to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::kUnitary:
      return "unitary";
    case NetworkKind::kSpecialOrthogonal:
      return "special-orthogonal";
    case NetworkKind::kOrthogonal:
      return "orthogonal";
  }
  return "unknown";
}

/// max_ij |(M^+ M - I)_ij|
inline double unitarity_error(const ComplexMatrix& m) {
  const auto n = m.cols();
  return (m.adjoint() * m - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

inline double max_imaginary(const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff(); }

/// m x m transfer matrix tagged with the group it belongs to.
class LinearNetwork {
 public:
  LinearNetwork(ComplexMatrix entries, NetworkKind kind, double tolerance = kNetworkTolerance)
      : entries_(std::move(entries)), kind_(kind) {
    validate(tolerance);
  }

  static LinearNetwork identity(int m, NetworkKind kind = NetworkKind::kSpecialOrthogonal) {
    if (m < 1) throw InvalidDimension("mode count must be >= 1");
    return LinearNetwork(ComplexMatrix::Identity(m, m), kind);
  }

  int modes() const { return static_cast<int>(entries_.rows()); }
  NetworkKind kind() const { return kind_; }
  const ComplexMatrix& matrix() const { return entries_; }
  Complex operator()(int i, int j) const { return entries_(i, j); }
  bool is_real() const { return kind_ != NetworkKind::kUnitary; }

 private:
  void validate(double tol) const {
    if (entries_.rows() == 0) throw InvalidDimension("network has zero modes");
    if (entries_.rows() != entries_.cols()) throw InvalidDimension("network matrix is not square");
    if (!entries_.allFinite()) throw ValidationError("network matrix has non-finite entries");
    const double uerr = unitarity_error(entries_);
    if (uerr > tol) {
      throw ValidationError("matrix is not unitary (max |M^+M - I| = " + std::to_string(uerr) + ")");
    }
    if (kind_ == NetworkKind::kUnitary) return;
    if (max_imaginary(entries_) != 0.0) {
      throw ValidationError("orthogonal network has non-zero imaginary parts");
    }
    if (kind_ == NetworkKind::kSpecialOrthogonal) {
      const double det = entries_.real().determinant();
      if (std::abs(det - 1.0) > tol) {
        throw ValidationError("orthogonal matrix has det = " + std::to_string(det) + ", expected +1");
      }
    }
  }

  ComplexMatrix entries_;
  NetworkKind kind_;
};

/// Haar-random unitary: QR of a complex Ginibre matrix with the diagonal of R
/// rotated to the positive real axis.
inline LinearNetwork haar_unitary(int m, std::uint64_t seed) {
  if (m < 1) throw InvalidDimension("mode count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix z(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0 ? d / mag : Complex(1.0));
  }
  return LinearNetwork(std::move(q), NetworkKind::kUnitary);
}

/// Haar-random real orthogonal matrix. With `special` set (the default), a
/// det = -1 draw is moved into SO(m) by negating its last column.
inline LinearNetwork haar_orthogonal(int m, std::uint64_t seed, bool special = true) {
  if (m < 1) throw InvalidDimension("mode count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) z(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  const bool negative = q.determinant() < 0.0;
  if (special && negative) q.col(m - 1) *= -1.0;
  const NetworkKind kind =
      (special || !negative) ? NetworkKind::kSpecialOrthogonal : NetworkKind::kOrthogonal;
  return LinearNetwork(q.cast<Complex>(), kind);
}

inline LinearNetwork haar_special_orthogonal(int m, std::uint64_t seed) {
  return haar_orthogonal(m, seed, true);
}

/// Realification U = A + iB  ->  [[A, -B], [B, A]], a homomorphism U(m) -> SO(2m).
inline LinearNetwork embed_unitary_as_orthogonal(const ComplexMatrix& u) {
  if (u.rows() == 0 || u.rows() != u.cols()) throw InvalidDimension("embedding needs a square matrix");
  const double uerr = unitarity_error(u);
  if (uerr > 1e-8) {
    throw ValidationError("cannot embed a non-unitary matrix (max |U^+U - I| = " + std::to_string(uerr) +
                          ")");
  }
  const auto m = u.rows();
  const Eigen::MatrixXd a = u.real();
  const Eigen::MatrixXd b = u.imag();
  Eigen::MatrixXd r(2 * m, 2 * m);
  r.topLeftCorner(m, m) = a;
  r.topRightCorner(m, m) = -b;
  r.bottomLeftCorner(m, m) = b;
  r.bottomRightCorner(m, m) = a;
  // Inputs only known to 1e-8 give an orthogonal image only to about that level.
  return LinearNetwork(r.cast<Complex>(), NetworkKind::kSpecialOrthogonal, std::max(kNetworkTolerance, 4 * uerr));
}

inline LinearNetwork embed_unitary_as_orthogonal(const LinearNetwork& u) {
  return embed_unitary_as_orthogonal(u.matrix());
}

/// Beamsplitter on modes (i, j), preceded by a phase shift phi on mode i.
/// Block: [[e^{i phi} cos(theta), -sin(theta)], [e^{i phi} sin(theta), cos(theta)]].
struct TwoModeElement {
  int i = 0;
  int j = 1;
  double theta = 0.0;
  double phi = 0.0;

  bool is_real() const { return phi == 0.0; }

  Eigen::Matrix2cd block() const {
    const Complex e = std::polar(1.0, phi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2cd b;
    b << e * c, -s, e * s, c;
    return b;
  }

  friend bool operator==(const TwoModeElement&, const TwoModeElement&) = default;
};

/// M = diag(exp(i residual_phases)) * T_K * ... * T_1, with elements[0] = T_1
/// being the first one light passes through.
struct Decomposition {
  int modes = 0;
  std::vector<TwoModeElement> elements;
  std::vector<double> residual_phases;
};

namespace detail {

inline void check_element(const TwoModeElement& e, int m) {
  if (e.i < 0 || e.j < 0 || e.i >= m || e.j >= m) {
    throw InvalidArgument("element modes (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                          ") out of range for " + std::to_string(m) + " modes");
  }
  if (e.i == e.j) throw InvalidArgument("element acts on a single mode twice");
}

// rows (i, j) of `target` <- block * rows (i, j)
inline void left_apply(ComplexMatrix& target, const TwoModeElement& e) {
  const Eigen::Matrix2cd b = e.block();
  for (Eigen::Index col = 0; col < target.cols(); ++col) {
    const Complex x = target(e.i, col);
    const Complex y = target(e.j, col);
    target(e.i, col) = b(0, 0) * x + b(0, 1) * y;
    target(e.j, col) = b(1, 0) * x + b(1, 1) * y;
  }
}

// target <- target * block^+ on columns (i, j)
inline void right_apply_adjoint(ComplexMatrix& target, const TwoModeElement& e) {
  const Eigen::Matrix2cd b = e.block();
  for (Eigen::Index row = 0; row < target.rows(); ++row) {
    const Complex x = target(row, e.i);
    const Complex y = target(row, e.j);
    target(row, e.i) = x * std::conj(b(0, 0)) + y * std::conj(b(0, 1));
    target(row, e.j) = x * std::conj(b(1, 0)) + y * std::conj(b(1, 1));
  }
}

}  // namespace detail

/// Product T_K ... T_1 of the elements (no residual phases).
inline ComplexMatrix reconstruct_matrix(const std::vector<TwoModeElement>& elements, int m) {
  if (m < 1) throw InvalidDimension("mode count must be >= 1");
  ComplexMatrix r = ComplexMatrix::Identity(m, m);
  for (const auto& e : elements) {
    detail::check_element(e, m);
    detail::left_apply(r, e);
  }
  return r;
}

inline ComplexMatrix reconstruct_matrix(const Decomposition& d) {
  ComplexMatrix r = reconstruct_matrix(d.elements, d.modes);
  if (!d.residual_phases.empty()) {
    if (static_cast<int>(d.residual_phases.size()) != d.modes) {
      throw InvalidArgument("residual phase count does not match mode count");
    }
    for (int k = 0; k < d.modes; ++k) r.row(k) *= std::polar(1.0, d.residual_phases[static_cast<std::size_t>(k)]);
  }
  return r;
}

inline LinearNetwork reconstruct(const std::vector<TwoModeElement>& elements, int m) {
  const bool real = std::all_of(elements.begin(), elements.end(), [](const auto& e) { return e.is_real(); });
  return LinearNetwork(reconstruct_matrix(elements, m),
                       real ? NetworkKind::kSpecialOrthogonal : NetworkKind::kUnitary, 1e-9);
}

inline LinearNetwork reconstruct(const Decomposition& d) {
  const bool real_elements =
      std::all_of(d.elements.begin(), d.elements.end(), [](const auto& e) { return e.is_real(); });
  NetworkKind kind = NetworkKind::kUnitary;
  ComplexMatrix r = reconstruct_matrix(d);
  if (real_elements && max_imaginary(r) == 0.0) {
    kind = r.real().determinant() > 0.0 ? NetworkKind::kSpecialOrthogonal : NetworkKind::kOrthogonal;
  }
  return LinearNetwork(std::move(r), kind, 1e-9);
}

/// Triangular (Reck) decomposition into nearest-neighbour two-mode elements.
///
/// Rows are cleared from the last upwards; within row r the entries left of
/// the diagonal are pushed right one column at a time. Real inputs give real
/// rotations (phi = 0) with non-negative pivots, so an SO(m) input ends with
/// all residual phases zero.
inline Decomposition reck_decompose(const LinearNetwork& network) {
  const int m = network.modes();
  const bool real = network.is_real();
  ComplexMatrix w = network.matrix();
  Decomposition out;
  out.modes = m;
  constexpr double kNegligible = 1e-15;

  for (int r = m - 1; r >= 1; --r) {
    for (int c = 0; c < r; ++c) {
      const Complex a = w(r, c);
      const Complex b = w(r, c + 1);
      TwoModeElement e{c, c + 1, 0.0, 0.0};
      if (real) {
        const bool last = (c + 1 == r);
        if (std::abs(a.real()) <= kNegligible && (!last || b.real() >= 0.0)) continue;
        e.theta = std::atan2(a.real(), b.real());
      } else {
        if (std::abs(a) <= kNegligible) continue;
        e.phi = std::arg(a) - (std::abs(b) > 0.0 ? std::arg(b) : 0.0);
        e.theta = std::atan2(std::abs(a), std::abs(b));
      }
      detail::right_apply_adjoint(w, e);
      w(r, c) = 0.0;
      out.elements.push_back(e);
    }
  }
  out.residual_phases.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double p = real ? (w(k, k).real() < 0.0 ? M_PI : 0.0) : std::arg(w(k, k));
    out.residual_phases[static_cast<std::size_t>(k)] = p + 0.0;
  }
  return out;
}

inline double max_entry_error(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// n x n matrix with row block i repeated output[i] times and column block j
/// repeated input[j] times; its permanent drives <output| U |input>.
inline ComplexMatrix scattering_submatrix(const ComplexMatrix& m, const ModeConfiguration& input,
                                          const ModeConfiguration& output) {
  const auto modes = static_cast<std::size_t>(m.rows());
  if (input.modes() != modes || output.modes() != modes) {
    throw InvalidArgument("configuration mode count does not match the network");
  }
  const int n = input.total();
  if (output.total() != n) {
    throw InvalidArgument("input has " + std::to_string(n) + " photons but output has " +
                          std::to_string(output.total()));
  }
  std::vector<int> rows;
  std::vector<int> cols;
  rows.reserve(static_cast<std::size_t>(n));
  cols.reserve(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < modes; ++k) {
    rows.insert(rows.end(), static_cast<std::size_t>(output[k]), static_cast<int>(k));
    cols.insert(cols.end(), static_cast<std::size_t>(input[k]), static_cast<int>(k));
  }
  ComplexMatrix sub(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) sub(a, b) = m(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
  }
  return sub;
}

inline ComplexMatrix scattering_submatrix(const LinearNetwork& m, const ModeConfiguration& input,
                                          const ModeConfiguration& output) {
  return scattering_submatrix(m.matrix(), input, output);
}

}  // namespace passv
