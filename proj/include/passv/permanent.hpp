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

// Exact matrix permanents.
//
// permanent_naive sums over all n! permutations and is kept as an oracle.
// permanent_ryser evaluates Ryser's inclusion-exclusion formula
//
//   Per(A) = (-1)^n  sum_{S subset of columns} (-1)^|S|  prod_i  sum_{j in S} A(i,j)
//
// visiting subsets in Gray-code order so that each step adds or removes one
// column from the running row sums, for O(2^n n) work.
//
// Parallelising: fixing the top k Gray-code bits splits the 2^n subsets into
// 2^k contiguous ranges whose starting row sums can be built directly; each
// range then runs the same update loop and the partial sums are added.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "passv/error.hpp"

namespace passv {

using SquareMatrix = Eigen::MatrixXcd;

inline constexpr int kNaivePermanentMaxSize = 9;
inline constexpr int kRyserPermanentMaxSize = 30;

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) {
    throw InvalidArgument("permanent needs a square matrix, got " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()));
  }
}

}  // namespace detail

template <typename Derived>
typename Derived::Scalar permanent_naive(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a);
  const int n = static_cast<int>(a.rows());
  if (n > kNaivePermanentMaxSize) {
    throw SizeLimitError("naive permanent limited to n <= " + std::to_string(kNaivePermanentMaxSize) +
                         "; use permanent_ryser");
  }
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  Scalar sum(0);
  do {
    Scalar prod(1);
    for (int i = 0; i < n; ++i) prod *= a(i, sigma[static_cast<std::size_t>(i)]);
    sum += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum;
}

template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a);
  const int n = static_cast<int>(a.rows());
  if (n > kRyserPermanentMaxSize) {
    throw SizeLimitError("Ryser permanent limited to n <= " + std::to_string(kRyserPermanentMaxSize));
  }
  if (n == 0) return Scalar(1);

  std::vector<Scalar> row_sums(static_cast<std::size_t>(n), Scalar(0));
  Scalar total(0);
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int col = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << col;
    gray ^= bit;
    if (gray & bit) {
      for (int i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] += a(i, col);
    } else {
      for (int i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] -= a(i, col);
    }
    Scalar prod = row_sums[0];
    for (int i = 1; i < n; ++i) prod *= row_sums[static_cast<std::size_t>(i)];
    if (std::popcount(gray) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return (n & 1) ? -total : total;
}

/// Ryser for all sizes it supports.
template <typename Derived>
typename Derived::Scalar permanent(const Eigen::MatrixBase<Derived>& a) {
  return permanent_ryser(a);
}

}  // namespace passv
