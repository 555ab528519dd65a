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

#include "passv/passv_experiments.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace passv {
namespace {

TEST(Predicted, IdentityNetworkSinglePhoton) {
  const auto p = predicted_parity_distribution(LinearNetwork::identity(2), 1, PhotonVariant::kAdded);
  const auto map = p.distribution.as_map();
  ASSERT_EQ(map.size(), 2u);
  EXPECT_EQ(map.at(parse_parity_pattern("-+")), 1.0);
  EXPECT_EQ(map.at(parse_parity_pattern("+-")), 0.0);
  EXPECT_EQ(p.unassigned_mass, 0.0);
}

TEST(Predicted, BalancedSplitterHasNoCoincidences) {
  const auto o = reconstruct({TwoModeElement{0, 1, M_PI / 4, 0.0}}, 2);
  const auto p = predicted_parity_distribution(o, 2, PhotonVariant::kAdded);
  ASSERT_EQ(p.distribution.size(), 1u);
  EXPECT_NEAR(p.distribution.probability(parse_parity_pattern("--")), 0.0, 1e-15);
  EXPECT_NEAR(p.unassigned_mass, 1.0, 1e-15);
}

TEST(Predicted, MatchesFockSamplingOnBinaryOutputs) {
  const auto o = haar_special_orthogonal(4, 3);
  const auto fock = output_distribution(o, ModeConfiguration::leading_ones(2, 4)).as_map();
  const auto p = predicted_parity_distribution(o, 2, PhotonVariant::kAdded);
  EXPECT_EQ(p.distribution.size(), 6u);
  double collision = 0.0;
  for (const auto& [config, prob] : fock) {
    if (config.collision_free()) {
      EXPECT_NEAR(p.distribution.probability(parity_pattern_of(config)), prob, 1e-14);
    } else {
      collision += prob;
    }
  }
  EXPECT_NEAR(p.unassigned_mass, collision, 1e-12);
}

TEST(Predicted, VariantsAgreeAndComplexIsRejected) {
  const auto o = haar_special_orthogonal(4, 9);
  const auto a = predicted_parity_distribution(o, 2, PhotonVariant::kAdded);
  const auto s = predicted_parity_distribution(o, 2, PhotonVariant::kSubtracted);
  EXPECT_EQ(a.distribution.support, s.distribution.support);
  EXPECT_THROW(predicted_parity_distribution(haar_unitary(3, 1), 1, PhotonVariant::kAdded), InvalidArgument);
  EXPECT_THROW(predicted_parity_distribution(o, 5, PhotonVariant::kAdded), InvalidArgument);
}

TEST(TotalVariation, Examples) {
  ParityDistribution p, q;
  p.support = {{parse_parity_pattern("+"), 1.0}};
  q.support = {{parse_parity_pattern("-"), 1.0}};
  EXPECT_EQ(total_variation_distance(p, q), 1.0);
  EXPECT_EQ(total_variation_distance(p, p), 0.0);
  q.support = {{parse_parity_pattern("+"), 0.5}, {parse_parity_pattern("-"), 0.5}};
  EXPECT_EQ(total_variation_distance(p, q), 0.5);
  ParityDistribution two;
  two.support = {{parse_parity_pattern("++"), 1.0}};
  EXPECT_THROW(total_variation_distance(p, two), InvalidArgument);
}

TEST(Equivalence, SinglePhotonTwoModes) {
  const auto rep = run_equivalence_experiment(1, 2, {0.0, 0.5}, PhotonVariant::kAdded, 4);
  EXPECT_TRUE(rep.within_tolerance()) << rep.max_deviation;
  EXPECT_EQ(rep.rows.size(), 4u);
  EXPECT_EQ(rep.cutoffs.size(), 2u);
  EXPECT_EQ(rep.cutoffs[0], 1);
  EXPECT_NEAR(rep.tolerance, 2e-7 + 1e-9, 1e-20);
  // With one photon in two modes every odd-total pattern is collision-free.
  for (const auto& row : rep.rows) {
    if (row.pattern.odd_count() % 2 == 0) {
      for (double p : row.brute_force) EXPECT_LT(p, 1e-12);
    }
  }
}

TEST(Equivalence, TwoPhotonsFourModes) {
  const auto rep = run_equivalence_experiment(2, 4, {0.0, 0.3, 0.6}, PhotonVariant::kAdded, 11);
  EXPECT_TRUE(rep.within_tolerance()) << rep.max_deviation << " " << rep.max_cross_xi_deviation;
  ASSERT_EQ(rep.collision_sector_mass.size(), 3u);
  EXPECT_NEAR(rep.collision_sector_mass[0], rep.predicted_collision_mass, 1e-12);
  for (double mass : rep.collision_sector_mass) EXPECT_NEAR(mass, rep.predicted_collision_mass, 1e-6);
  EXPECT_EQ(rep.rows.size(), 16u);
}

TEST(Equivalence, PhotonSubtraction) {
  const auto rep = run_equivalence_experiment(1, 2, {0.5}, PhotonVariant::kSubtracted, 5);
  EXPECT_TRUE(rep.within_tolerance()) << rep.max_deviation;
  const auto rep2 = run_equivalence_experiment(2, 3, {0.5}, PhotonVariant::kSubtracted, 5);
  EXPECT_TRUE(rep2.within_tolerance()) << rep2.max_deviation;
}

TEST(Equivalence, SubtractionUsesTheUntransposedNetwork) {
  // Brute force against both candidate predictions; only O itself fits.
  const auto o = haar_special_orthogonal(3, 21);
  const double xi = 0.5;
  const int n = 2;
  const int d = recommended_cutoff(xi, n);
  const auto brute = simulate_passv_parity(o, n, SqueezingParameter(xi), PhotonVariant::kSubtracted, d);
  const auto same = collision_free_permanent_distribution(o.matrix(), n).distribution;
  const ComplexMatrix ot = o.matrix().transpose();
  const auto transposed = collision_free_permanent_distribution(ot, n).distribution;
  double dev_same = 0.0;
  double dev_transposed = 0.0;
  for (std::size_t k = 0; k < same.size(); ++k) {
    const double b = brute.probability(same.support[k].first);
    dev_same = std::max(dev_same, std::abs(b - same.support[k].second));
    dev_transposed = std::max(dev_transposed, std::abs(b - transposed.probability(same.support[k].first)));
  }
  EXPECT_LT(dev_same, equivalence_tolerance(3, 1e-8));
  EXPECT_GT(dev_transposed, 1e-3);
}

TEST(Equivalence, Errors) {
  EXPECT_THROW(run_equivalence_experiment(3, 2, {0.1}, PhotonVariant::kAdded, 1), InvalidArgument);
  EXPECT_THROW(run_equivalence_experiment(0, 2, {0.1}, PhotonVariant::kAdded, 1), InvalidArgument);
  EXPECT_THROW(run_equivalence_experiment(1, 6, {0.1}, PhotonVariant::kAdded, 1), SizeLimitError);
  EXPECT_THROW(run_equivalence_experiment(1, 2, {1.5}, PhotonVariant::kAdded, 1), InvalidArgument);
  EXPECT_THROW(run_equivalence_experiment(1, 2, {-0.1}, PhotonVariant::kAdded, 1), InvalidArgument);
  EXPECT_THROW(run_equivalence_experiment(1, 2, {}, PhotonVariant::kAdded, 1), InvalidArgument);
  EXPECT_THROW(run_equivalence_experiment(1, 2, {0.0}, PhotonVariant::kSubtracted, 1), ZeroStateError);
  // Five modes at strong squeezing exceed the amplitude budget.
  EXPECT_THROW(run_equivalence_experiment(2, 5, {1.0}, PhotonVariant::kAdded, 1), SizeLimitError);
}

TEST(Equivalence, SeedFixesTheNetwork) {
  const auto a = run_equivalence_experiment(1, 3, {0.2}, PhotonVariant::kAdded, 77);
  const auto b = run_equivalence_experiment(1, 3, {0.2}, PhotonVariant::kAdded, 77);
  EXPECT_EQ(a.network, b.network);
  EXPECT_EQ(a.rows[3].brute_force, b.rows[3].brute_force);
}

TEST(SqueezedInvariance, RealVersusComplex) {
  const SqueezingParameter xi(0.4);
  const int d = recommended_cutoff(0.4, 0, 1e-10);
  EXPECT_GE(squeezed_invariance_check(haar_special_orthogonal(3, 2), xi, d), 1.0 - 1e-6);
  EXPECT_NEAR(squeezed_invariance_check(LinearNetwork::identity(2), xi, d), 1.0, 1e-9);
  EXPECT_LE(squeezed_invariance_check(testing::haar_special_unitary(3, 2), xi, d), 0.999);
}

}  // namespace
}  // namespace passv
