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

// Two photons on a 50:50 beamsplitter, computed twice: from permanents and
// by evolving the two-mode Fock state directly.

#include <cmath>
#include <cstdio>

#include "passv/fock_evolution.hpp"
#include "passv/fock_sampler.hpp"
#include "passv/interferometer.hpp"

int main() {
  using namespace passv;
  const TwoModeElement splitter{0, 1, M_PI / 4, 0.0};
  const auto network = reconstruct({splitter}, 2);
  const ModeConfiguration input({1, 1});

  std::printf("permanent sampler\n");
  for (const auto& [config, p] : output_distribution(network, input).support) {
    std::printf("  %-5s %.12f\n", to_string(config).c_str(), p);
  }

  auto state = TruncatedFockState::basis(input, 2);
  apply_beamsplitter(state, 0, 1, splitter.theta);
  std::printf("Fock-space evolution\n");
  for (const auto& [config, p] : number_distribution(state).support) {
    std::printf("  %-5s %.12f\n", to_string(config).c_str(), p);
  }
  return 0;
}
