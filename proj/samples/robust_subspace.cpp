// Copyright 2026 The Dephasing Authors
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

// Collective dephasing leaves span{|+->, |-+>} untouched; the Monte Carlo
// ensemble shows this trajectory by trajectory.

#include <cmath>
#include <cstdio>

#include "dephasing/dephasing.hpp"

int main() {
  using namespace dephasing;
  const NoiseRates collective_only{2.0, 0.0, 0.0};
  const double r2 = 1 / std::sqrt(2.0);

  for (const auto& [name, psi] :
       {std::pair{"(|2>+|3>)/sqrt2", PureState({0.0, r2, r2, 0.0})},
        std::pair{"(|1>+|4>)/sqrt2", PureState({r2, 0.0, 0.0, r2})}}) {
    std::printf("%s\n", name);
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
      const auto exact = evolve(ChannelKind::Collective, collective_only, t, pure_density(psi));
      const auto mc = oracle::ensemble_average(psi, t, collective_only, 20000, 42);
      std::printf("  t=%.1f  C_exact=%.6f  C_mc=%.6f\n", t, concurrence(exact).value,
                  concurrence(mc.state()).value);
    }
  }
  return 0;
}
