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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "test_support.hpp"

using namespace dephasing;
using namespace dephasing::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);

NoiseRates random_rates(Rng& rng) {
  return {uniform(rng, 0.0, 3.0), uniform(rng, 0.0, 3.0), uniform(rng, 0.0, 3.0)};
}

// Independent oracle for the closed form: each channel is a phase average,
// so element (i, j) is multiplied by exp(-<(phi_i - phi_j)^2>/2), where
// phi_k = ((sA + sB) X + sA Y_A + sB Y_B) / 2 with independent Gaussian
// X, Y_A, Y_B of variances Gamma t, Gamma_A t, Gamma_B t.
double phase_average_factor(ChannelKind kind, const NoiseRates& r, double t, int i, int j) {
  const BasisIndex bi(i), bj(j);
  const double da = (bi.sign_a() - bj.sign_a()) / 2.0;
  const double db = (bi.sign_b() - bj.sign_b()) / 2.0;
  const NoiseRates e = effective_rates(kind, r);
  const double var =
      ((da + db) * (da + db) * e.collective + da * da * e.local_a + db * db * e.local_b) * t;
  return std::exp(-var / 2.0);
}

}  // namespace

TEST_CASE("channel parameters at reference points", "[channels]") {
  SECTION("t = 0 gives identity coefficients") {
    const auto p = channel_params(0.0, {1.0, 2.0, 3.0});
    CHECK(p.gamma_a == 1.0);
    CHECK(p.gamma_b == 1.0);
    CHECK(p.gamma == 1.0);
    CHECK(p.omega_a == 0.0);
    CHECK(p.omega_b == 0.0);
    CHECK(p.omega1 == 0.0);
    CHECK(p.omega2 == 0.0);
    CHECK(p.omega3 == 0.0);
  }
  SECTION("Gamma t = ln 4") {
    // e^{-Gamma t} = 1/4: gamma = 1/2, omega1 = sqrt(3)/2,
    // omega2 = -sqrt(3)/8, omega3 = sqrt(3/4 * 15/16) = 3 sqrt(5)/8
    const double t = std::log(4.0);
    const auto p = channel_params(t, {1.0, 1.0, 2.0});
    CHECK_THAT(p.gamma, WithinAbs(0.5, 1e-15));
    CHECK_THAT(p.omega1, WithinAbs(std::sqrt(3.0) / 2.0, 1e-15));
    CHECK_THAT(p.omega2, WithinAbs(-std::sqrt(3.0) / 8.0, 1e-15));
    CHECK_THAT(p.omega3, WithinAbs(3.0 * std::sqrt(5.0) / 8.0, 1e-15));
    CHECK_THAT(p.gamma_a, WithinAbs(0.5, 1e-15));
    CHECK_THAT(p.omega_a, WithinAbs(std::sqrt(3.0) / 2.0, 1e-15));
    CHECK_THAT(p.gamma_b, WithinAbs(0.25, 1e-15));
    CHECK_THAT(p.omega_b, WithinAbs(std::sqrt(15.0) / 4.0, 1e-15));
  }
  SECTION("zero rate leaves exact identity factors at any time") {
    const auto p = channel_params(1e6, {0.0, 0.0, 0.0});
    CHECK(p.gamma == 1.0);
    CHECK(p.gamma_a == 1.0);
    CHECK(p.omega3 == 0.0);
  }
  SECTION("invalid input") {
    CHECK_THROWS_AS(channel_params(-1.0, {}), DomainError);
    CHECK_THROWS_AS(channel_params(1.0, {-1.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(channel_params(NAN, {}), DomainError);
    CHECK_THROWS_AS(channel_params(1.0, {0.0, INFINITY, 0.0}), DomainError);
  }
}

TEST_CASE("channel coefficients satisfy their normalization identities", "[channels][property]") {
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const double t = std::pow(10.0, uniform(rng, -6.0, 2.0));
    const auto p = channel_params(t, random_rates(rng));
    CHECK_THAT(p.gamma_a * p.gamma_a + p.omega_a * p.omega_a, WithinAbs(1.0, 1e-15));
    CHECK_THAT(p.gamma_b * p.gamma_b + p.omega_b * p.omega_b, WithinAbs(1.0, 1e-15));
    // D completeness on |1>, |4>
    CHECK_THAT(p.gamma * p.gamma + p.omega1 * p.omega1, WithinAbs(1.0, 1e-15));
    CHECK_THAT(p.gamma * p.gamma + p.omega2 * p.omega2 + p.omega3 * p.omega3,
               WithinAbs(1.0, 1e-15));
  }
}

TEST_CASE("channel kinds have stable names and operator counts", "[channels]") {
  const std::pair<ChannelKind, std::size_t> expected[] = {
      {ChannelKind::OneQubitA, 2}, {ChannelKind::OneQubitB, 2},
      {ChannelKind::TwoQubitLocal, 4}, {ChannelKind::Collective, 3},
      {ChannelKind::FullTwelve, 12}};
  for (auto [kind, count] : expected) {
    CHECK(operator_count(kind) == count);
    CHECK(parse_channel_kind(to_string(kind)) == kind);
    CHECK(build_kraus(kind, channel_params(0.7, {1, 1, 1})).operators().size() == count);
  }
  CHECK(parse_channel_kind("collective") == ChannelKind::Collective);
  CHECK_FALSE(parse_channel_kind("C").has_value());
}

TEST_CASE("Kraus sets are complete for every kind, rate and time", "[channels][property]") {
  Rng rng(103);
  for (int trial = 0; trial < 300; ++trial) {
    const double t = std::pow(10.0, uniform(rng, -8.0, 3.0));
    const auto p = channel_params(t, random_rates(rng));
    for (auto kind : kAllChannelKinds)
      CHECK(build_kraus(kind, p).completeness_residual() <= 1e-12);
  }
}

TEST_CASE("an incomplete Kraus set is rejected", "[channels]") {
  const auto p = channel_params(1.0, {1.0, 0.0, 0.0});
  CHECK_THROWS_AS(KrausChannel(ChannelKind::Collective, {kraus::d1(p), kraus::d2(p)}), Error);
}

TEST_CASE("Kraus operators match their hand-written diagonals", "[channels]") {
  const auto p = channel_params(0.4, {0.5, 1.5, 2.5});
  const double ga = p.gamma_a, oa = p.omega_a, gb = p.gamma_b, ob = p.omega_b;
  CHECK(max_abs_diff(kraus::e1(p), Matrix4::diagonal({1, 1, ga, ga})) == 0.0);
  CHECK(max_abs_diff(kraus::e2(p), Matrix4::diagonal({0, 0, oa, oa})) == 0.0);
  CHECK(max_abs_diff(kraus::f1(p), Matrix4::diagonal({1, gb, 1, gb})) == 0.0);
  CHECK(max_abs_diff(kraus::f2(p), Matrix4::diagonal({0, ob, 0, ob})) == 0.0);
  CHECK(max_abs_diff(kraus::d1(p), Matrix4::diagonal({p.gamma, 1, 1, p.gamma})) == 0.0);
}

TEST_CASE("closed form agrees with the operator sum", "[channels][property]") {
  Rng rng(107);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_two_qubit_state(rng, 1 + trial % 4);
    const double t = std::pow(10.0, uniform(rng, -4.0, 1.5));
    const auto p = channel_params(t, random_rates(rng));
    for (auto kind : kAllChannelKinds) {
      const auto via_kraus = apply(build_kraus(kind, p), rho);
      const auto via_mask = apply_closed_form(kind, p, rho);
      CHECK(max_abs_diff(via_kraus.matrix(), via_mask.matrix()) < 1e-13);
    }
  }
}

TEST_CASE("closed form agrees with the Gaussian phase average", "[channels][property]") {
  Rng rng(109);
  for (int trial = 0; trial < 200; ++trial) {
    const NoiseRates r = random_rates(rng);
    const double t = uniform(rng, 0.0, 5.0);
    const auto p = channel_params(t, r);
    for (auto kind : kAllChannelKinds) {
      const auto mask = damping_mask(kind, p);
      for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
          CHECK_THAT(mask[i - 1][j - 1],
                     WithinAbs(phase_average_factor(kind, r, t, i, j), 1e-14));
    }
  }
}

TEST_CASE("channel outputs are valid states", "[channels][property]") {
  Rng rng(113);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rho = random_two_qubit_state(rng, 1 + trial % 4);
    const auto p = channel_params(uniform(rng, 0.0, 4.0), random_rates(rng));
    for (auto kind : kAllChannelKinds) {
      const auto out = apply(build_kraus(kind, p), rho);
      const auto rep = validate(out.matrix());
      CHECK(rep.ok());
      // dephasing never moves populations
      for (int k = 1; k <= 4; ++k)
        CHECK_THAT(std::abs(out.element(k, k) - rho.element(k, k)), WithinAbs(0.0, 1e-15));
    }
  }
}

TEST_CASE("closed-form evolution is a semigroup", "[channels][property]") {
  Rng rng(127);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_two_qubit_state(rng);
    const NoiseRates r = random_rates(rng);
    const double s = uniform(rng, 0.0, 2.0), t = uniform(rng, 0.0, 2.0);
    for (auto kind : kAllChannelKinds) {
      const auto two_step = evolve(kind, r, t, evolve(kind, r, s, rho));
      CHECK(max_abs_diff(two_step.matrix(), evolve(kind, r, s + t, rho).matrix()) < 1e-14);
    }
  }
}

TEST_CASE("the full channel factorizes into the collective and local channels",
          "[channels][property]") {
  Rng rng(131);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_two_qubit_state(rng);
    const auto p = channel_params(uniform(rng, 0.0, 3.0), random_rates(rng));
    const auto local_then_common = apply(build_kraus(ChannelKind::Collective, p),
                                         apply(build_kraus(ChannelKind::TwoQubitLocal, p), rho));
    const auto a_then_b = apply(build_kraus(ChannelKind::OneQubitB, p),
                                apply(build_kraus(ChannelKind::OneQubitA, p), rho));
    CHECK(max_abs_diff(apply(build_kraus(ChannelKind::FullTwelve, p), rho).matrix(),
                       local_then_common.matrix()) < 1e-14);
    CHECK(max_abs_diff(apply(build_kraus(ChannelKind::TwoQubitLocal, p), rho).matrix(),
                       a_then_b.matrix()) < 1e-14);
  }
}

TEST_CASE("worked examples", "[channels]") {
  const auto bell = pure_density(PureState({kR2, 0.0, 0.0, kR2}));
  const auto psi_plus = pure_density(PureState({0.0, kR2, kR2, 0.0}));
  const double t = 0.8;

  SECTION("local dephasing damps the Bell coherence by gamma_A gamma_B") {
    const NoiseRates r{0.0, 1.0, 2.0};
    const auto out = evolve(ChannelKind::TwoQubitLocal, r, t, bell);
    CHECK_THAT(out.element(1, 4).real(), WithinAbs(0.5 * std::exp(-0.4) * std::exp(-0.8), 1e-16));
    CHECK_THAT(out.element(1, 1).real(), WithinAbs(0.5, 1e-16));
  }
  SECTION("collective dephasing damps rho_14 by e^{-2 Gamma t}") {
    const NoiseRates r{1.5, 0.0, 0.0};
    const auto out = evolve(ChannelKind::Collective, r, t, bell);
    CHECK_THAT(out.element(1, 4).real(), WithinRel(0.5 * std::exp(-2.0 * 1.5 * t), 1e-14));
  }
  SECTION("collective dephasing leaves rho_23 untouched") {
    const auto out = evolve(ChannelKind::Collective, {5.0, 0.0, 0.0}, 10.0, psi_plus);
    CHECK(out.matrix() == psi_plus.matrix());
  }
  SECTION("single-qubit channel acts on one qubit only") {
    const NoiseRates r{0.0, 1.0, 7.0};
    const auto out = evolve(ChannelKind::OneQubitA, r, t, bell);
    CHECK_THAT(out.element(1, 4).real(), WithinAbs(0.5 * std::exp(-0.4), 1e-16));
    const auto out_b = evolve(ChannelKind::OneQubitB, {0.0, 7.0, 1.0}, t, bell);
    CHECK_THAT(out_b.element(1, 4).real(), WithinAbs(0.5 * std::exp(-0.4), 1e-16));
  }
}
