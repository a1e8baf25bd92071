// Copyright 2026 The dctc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <set>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "dctc/scenarios.hpp"
#include "test_support.hpp"

using namespace dctc;
using namespace dctc::testing;

namespace {

constexpr double kR = 0.7071067811865475;

std::string certain_outcome(const OutcomeDistribution& d) {
  for (std::size_t k = 0; k < d.labels.size(); ++k) {
    if (d.probabilities[k] > 0.5) return d.labels[k];
  }
  return "";
}

}  // namespace

TEST_CASE("bit labels are big-endian") {
  CHECK(bit_label(0, 1) == "0");
  CHECK(bit_label(2, 2) == "10");
  CHECK(bit_label(1, 3) == "001");
}

TEST_CASE("computational measurement") {
  const std::array<std::size_t, 1> q0{0};
  SUBCASE("basis state") {
    const OutcomeDistribution d = measure_computational(DensityOperator::from_pure(PureState::basis(2, 0)), q0);
    CHECK(d.labels == std::vector<std::string>{"0", "1"});
    CHECK(d.probability("0") == 1.0);
    CHECK(d.probability("1") == 0.0);
    CHECK(d.probability("01") == 0.0);
  }
  SUBCASE("plus") {
    const OutcomeDistribution d = measure_computational(DensityOperator::from_pure(bb84_state(Bb84State::plus)), q0);
    CHECK(d.probability("0") == doctest::Approx(0.5));
    CHECK(d.probability("1") == doctest::Approx(0.5));
  }
  SUBCASE("one half of a singlet") {
    const DensityOperator singlet = ket({0.0, kR, -kR, 0.0});
    const OutcomeDistribution d = measure_computational(singlet, q0);
    CHECK(d.probability("0") == doctest::Approx(0.5));
    CHECK(d.probability("1") == doctest::Approx(0.5));
  }
  SUBCASE("qubit order sets the label order") {
    const DensityOperator s01 = DensityOperator::from_pure(PureState::basis(4, 1));
    const std::array<std::size_t, 2> forward{0, 1};
    const std::array<std::size_t, 2> backward{1, 0};
    CHECK(certain_outcome(measure_computational(s01, forward)) == "01");
    CHECK(certain_outcome(measure_computational(s01, backward)) == "10");
  }
  SUBCASE("probabilities sum to one") {
    std::mt19937_64 rng(41);
    const DensityOperator rho = random_density(8, rng);
    const std::array<std::size_t, 2> q{2, 0};
    const OutcomeDistribution d = measure_computational(rho, q);
    double total = 0.0;
    for (double p : d.probabilities) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("rejections") {
    const DensityOperator rho = DensityOperator::maximally_mixed(4);
    CHECK_THROWS_AS(measure_computational(rho, std::span<const std::size_t>{}), std::invalid_argument);
    const std::array<std::size_t, 2> dup{1, 1};
    CHECK_THROWS_AS(measure_computational(rho, dup), std::invalid_argument);
    const std::array<std::size_t, 1> far{2};
    CHECK_THROWS_AS(measure_computational(rho, far), std::invalid_argument);
  }
}

TEST_CASE("BB84 states") {
  for (Bb84State s : {Bb84State::zero, Bb84State::one, Bb84State::plus, Bb84State::minus}) {
    CHECK(parse_bb84(to_string(s)) == s);
  }
  CHECK_FALSE(parse_bb84("up").has_value());
  CHECK(bb84_state(Bb84State::minus).amplitude(1) == Complex(-kR));
}

TEST_CASE("NOT-gate scenario") {
  const ScenarioReport r = run_not_gate();
  CHECK(r.scenario == "not-gate");
  REQUIRE(r.classical.has_value());
  CHECK(r.classical->fixed_points.empty());
  CHECK(r.classical->cycles.size() == 1);
  CHECK(trace_distance(r.fixed_point.selected.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) <= 1e-9);
  CHECK(r.fixed_point.residual <= 1e-12);
  CHECK(r.distribution.probability("0") == doctest::Approx(1.0));
}

TEST_CASE("two-state scenario") {
  const ScenarioReport zero = run_bhw2(Bb84State::zero);
  CHECK(zero.distribution.probability("0") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(trace_distance(zero.fixed_point.selected.matrix(), basis_projector(2, 0)) <= 1e-9);
  CHECK(zero.fixed_point.unique);

  const ScenarioReport minus = run_bhw2(Bb84State::minus);
  CHECK(minus.distribution.probability("1") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(trace_distance(minus.fixed_point.selected.matrix(), basis_projector(2, 1)) <= 1e-9);
  CHECK(minus.fixed_point.unique);

  CHECK_THROWS_AS(run_bhw2(Bb84State::plus), std::invalid_argument);
  CHECK_THROWS_AS(run_bhw2(Bb84State::one), std::invalid_argument);
}

TEST_CASE("four-state scenario reproduces the map") {
  const std::array<std::pair<Bb84State, const char*>, 4> rows{{{Bb84State::zero, "00"},
                                                               {Bb84State::one, "01"},
                                                               {Bb84State::plus, "10"},
                                                               {Bb84State::minus, "11"}}};
  std::set<std::string> seen;
  for (const auto& [input, expected] : rows) {
    const ScenarioReport r = run_bhw4(input);
    CHECK(r.distribution.probability(expected) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.fixed_point.unique);
    CHECK(r.fixed_point.residual <= 1e-8);
    CHECK(r.distribution.labels.size() == 4);
    seen.insert(certain_outcome(r.distribution));
  }
  CHECK(seen.size() == 4);
}
