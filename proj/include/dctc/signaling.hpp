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

#ifndef DCTC_SIGNALING_HPP_
#define DCTC_SIGNALING_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dctc/gates.hpp"
#include "dctc/linalg.hpp"
#include "dctc/scenarios.hpp"
#include "dctc/tolerances.hpp"

/// Nonlocal signaling over a shared singlet with a CTC-assisted discriminator
/// on the receiving side, plus the two-frame consistency analysis.
///
/// Alice (qubit 0 of the singlet) measures in the computational basis for
/// "no" or the Hadamard basis for "yes". Bob (qubit 1) feeds his half into
/// the four-state discriminator with an ancilla in |0> and decodes "yes" from
/// outcomes 10 / 11 and "no" from 00 / 01.
namespace dctc {

/// The single random source of a protocol run. Uniform variates are built
/// from the top 53 bits of each 64-bit draw so results do not depend on the
/// standard library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

enum class Basis { computational, hadamard };
enum class Ordering { alice_first, bob_first };
enum class Message { yes, no };

std::string_view to_string(Basis b);
std::string_view to_string(Ordering o);
std::string_view to_string(Message m);
/// Report label: "X" for the Hadamard basis, "Z" for the computational one.
std::string_view axis_label(Basis b);

Basis basis_for(Message m);
/// hadamard iff outcome is "10" or "11"; throws on anything that is not a
/// two-bit label.
Basis decode(std::string_view bob_outcome);

/// Projector onto (|01> - |10>)/sqrt(2).
DensityOperator make_singlet();

struct AliceBranch {
  int outcome;  // computational: 0/1; hadamard: 0 for |+>, 1 for |->
  double probability;
  std::optional<DensityOperator> bob_state;  // empty when probability is 0
};

/// Both outcomes of Alice measuring qubit 0 of a two-qubit state, with
/// Bob's normalised conditional state.
std::array<AliceBranch, 2> alice_branches(const DensityOperator& shared, Basis basis);

struct AliceResult {
  int outcome;
  DensityOperator bob_state;
};

/// Samples Alice's Born-rule outcome and collapses Bob's qubit.
AliceResult alice_measure(const DensityOperator& shared, Basis basis, Rng& rng);

/// Runs a two-CR-qubit circuit on (bob_state ⊗ |0><0|) and measures both CR
/// qubits. Distributions are cached per distinct input matrix.
class Discriminator {
 public:
  explicit Discriminator(CtcCircuit circuit = bhw4_circuit(), Tolerances tol = kDefaultTolerances);

  const OutcomeDistribution& distribution(const DensityOperator& bob_state);
  std::string sample(const DensityOperator& bob_state, Rng& rng);
  const CtcCircuit& circuit() const { return circuit_; }

 private:
  CtcCircuit circuit_;
  Tolerances tol_;
  std::map<std::vector<double>, OutcomeDistribution> cache_;
};

/// Samples the four-state discriminator once.
std::string bob_discriminate(const DensityOperator& bob_state, Rng& rng);

struct SignalingTrial {
  Ordering ordering;
  Basis alice_basis;
  int alice_outcome;
  DensityOperator bob_state_in;
  std::string bob_outcome;
  Basis decoded;
  bool correct;
};

inline const std::array<std::string, 4> kBobOutcomes{"00", "01", "10", "11"};

struct FrameEvent {
  Basis basis;
  std::string outcome;
  double p_alice_first;
  double p_bob_first;
  std::size_t observed_alice_first = 0;
  std::size_t observed_bob_first = 0;
};

struct FrameAnalysis {
  /// All (basis, outcome) pairs, computational first.
  std::vector<FrameEvent> events;
  /// Events with zero probability in at least one frame.
  std::vector<FrameEvent> c2_zero_probability_events;
  /// Sampled observations discarded because C2 forbids their event.
  std::size_t pruned_observations = 0;
  /// Every surviving observed event has nonzero probability in both frames.
  bool c1_verdict = false;
};

struct SignalingReport {
  Message message;
  Ordering ordering;
  std::size_t trials;
  std::uint64_t seed;
  /// Empirical frequency of each label in kBobOutcomes.
  std::array<double, 4> frequencies{};
  double accuracy = 0.0;
  std::vector<SignalingTrial> trial_log;
  std::optional<FrameAnalysis> frames;
  std::vector<std::string> assumptions;
};

/// One protocol run of `trials` sequential trials driven by one generator
/// seeded with `seed`.
SignalingReport run_protocol(Message message, Ordering ordering, std::size_t trials, std::uint64_t seed,
                             Discriminator& discriminator);
SignalingReport run_protocol(Message message, Ordering ordering, std::size_t trials, std::uint64_t seed);

/// Exact per-frame probabilities of every (Alice basis, Bob outcome) event.
FrameAnalysis frame_probabilities(Message message, Discriminator& discriminator,
                                  double zero_tol = kDefaultTolerances.agreement);

/// Runs both orderings (alice_first then bob_first, continuing one generator),
/// tallies observed events against the exact frame tables and applies C2
/// pruning before the C1 check. The returned report carries the alice_first
/// run's statistics.
SignalingReport bub_stairs_check(Message message, std::size_t trials, std::uint64_t seed);

}  // namespace dctc

#endif  // DCTC_SIGNALING_HPP_
