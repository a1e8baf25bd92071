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

#include "dctc/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dctc/ctc_solver.hpp"

namespace dctc {

namespace {

constexpr std::size_t kBobQubit = 1;

constexpr const char* kBobFirstAssumption =
    "bob_first: Alice's later outcome is sampled from her singlet marginal as an independent fair coin; "
    "Bob's CTC interaction is taken to have broken the entanglement";

PureState basis_vector(Basis basis, int outcome) {
  if (basis == Basis::computational) return PureState::basis(2, static_cast<std::size_t>(outcome));
  return bb84_state(outcome == 0 ? Bb84State::plus : Bb84State::minus);
}

std::size_t outcome_index(std::string_view label) {
  for (std::size_t k = 0; k < kBobOutcomes.size(); ++k) {
    if (kBobOutcomes[k] == label) return k;
  }
  throw std::invalid_argument("not a two-bit outcome: '" + std::string(label) + "'");
}

DensityOperator bob_marginal(const DensityOperator& shared) {
  const std::array<std::size_t, 1> keep{kBobQubit};
  return reduce_to_qubits(shared, keep);
}

SignalingReport run_with(Message message, Ordering ordering, std::size_t trials, std::uint64_t seed, Rng& rng,
                         Discriminator& discriminator) {
  if (trials == 0) throw std::invalid_argument("run_protocol: trials must be at least 1");
  const DensityOperator singlet = make_singlet();
  const Basis alice_basis = basis_for(message);

  SignalingReport report{message, ordering, trials, seed, {}, 0.0, {}, std::nullopt, {}};
  report.trial_log.reserve(trials);
  std::array<std::size_t, 4> counts{};
  std::size_t correct = 0;

  for (std::size_t t = 0; t < trials; ++t) {
    int alice_outcome = 0;
    std::optional<DensityOperator> bob_in;
    std::string bob_outcome;
    if (ordering == Ordering::alice_first) {
      AliceResult alice = alice_measure(singlet, alice_basis, rng);
      alice_outcome = alice.outcome;
      bob_outcome = discriminator.sample(alice.bob_state, rng);
      bob_in = std::move(alice.bob_state);
    } else {
      bob_in = bob_marginal(singlet);
      bob_outcome = discriminator.sample(*bob_in, rng);
      alice_outcome = alice_measure(singlet, alice_basis, rng).outcome;
    }
    const Basis decoded = decode(bob_outcome);
    const bool ok = decoded == alice_basis;
    ++counts[outcome_index(bob_outcome)];
    if (ok) ++correct;
    report.trial_log.push_back(
        SignalingTrial{ordering, alice_basis, alice_outcome, std::move(*bob_in), bob_outcome, decoded, ok});
  }

  for (std::size_t k = 0; k < counts.size(); ++k) {
    report.frequencies[k] = static_cast<double>(counts[k]) / static_cast<double>(trials);
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(trials);
  if (ordering == Ordering::bob_first) report.assumptions.emplace_back(kBobFirstAssumption);
  return report;
}

}  // namespace

std::string_view to_string(Basis b) { return b == Basis::computational ? "computational" : "hadamard"; }
std::string_view to_string(Ordering o) { return o == Ordering::alice_first ? "alice_first" : "bob_first"; }
std::string_view to_string(Message m) { return m == Message::yes ? "yes" : "no"; }
std::string_view axis_label(Basis b) { return b == Basis::computational ? "Z" : "X"; }

Basis basis_for(Message m) { return m == Message::yes ? Basis::hadamard : Basis::computational; }

Basis decode(std::string_view bob_outcome) {
  const std::size_t k = outcome_index(bob_outcome);
  return k >= 2 ? Basis::hadamard : Basis::computational;
}

DensityOperator make_singlet() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = r;   // |01>
  v(2) = -r;  // |10>
  return DensityOperator::from_pure(PureState::from_amplitudes(std::move(v)));
}

std::array<AliceBranch, 2> alice_branches(const DensityOperator& shared, Basis basis) {
  if (shared.dim() != 4) throw std::invalid_argument("alice_branches: shared state must be two qubits");
  const std::array<std::size_t, 2> dims{2, 2};
  const std::array<std::size_t, 1> keep{kBobQubit};
  std::array<AliceBranch, 2> out{};
  for (int k = 0; k < 2; ++k) {
    const ComplexMatrix proj = kron(basis_vector(basis, k).projector(), ComplexMatrix::Identity(2, 2));
    const ComplexMatrix post = proj * shared.matrix() * proj;
    const double p = std::max(0.0, post.trace().real());
    out[static_cast<std::size_t>(k)].outcome = k;
    out[static_cast<std::size_t>(k)].probability = p;
    if (p > 0.0) {
      ComplexMatrix bob = partial_trace(post, dims, keep) / p;
      bob = 0.5 * (bob + bob.adjoint());
      out[static_cast<std::size_t>(k)].bob_state = DensityOperator::from_matrix(std::move(bob));
    }
  }
  return out;
}

AliceResult alice_measure(const DensityOperator& shared, Basis basis, Rng& rng) {
  std::array<AliceBranch, 2> branches = alice_branches(shared, basis);
  const double total = branches[0].probability + branches[1].probability;
  const std::size_t pick = (rng.uniform() * total < branches[0].probability) ? 0 : 1;
  AliceBranch& b = branches[pick];
  if (!b.bob_state) throw std::runtime_error("alice_measure: sampled a zero-probability outcome");
  return {b.outcome, std::move(*b.bob_state)};
}

// --- Discriminator -----------------------------------------------------------

Discriminator::Discriminator(CtcCircuit circuit, Tolerances tol) : circuit_(std::move(circuit)), tol_(tol) {
  if (circuit_.n_cr() != 2) throw std::invalid_argument("discriminator circuit must have two CR qubits");
}

const OutcomeDistribution& Discriminator::distribution(const DensityOperator& bob_state) {
  if (bob_state.dim() != 2) throw std::invalid_argument("discriminator input must be a single qubit");
  std::vector<double> key;
  key.reserve(8);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      key.push_back(bob_state(i, j).real());
      key.push_back(bob_state(i, j).imag());
    }
  }
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const DensityOperator cr =
      DensityOperator::from_matrix(kron(bob_state.matrix(), PureState::basis(2, 0).projector()));
  const DensityOperator out = cr_output(circuit_, cr, tol_);
  const std::array<std::size_t, 2> both{0, 1};
  return cache_.emplace(std::move(key), measure_computational(out, both)).first->second;
}

std::string Discriminator::sample(const DensityOperator& bob_state, Rng& rng) {
  const OutcomeDistribution& dist = distribution(bob_state);
  // Probabilities at or below the validity tolerance are round-off.
  auto weight = [&](std::size_t k) { return dist.probabilities[k] > tol_.validity ? dist.probabilities[k] : 0.0; };
  double total = 0.0;
  for (std::size_t k = 0; k < dist.probabilities.size(); ++k) total += weight(k);
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < dist.probabilities.size(); ++k) {
    if (weight(k) == 0.0) continue;
    last_nonzero = k;
    acc += weight(k);
    if (u < acc) return dist.labels[k];
  }
  return dist.labels[last_nonzero];
}

std::string bob_discriminate(const DensityOperator& bob_state, Rng& rng) {
  Discriminator d;
  return d.sample(bob_state, rng);
}

// --- protocol ----------------------------------------------------------------

SignalingReport run_protocol(Message message, Ordering ordering, std::size_t trials, std::uint64_t seed,
                             Discriminator& discriminator) {
  Rng rng(seed);
  return run_with(message, ordering, trials, seed, rng, discriminator);
}

SignalingReport run_protocol(Message message, Ordering ordering, std::size_t trials, std::uint64_t seed) {
  Discriminator d;
  return run_protocol(message, ordering, trials, seed, d);
}

FrameAnalysis frame_probabilities(Message message, Discriminator& discriminator, double zero_tol) {
  const DensityOperator singlet = make_singlet();
  const Basis chosen = basis_for(message);

  std::array<double, 4> alice_first{};
  for (const AliceBranch& branch : alice_branches(singlet, chosen)) {
    if (!branch.bob_state) continue;
    const OutcomeDistribution& d = discriminator.distribution(*branch.bob_state);
    for (std::size_t k = 0; k < 4; ++k) alice_first[k] += branch.probability * d.probability(kBobOutcomes[k]);
  }
  std::array<double, 4> bob_first{};
  const OutcomeDistribution& marginal = discriminator.distribution(bob_marginal(singlet));
  for (std::size_t k = 0; k < 4; ++k) bob_first[k] = marginal.probability(kBobOutcomes[k]);

  FrameAnalysis frames;
  for (Basis b : {Basis::computational, Basis::hadamard}) {
    for (std::size_t k = 0; k < 4; ++k) {
      const bool possible = b == chosen;
      FrameEvent e{b, kBobOutcomes[k], possible ? alice_first[k] : 0.0, possible ? bob_first[k] : 0.0};
      if (e.p_alice_first <= zero_tol || e.p_bob_first <= zero_tol) frames.c2_zero_probability_events.push_back(e);
      frames.events.push_back(std::move(e));
    }
  }
  return frames;
}

SignalingReport bub_stairs_check(Message message, std::size_t trials, std::uint64_t seed) {
  Discriminator discriminator;
  Rng rng(seed);
  SignalingReport alice = run_with(message, Ordering::alice_first, trials, seed, rng, discriminator);
  const SignalingReport bob = run_with(message, Ordering::bob_first, trials, seed, rng, discriminator);

  const double zero_tol = kDefaultTolerances.agreement;
  FrameAnalysis frames = frame_probabilities(message, discriminator, zero_tol);
  auto event_at = [&](Basis b, const std::string& outcome) -> FrameEvent& {
    for (FrameEvent& e : frames.events) {
      if (e.basis == b && e.outcome == outcome) return e;
    }
    throw std::logic_error("unknown event");
  };
  for (const SignalingTrial& t : alice.trial_log) ++event_at(t.alice_basis, t.bob_outcome).observed_alice_first;
  for (const SignalingTrial& t : bob.trial_log) ++event_at(t.alice_basis, t.bob_outcome).observed_bob_first;

  // C1 after C2: every observation must be possible in the frame it was drawn
  // in, and observations of C2-excluded events are pruned. What survives is
  // then, by construction, possible in both frames.
  bool verdict = true;
  for (const FrameEvent& e : frames.events) {
    if (e.observed_alice_first > 0 && e.p_alice_first <= zero_tol) verdict = false;
    if (e.observed_bob_first > 0 && e.p_bob_first <= zero_tol) verdict = false;
    if (e.p_alice_first <= zero_tol || e.p_bob_first <= zero_tol) {
      frames.pruned_observations += e.observed_alice_first + e.observed_bob_first;
    }
  }
  frames.c1_verdict = verdict;
  for (FrameEvent& c2 : frames.c2_zero_probability_events) c2 = event_at(c2.basis, c2.outcome);

  alice.frames = std::move(frames);
  alice.assumptions.emplace_back(kBobFirstAssumption);
  return alice;
}

}  // namespace dctc
