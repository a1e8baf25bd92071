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

#ifndef DCTC_CIRCUIT_IO_HPP_
#define DCTC_CIRCUIT_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dctc/gates.hpp"

/// Circuit documents (JSON):
///
///   {"n_cr": 1, "n_ctc": 1, "label": "bhw2",
///    "gates": [{"name": "SWAP", "targets": [0, 1]},
///              {"name": "H", "controls": [0], "targets": [1]}]}
///
/// Gates are applied first to last. `name` is one of I, X, H, SWAP, CH or
/// "unitary" with a `matrix` of [re, im] pairs, either as rows or as one flat
/// row-major list; a unitary without `targets` acts on every wire.
/// `control_pattern` is a string of 0/1 per control and defaults to all 1s.
namespace dctc {

class CircuitFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxCircuitQubits = 10;

CtcCircuit parse_circuit(std::string_view text);
CtcCircuit load_circuit(const std::filesystem::path& path);

/// A document with a single "unitary" gate over all wires.
std::string circuit_to_json(const CtcCircuit& circuit);

}  // namespace dctc

#endif  // DCTC_CIRCUIT_IO_HPP_
