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

#include "dctc/circuit_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace dctc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw CircuitFormatError(path + ": " + what);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::size_t read_count(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(key, "missing");
  const json& v = doc[key];
  if (!v.is_number_integer() || v.get<long long>() < 1) fail(key, "expected a positive integer");
  return v.get<std::size_t>();
}

std::vector<std::size_t> read_wires(const json& v, const std::string& path, std::size_t total) {
  if (!v.is_array()) fail(path, "expected an array of wire indices");
  std::vector<std::size_t> wires;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const json& w = v[k];
    const std::string at = path + "[" + std::to_string(k) + "]";
    if (!w.is_number_integer() || w.get<long long>() < 0) fail(at, "expected a nonnegative integer");
    const auto q = w.get<std::size_t>();
    if (q >= total) fail(at, "wire " + std::to_string(q) + " out of range (circuit has " + std::to_string(total) + ")");
    wires.push_back(q);
  }
  return wires;
}

Complex read_complex(const json& z, const std::string& path) {
  if (z.is_number()) return {z.get<double>(), 0.0};
  if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
    fail(path, "expected [re, im]");
  }
  return {z[0].get<double>(), z[1].get<double>()};
}

ComplexMatrix read_matrix(const json& m, const std::string& path) {
  if (!m.is_array() || m.empty()) fail(path, "expected a non-empty array");
  const bool rows = m[0].is_array() && !m[0].empty() && m[0][0].is_array();
  std::vector<Complex> entries;
  std::size_t dim = 0;
  if (rows) {
    dim = m.size();
    for (std::size_t i = 0; i < dim; ++i) {
      const std::string row_path = path + "[" + std::to_string(i) + "]";
      if (!m[i].is_array() || m[i].size() != dim) fail(row_path, "expected a row of " + std::to_string(dim) + " entries");
      for (std::size_t j = 0; j < dim; ++j) entries.push_back(read_complex(m[i][j], row_path + "[" + std::to_string(j) + "]"));
    }
  } else {
    dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.size()))));
    if (dim * dim != m.size()) fail(path, "flat matrix length " + std::to_string(m.size()) + " is not a square");
    for (std::size_t k = 0; k < m.size(); ++k) entries.push_back(read_complex(m[k], path + "[" + std::to_string(k) + "]"));
  }
  ComplexMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i * dim + j];
    }
  }
  return out;
}

UnitaryGate read_gate(const json& g, const std::string& path, std::size_t total) {
  if (!g.is_object()) fail(path, "expected an object");
  if (!g.contains("name") || !g["name"].is_string()) fail(path + ".name", "expected a string");
  const std::string name = g["name"].get<std::string>();

  UnitaryGate base = UnitaryGate::identity(1);
  if (name == "unitary") {
    if (!g.contains("matrix")) fail(path + ".matrix", "missing");
    ComplexMatrix m = read_matrix(g["matrix"], path + ".matrix");
    try {
      qubit_count_for_dim(static_cast<std::size_t>(m.rows()));
      base = UnitaryGate::from_matrix(std::move(m));
    } catch (const std::invalid_argument& e) {
      fail(path + ".matrix", e.what());
    }
  } else {
    try {
      base = standard_gate(name);
    } catch (const std::invalid_argument& e) {
      fail(path + ".name", e.what());
    }
  }

  std::vector<std::size_t> targets;
  if (g.contains("targets")) {
    targets = read_wires(g["targets"], path + ".targets", total);
  } else if (name == "unitary") {
    for (std::size_t q = 0; q < total; ++q) targets.push_back(q);
  } else {
    fail(path + ".targets", "missing");
  }
  if (targets.size() != base.n_qubits()) {
    fail(path + ".targets", "gate acts on " + std::to_string(base.n_qubits()) + " qubit(s) but " +
                                std::to_string(targets.size()) + " target(s) given");
  }

  std::vector<std::size_t> controls;
  if (g.contains("controls")) controls = read_wires(g["controls"], path + ".controls", total);
  std::string pattern(controls.size(), '1');
  if (g.contains("control_pattern")) {
    const json& p = g["control_pattern"];
    if (p.is_string()) {
      pattern = p.get<std::string>();
    } else if (p.is_array()) {
      pattern.clear();
      for (const json& bit : p) {
        if (!bit.is_number_integer() || (bit.get<int>() != 0 && bit.get<int>() != 1)) {
          fail(path + ".control_pattern", "expected bits 0 or 1");
        }
        pattern += bit.get<int>() == 1 ? '1' : '0';
      }
    } else {
      fail(path + ".control_pattern", "expected a string of 0/1 or an array of bits");
    }
  }

  try {
    return controlled_on_pattern(controls, pattern, base, targets, total);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

}  // namespace

CtcCircuit parse_circuit(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw CircuitFormatError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) fail("document", "expected an object");

  const std::size_t n_cr = read_count(doc, "n_cr");
  const std::size_t n_ctc = read_count(doc, "n_ctc");
  const std::size_t total = n_cr + n_ctc;
  if (total > kMaxCircuitQubits) {
    fail("n_cr + n_ctc", std::to_string(total) + " wires exceeds the limit of " + std::to_string(kMaxCircuitQubits));
  }
  std::string label = "circuit";
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail("label", "expected a string");
    label = doc["label"].get<std::string>();
  }
  if (!doc.contains("gates")) fail("gates", "missing");
  if (!doc["gates"].is_array()) fail("gates", "expected an array");

  UnitaryGate u = UnitaryGate::identity(total);
  const json& gates = doc["gates"];
  for (std::size_t k = 0; k < gates.size(); ++k) {
    u = read_gate(gates[k], "gates[" + std::to_string(k) + "]", total) * u;
  }
  return CtcCircuit(n_cr, n_ctc, std::move(u), std::move(label));
}

CtcCircuit load_circuit(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CircuitFormatError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_circuit(buf.str());
  } catch (const CircuitFormatError& e) {
    throw CircuitFormatError(path.string() + ": " + e.what());
  }
}

std::string circuit_to_json(const CtcCircuit& circuit) {
  json rows = json::array();
  const ComplexMatrix& m = circuit.unitary().matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  json doc{{"n_cr", circuit.n_cr()},
           {"n_ctc", circuit.n_ctc()},
           {"label", circuit.label()},
           {"gates", json::array({json{{"name", "unitary"}, {"matrix", std::move(rows)}}})}};
  return doc.dump(2);
}

}  // namespace dctc
