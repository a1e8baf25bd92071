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

#include "dctc/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace dctc {

using nlohmann::json;

namespace {

std::string fmt(double x, int digits = 6) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string fmt_complex(Complex z) {
  const double re = std::abs(z.real()) < 5e-13 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag();
  if (im == 0.0) return fmt(re);
  return fmt(re) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i";
}

void write_matrix(std::ostringstream& os, const ComplexMatrix& m, const std::string& indent) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << indent << "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ", ";
      os << fmt_complex(m(i, j));
    }
    os << "]\n";
  }
}

json num(double x) { return round_significant(x); }

json config_json(const RunConfig& c) {
  return json{{"tolerance", num(c.tolerance)},
              {"convergence_tol", num(c.convergence_tol)},
              {"max_iters", c.max_iters},
              {"seed", c.seed},
              {"trials", c.trials},
              {"format", c.format == OutputFormat::machine ? "machine" : "text"}};
}

json distribution_json(const OutcomeDistribution& d) {
  json out = json::object();
  for (std::size_t k = 0; k < d.labels.size(); ++k) out[d.labels[k]] = num(d.probabilities[k]);
  return out;
}

json event_json(const FrameEvent& e) {
  return json{{"basis", std::string(to_string(e.basis))},
              {"axis", std::string(axis_label(e.basis))},
              {"outcome", e.outcome},
              {"p_alice_first", num(e.p_alice_first)},
              {"p_bob_first", num(e.p_bob_first)},
              {"observed_alice_first", e.observed_alice_first},
              {"observed_bob_first", e.observed_bob_first}};
}

bool is_matrix(const json& m) {
  if (!m.is_array() || m.empty()) return false;
  for (const json& row : m) {
    if (!row.is_array() || row.size() != m.size()) return false;
    for (const json& z : row) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) return false;
    }
  }
  return true;
}

bool is_distribution(const json& d) {
  if (!d.is_object() || d.empty()) return false;
  for (const auto& [label, p] : d.items()) {
    if (label.empty() || label.find_first_not_of("01") != std::string::npos) return false;
    if (!p.is_number() || p.get<double>() < 0.0 || p.get<double>() > 1.0) return false;
  }
  return true;
}

}  // namespace

void RunConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(convergence_tol > 0.0)) throw std::invalid_argument("convergence tolerance must be positive");
  if (max_iters == 0) throw std::invalid_argument("max_iters must be at least 1");
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
}

Tolerances RunConfig::tolerances() const {
  Tolerances t = kDefaultTolerances;
  t.validity = tolerance;
  t.convergence = convergence_tol;
  t.max_iters = max_iters;
  return t;
}

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({num(m(i, j).real()), num(m(i, j).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string describe_state(const DensityOperator& rho) {
  constexpr double kTol = 1e-9;
  const std::size_t d = rho.dim();
  if (max_abs_diff(rho.matrix(), DensityOperator::maximally_mixed(d).matrix()) <= kTol) {
    return "I/" + std::to_string(d);
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (max_abs_diff(rho.matrix(), PureState::basis(d, i).projector()) <= kTol) {
      const std::string b = bit_label(i, rho.n_qubits());
      return "|" + b + "><" + b + "|";
    }
  }
  return "";
}

json to_machine(const ScenarioReport& r, const RunConfig& config) {
  const FixedPointResult& fp = r.fixed_point;
  json fixed{{"unique", fp.unique},
             {"residual", num(fp.residual)},
             {"matrix", matrix_to_json(fp.selected.matrix())},
             {"basis_dimension", fp.basis.size()},
             {"rank_ambiguous", fp.diagnostics.ambiguous},
             {"iterations", fp.iterations_used ? json(*fp.iterations_used) : json(nullptr)}};
  json doc{{"scenario", r.scenario},
           {"circuit", r.circuit_label},
           {"input", r.input_description},
           {"config", config_json(config)},
           {"fixed_point", std::move(fixed)},
           {"output_state", matrix_to_json(r.output_state.matrix())},
           {"distribution", distribution_json(r.distribution)}};
  if (r.classical) {
    doc["classical"] = json{{"fixed_points", r.classical->fixed_points}, {"cycles", r.classical->cycles}};
  }
  return doc;
}

json to_machine(const SignalingReport& r, const RunConfig& config, const FrameAnalysis* frames) {
  if (frames == nullptr && r.frames) frames = &*r.frames;
  json freq = json::object();
  for (std::size_t k = 0; k < kBobOutcomes.size(); ++k) freq[kBobOutcomes[k]] = num(r.frequencies[k]);

  json sig{{"message", std::string(to_string(r.message))},
           {"ordering", std::string(to_string(r.ordering))},
           {"alice_basis", std::string(to_string(basis_for(r.message)))},
           {"alice_axis", std::string(axis_label(basis_for(r.message)))},
           {"trials", r.trials},
           {"seed", r.seed},
           {"accuracy", num(r.accuracy)},
           {"frequencies", freq},
           {"c2_events", json::array()},
           {"assumptions", r.assumptions}};
  if (frames != nullptr) {
    json events = json::array();
    for (const FrameEvent& e : frames->events) events.push_back(event_json(e));
    for (const FrameEvent& e : frames->c2_zero_probability_events) sig["c2_events"].push_back(event_json(e));
    sig["frames"] = std::move(events);
    sig["pruned_observations"] = frames->pruned_observations;
    sig["c1_verdict"] = frames->c1_verdict;
  }
  return json{{"scenario", "signal"},
              {"config", config_json(config)},
              {"fixed_point", nullptr},
              {"output_state", nullptr},
              {"distribution", std::move(freq)},
              {"signaling", std::move(sig)}};
}

std::string render_text(const ScenarioReport& r) {
  std::ostringstream os;
  const FixedPointResult& fp = r.fixed_point;
  os << "scenario: " << r.scenario << "\n";
  os << "circuit: " << r.circuit_label << "\n";
  os << "input: " << r.input_description << "\n";
  if (r.classical) {
    os << "classical fixed points: ";
    if (r.classical->fixed_points.empty()) {
      os << "none\n";
    } else {
      for (std::size_t k = 0; k < r.classical->fixed_points.size(); ++k) {
        os << (k > 0 ? ", " : "") << r.classical->fixed_points[k];
      }
      os << "\n";
    }
    os << "classical cycles:";
    for (const auto& cycle : r.classical->cycles) {
      os << " (";
      for (std::size_t k = 0; k < cycle.size(); ++k) os << (k > 0 ? " " : "") << cycle[k];
      os << ")";
    }
    os << "\n";
  }
  const std::string name = describe_state(fp.selected);
  os << "quantum fixed point: " << (name.empty() ? "see matrix" : name) << "\n";
  os << "  unique: " << (fp.unique ? "yes" : "no") << "  dimension: " << fp.basis.size()
     << "  residual: " << fmt(fp.residual, 3);
  if (fp.iterations_used) os << "  iterations: " << *fp.iterations_used;
  os << "\n";
  if (fp.diagnostics.ambiguous) os << "  warning: numerical rank is ambiguous near the cutoff\n";
  write_matrix(os, fp.selected.matrix(), "  ");
  os << "output state (CR):\n";
  write_matrix(os, r.output_state.matrix(), "  ");
  os << "outcome distribution:\n";
  for (std::size_t k = 0; k < r.distribution.labels.size(); ++k) {
    os << "  " << r.distribution.labels[k] << "  " << fmt(r.distribution.probabilities[k]) << "\n";
  }
  return os.str();
}

std::string render_text(const SignalingReport& r, const FrameAnalysis* frames) {
  if (frames == nullptr && r.frames) frames = &*r.frames;
  std::ostringstream os;
  const Basis b = basis_for(r.message);
  os << "scenario: signal\n";
  os << "message: " << to_string(r.message) << "  alice basis: " << to_string(b) << " (" << axis_label(b) << "*)\n";
  os << "ordering: " << to_string(r.ordering) << "  trials: " << r.trials << "  seed: " << r.seed << "\n";
  os << "bob outcome frequencies:\n";
  for (std::size_t k = 0; k < kBobOutcomes.size(); ++k) {
    os << "  " << kBobOutcomes[k] << "  " << fmt(r.frequencies[k]) << "\n";
  }
  os << "decoding accuracy: " << fmt(r.accuracy) << "\n";
  if (frames != nullptr) {
    os << "frame table (basis outcome  p_alice_first  p_bob_first  seen_af  seen_bf):\n";
    for (const FrameEvent& e : frames->events) {
      os << "  " << axis_label(e.basis) << " " << e.outcome << "  " << fmt(e.p_alice_first) << "  "
         << fmt(e.p_bob_first) << "  " << e.observed_alice_first << "  " << e.observed_bob_first << "\n";
    }
    os << "C2 zero-probability events:";
    if (frames->c2_zero_probability_events.empty()) os << " none";
    for (const FrameEvent& e : frames->c2_zero_probability_events) os << " (" << axis_label(e.basis) << "," << e.outcome << ")";
    os << "\n";
    os << "pruned observations: " << frames->pruned_observations << "\n";
    os << "C1 verdict: " << (frames->c1_verdict ? "consistent" : "inconsistent") << "\n";
  }
  for (const std::string& a : r.assumptions) os << "assumption: " << a << "\n";
  os << "* X names the Hadamard basis and Z the computational basis\n";
  return os.str();
}

std::vector<std::string> validate_machine_report(const json& doc) {
  std::vector<std::string> errors;
  auto need = [&](const char* key) {
    if (!doc.contains(key)) errors.push_back(std::string("missing field '") + key + "'");
    return doc.contains(key);
  };
  if (!doc.is_object()) return {"document is not an object"};
  if (need("scenario") && !doc["scenario"].is_string()) errors.emplace_back("scenario: expected string");
  if (need("config")) {
    const json& c = doc["config"];
    if (!c.is_object()) {
      errors.emplace_back("config: expected object");
    } else {
      for (const char* k : {"tolerance", "convergence_tol", "max_iters", "seed", "trials", "format"}) {
        if (!c.contains(k)) errors.push_back(std::string("config.") + k + ": missing");
      }
    }
  }
  if (need("fixed_point")) {
    const json& fp = doc["fixed_point"];
    if (!fp.is_null()) {
      if (!fp.is_object()) {
        errors.emplace_back("fixed_point: expected object or null");
      } else {
        if (!fp.contains("unique") || !fp["unique"].is_boolean()) errors.emplace_back("fixed_point.unique: expected bool");
        if (!fp.contains("residual") || !fp["residual"].is_number()) {
          errors.emplace_back("fixed_point.residual: expected number");
        }
        if (!fp.contains("matrix") || !is_matrix(fp["matrix"])) {
          errors.emplace_back("fixed_point.matrix: expected square matrix of [re, im]");
        }
      }
    }
  }
  if (need("output_state") && !doc["output_state"].is_null() && !is_matrix(doc["output_state"])) {
    errors.emplace_back("output_state: expected square matrix of [re, im] or null");
  }
  if (need("distribution") && !is_distribution(doc["distribution"])) {
    errors.emplace_back("distribution: expected map of bitstring to probability");
  }
  if (doc.contains("signaling")) {
    const json& s = doc["signaling"];
    if (!s.is_object()) {
      errors.emplace_back("signaling: expected object");
    } else {
      if (!s.contains("accuracy") || !s["accuracy"].is_number()) errors.emplace_back("signaling.accuracy: expected number");
      if (!s.contains("frequencies") || !is_distribution(s["frequencies"])) {
        errors.emplace_back("signaling.frequencies: expected map of bitstring to frequency");
      }
      if (!s.contains("c2_events") || !s["c2_events"].is_array()) errors.emplace_back("signaling.c2_events: expected array");
    }
  }
  return errors;
}

}  // namespace dctc
