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

#include "dctc/cli.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <optional>

#include "CLI11.hpp"

#include "dctc/circuit_io.hpp"
#include "dctc/ctc_solver.hpp"
#include "dctc/report.hpp"
#include "dctc/scenarios.hpp"
#include "dctc/signaling.hpp"

namespace dctc {

namespace {

struct Options {
  RunConfig config;
  std::string scenario;
  std::optional<std::string> input;
  std::string message = "yes";
  std::string ordering = "alice-first";
  std::string circuit_path;
};

const std::map<std::string, OutputFormat> kFormats{{"text", OutputFormat::text}, {"machine", OutputFormat::machine}};

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--format", o.config.format, "Report format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("text");
  cmd.add_option("--tol", o.config.convergence_tol, "Convergence tolerance of the fixed-point iteration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--max-iters", o.config.max_iters, "Iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_input(CLI::App& cmd, Options& o) {
  cmd.add_option("--input", o.input, "CR input state")->check(CLI::IsMember({"zero", "one", "plus", "minus"}));
}

void emit(const nlohmann::json& doc, std::ostream& out) { out << doc.dump(2) << "\n"; }

int run_scenario(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = o.config.tolerances();
  const Bb84State input = parse_bb84(o.input.value_or("zero")).value();
  std::optional<ScenarioReport> report;
  if (o.scenario == "not-gate") {
    if (o.input) {
      err << "error: not-gate takes no --input (its spectator qubit is fixed to |0>)\n";
      return kExitUsage;
    }
    report = run_not_gate(tol);
  } else if (o.scenario == "bhw2") {
    if (input != Bb84State::zero && input != Bb84State::minus) {
      err << "error: bhw2 accepts --input zero or minus\n";
      return kExitUsage;
    }
    report = run_bhw2(input, tol);
  } else {
    report = run_bhw4(input, tol);
  }
  if (o.config.format == OutputFormat::machine) {
    emit(to_machine(*report, o.config), out);
  } else {
    out << render_text(*report);
  }
  return kExitOk;
}

int run_signal(const Options& o, std::ostream& out) {
  const Message message = o.message == "yes" ? Message::yes : Message::no;
  const Ordering ordering = o.ordering == "alice-first" ? Ordering::alice_first : Ordering::bob_first;
  const SignalingReport report = run_protocol(message, ordering, o.config.trials, o.config.seed);
  const SignalingReport check = bub_stairs_check(message, o.config.trials, o.config.seed);
  const FrameAnalysis* frames = check.frames ? &*check.frames : nullptr;
  if (o.config.format == OutputFormat::machine) {
    emit(to_machine(report, o.config, frames), out);
  } else {
    out << render_text(report, frames);
  }
  return kExitOk;
}

int run_fixed_point(const Options& o, std::ostream& out) {
  const CtcCircuit circuit = load_circuit(o.circuit_path);
  const Bb84State input = parse_bb84(o.input.value_or("zero")).value();
  ComplexMatrix cr = bb84_state(input).projector();
  for (std::size_t q = 1; q < circuit.n_cr(); ++q) cr = kron(cr, PureState::basis(2, 0).projector());
  std::string desc = std::string(to_string(input)) + " on qubit 0";
  if (circuit.n_cr() > 1) desc += ", other CR qubits |0>";
  const ScenarioReport report = run_circuit("fixed-point", circuit, DensityOperator::from_matrix(std::move(cr)),
                                            std::move(desc), o.config.tolerances());
  if (o.config.format == OutputFormat::machine) {
    emit(to_machine(report, o.config), out);
  } else {
    out << render_text(report);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Deutsch-CTC circuit simulator", "dctc"};
  app.require_subcommand(1);

  CLI::App* scenario = app.add_subcommand("scenario", "Run a built-in circuit");
  scenario->add_option("name", o.scenario, "not-gate, bhw2 or bhw4")
      ->required()
      ->check(CLI::IsMember({"not-gate", "bhw2", "bhw4"}));
  add_input(*scenario, o);
  add_common(*scenario, o);

  CLI::App* signal = app.add_subcommand("signal", "Run the entanglement signaling protocol");
  signal->add_option("--message", o.message, "Message Alice sends")
      ->check(CLI::IsMember({"yes", "no"}))
      ->capture_default_str();
  signal->add_option("--ordering", o.ordering, "Measurement ordering")
      ->check(CLI::IsMember({"alice-first", "bob-first"}))
      ->capture_default_str();
  signal->add_option("--trials", o.config.trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
  signal->add_option("--seed", o.config.seed, "Generator seed")->capture_default_str();
  add_common(*signal, o);

  CLI::App* fixed = app.add_subcommand("fixed-point", "Solve the consistency condition of a circuit file");
  fixed->add_option("--circuit", o.circuit_path, "Circuit document (JSON)")->required();
  add_input(*fixed, o);
  add_common(*fixed, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    o.config.validate();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (scenario->parsed()) return run_scenario(o, out, err);
    if (signal->parsed()) return run_signal(o, out);
    return run_fixed_point(o, out);
  } catch (const CircuitFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonConvergenceError& e) {
    err << "error: fixed-point iteration did not converge: residual " << e.residual() << " after " << e.iterations()
        << " iterations\n";
    return kExitSolverFailure;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}

}  // namespace dctc
