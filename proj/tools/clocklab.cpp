// Copyright 2026 The clocklab Authors
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

// clocklab: command-line front end.
//
// Exit codes: 0 success, 1 usage (including capacity limits), 2 input or
// parse failure, 3 numerical failure.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#ifdef CLOCKLAB_CLI11_SINGLE_HEADER
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "clocklab/lab.hpp"

namespace {

using clocklab::lab::json;

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kNumerical = 3 };

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw clocklab::ParseError(0, "cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw clocklab::ParseError(0, "write to '" + path + "' failed");
}

void emit(const json& j, const std::string& path) { emit(j.dump(2), path); }

clocklab::Solver solver_from_name(const std::string& s) {
  if (s == "auto") return clocklab::Solver::Auto;
  if (s == "dense") return clocklab::Solver::Dense;
  if (s == "iterative") return clocklab::Solver::Iterative;
  throw std::invalid_argument("unknown solver '" + s + "'");
}

void add_source(CLI::App* cmd, clocklab::lab::CircuitSource& src, std::string& path) {
  cmd->add_option("--circuit", path, "Circuit file");
  cmd->add_option("--family", src.family, "trivial | grover | modified_grover | controlled_grover")
      ->capture_default_str();
  cmd->add_option("--n", src.n, "System qubits")->capture_default_str();
  cmd->add_option("--L", src.L, "Number of gates")->capture_default_str();
  cmd->add_option("--X", src.X, "Marked bitstring (default all ones)");
}

int run(int argc, char** argv) {
  CLI::App app{"Clock Hamiltonians, gap scans, measurement-based search and oracle gadgets"};
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags win");
  app.require_subcommand(1);

  std::string output;
  std::function<void()> action;

  // spectrum
  clocklab::lab::SpectrumOptions spec;
  std::string spec_path, spec_solver = "auto";
  auto* c_spec = app.add_subcommand("spectrum", "Lowest eigenvalues and gap of a clock Hamiltonian");
  add_source(c_spec, spec.source, spec_path);
  c_spec->add_option("--construction", spec.construction, "standard | feynman | modified")->capture_default_str();
  c_spec->add_option("--topology", spec.topology, "open | periodic")->capture_default_str();
  c_spec->add_option("--g", spec.g, "Interpolation parameter")->capture_default_str();
  c_spec->add_option("--count", spec.count, "Eigenvalues reported")->capture_default_str();
  c_spec->add_option("--solver", spec_solver, "auto | dense | iterative")->capture_default_str();
  c_spec->add_option("-o,--output", output, "Output file (default stdout)");
  c_spec->callback([&] {
    action = [&] {
      if (!spec_path.empty()) spec.source.path = spec_path;
      spec.solver = solver_from_name(spec_solver);
      emit(clocklab::lab::cmd_spectrum(spec), output);
    };
  });

  // gap-scan
  clocklab::lab::GapScanOptions scan;
  std::string scan_n = "1", scan_L, scan_solver = "auto", scan_record;
  auto* c_scan = app.add_subcommand("gap-scan", "Gap against L with a log-log fit");
  c_scan->add_option("--family", scan.family, "Circuit family")->capture_default_str();
  c_scan->add_option("--n", scan_n, "n values (list or range)")->capture_default_str();
  c_scan->add_option("--L", scan_L, "L values: a:b:xk, a:b:s or a,b,c")->required();
  c_scan->add_option("--X", scan.X, "Marked bitstring (default all ones)");
  c_scan->add_flag("--amplify", scan.amplify, "Also compute the amplified gap");
  c_scan->add_option("--solver", scan_solver, "auto | dense | iterative")->capture_default_str();
  c_scan->add_option("-o,--output", output, "CSV table (default stdout)");
  c_scan->add_option("--record", scan_record, "JSON record with the fit");
  c_scan->callback([&] {
    action = [&] {
      scan.n_values = clocklab::lab::parse_int_range(scan_n);
      scan.L_values = clocklab::lab::parse_int_range(scan_L);
      scan.solver = solver_from_name(scan_solver);
      const auto res = clocklab::lab::cmd_gap_scan(scan);
      std::ostringstream csv;
      clocklab::lab::write_gap_scan_csv(csv, res.rows);
      emit(csv.str(), output);
      if (!scan_record.empty()) emit(res.record, scan_record);
    };
  });

  // amplify
  clocklab::lab::CircuitSource amp;
  std::string amp_path, amp_solver = "auto";
  auto* c_amp = app.add_subcommand("amplify", "Frustration-free certificate and amplified gap");
  add_source(c_amp, amp, amp_path);
  c_amp->add_option("--solver", amp_solver, "auto | dense | iterative")->capture_default_str();
  c_amp->add_option("-o,--output", output, "Output file (default stdout)");
  c_amp->callback([&] {
    action = [&] {
      if (!amp_path.empty()) amp.path = amp_path;
      clocklab::EigenOptions eo;
      eo.solver = solver_from_name(amp_solver);
      eo.count = 4;
      emit(clocklab::lab::cmd_amplify(amp, eo), output);
    };
  });

  // search
  clocklab::SearchConfig sc;
  std::string sc_family = "modified_grover", sc_mode = "exact_projective";
  auto* c_search = app.add_subcommand("search", "Measurement-based search success statistics");
  c_search->add_option("--n", sc.n, "System qubits")->capture_default_str();
  c_search->add_option("--family", sc_family, "modified_grover | controlled_grover")->capture_default_str();
  c_search->add_option("--mode", sc_mode, "exact_projective | phase_randomization | gadget")->capture_default_str();
  c_search->add_option("--trials", sc.trials, "Trials")->capture_default_str();
  c_search->add_option("--seed", sc.seed, "Seed")->capture_default_str();
  c_search->add_option("--c-constant", sc.c_constant, "Evolution time constant c in T = c / gap");
  c_search->add_option("--reps", sc.reps, "Randomization repetitions")->capture_default_str();
  c_search->add_option("-o,--output", output, "Output file (default stdout)");
  c_search->callback([&] {
    action = [&] {
      sc.family = clocklab::family_from_name(sc_family);
      sc.mode = clocklab::mode_from_name(sc_mode);
      emit(clocklab::lab::cmd_search(sc), output);
    };
  });

  // gadget-check
  clocklab::lab::GadgetCheckOptions gc;
  gc.source.family = "modified_grover";
  gc.source.n = 2;
  gc.source.L = 4;
  std::string gc_path, gc_s = "0.01,0.05,0.1,0.5", gc_steps = "8,16,32,64", gc_times = "1,2,4,8", gc_ledger;
  auto* c_gadget = app.add_subcommand("gadget-check", "Fractional-oracle fidelity, Trotter errors and query ledger");
  add_source(c_gadget, gc.source, gc_path);
  c_gadget->add_option("--s", gc_s, "Fractional exponents")->capture_default_str();
  c_gadget->add_option("--t", gc.t, "Evolution time for the Trotter table")->capture_default_str();
  c_gadget->add_option("--steps", gc_steps, "Trotter step counts")->capture_default_str();
  c_gadget->add_option("--ledger-times", gc_times, "Ledger times")->capture_default_str();
  c_gadget->add_option("--epsilon", gc.epsilon, "Ledger error target")->capture_default_str();
  c_gadget->add_option("--order", gc.order, "Ledger Trotter order (1 or 2)")->capture_default_str();
  c_gadget->add_flag("--amplified", gc.amplified, "Use the amplified coupling");
  c_gadget->add_option("--seed", gc.seed, "Seed")->capture_default_str();
  c_gadget->add_option("-o,--output", output, "JSON record (default stdout)");
  c_gadget->add_option("--ledger", gc_ledger, "Query-ledger CSV");
  c_gadget->callback([&] {
    action = [&] {
      if (!gc_path.empty()) gc.source.path = gc_path;
      gc.s_values = clocklab::lab::parse_real_range(gc_s);
      gc.steps = clocklab::lab::parse_int_range(gc_steps);
      gc.ledger_times = clocklab::lab::parse_real_range(gc_times);
      const auto res = clocklab::lab::cmd_gadget_check(gc);
      emit(res.record, output);
      if (!gc_ledger.empty()) {
        std::ostringstream csv;
        clocklab::lab::write_ledger_csv(csv, res.ledger);
        emit(csv.str(), gc_ledger);
      }
    };
  });

  // theorem-report
  std::string tr_scan, tr_ledger;
  auto* c_thm = app.add_subcommand("theorem-report", "Bound-consistency report from a gap scan and a ledger");
  c_thm->add_option("--gap-scan", tr_scan, "Gap-scan CSV")->required();
  c_thm->add_option("--ledger", tr_ledger, "Query-ledger CSV")->required();
  c_thm->add_option("-o,--output", output, "Output file (default stdout)");
  c_thm->callback([&] {
    action = [&] {
      std::istringstream s(clocklab::lab::read_text_file(tr_scan));
      std::istringstream l(clocklab::lab::read_text_file(tr_ledger));
      const auto rows = clocklab::lab::read_gap_scan_csv(s);
      const auto ledger = clocklab::lab::read_ledger_csv(l);
      emit(clocklab::lab::cmd_theorem_report(rows, ledger), output);
    };
  });

  // parse
  std::string parse_path;
  bool parse_check = false;
  auto* c_parse = app.add_subcommand("parse", "Validate a circuit file and print its canonical form");
  c_parse->add_option("file", parse_path, "Circuit file")->required();
  c_parse->add_flag("--check", parse_check, "Fail unless the canonical form round-trips");
  c_parse->add_option("-o,--output", output, "Output file (default stdout)");
  c_parse->callback([&] {
    action = [&] {
      const auto r = clocklab::lab::cmd_parse(clocklab::lab::read_text_file(parse_path));
      if (parse_check && !r.stable) throw clocklab::ParseError(0, "canonical form does not round-trip");
      emit(r.canonical, output);
    };
  });

  // fit
  std::string fit_path;
  auto* c_fit = app.add_subcommand("fit", "Log-log gap fit from a gap-scan CSV or JSON records");
  c_fit->add_option("file", fit_path, "Input file")->required();
  c_fit->add_option("-o,--output", output, "Output file (default stdout)");
  c_fit->callback([&] { action = [&] { emit(clocklab::lab::cmd_fit(clocklab::lab::read_text_file(fit_path)), output); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  action();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const clocklab::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const clocklab::CapacityError& e) {
    std::cerr << "error: capacity: " << e.what() << '\n';
    return kUsage;
  } catch (const clocklab::NumericalError& e) {
    std::cerr << "error: numerical: " << e.what() << '\n';
    return kNumerical;
  } catch (const clocklab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
