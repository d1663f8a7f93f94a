// Copyright 2026 The oactrl Authors
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

#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oactrl/errors.hpp"
#include "oactrl/gf.hpp"
#include "oactrl/hamiltonian.hpp"
#include "oactrl/known_arrays.hpp"
#include "oactrl/oa.hpp"
#include "oactrl/protocols.hpp"
#include "oactrl/schemes.hpp"

namespace oactrl::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kConfigVersion = 1;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3, kVerification = 4 };

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("write to '" + path + "' failed");
}

// "-" or empty means the given stream.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

// ---------------------------------------------------------------------------
// Config: JSON with a top-level "config_version". Relative file paths resolve
// against the config file's directory.

using nlohmann::json;

inline protocols::Variant variant_from_json(const json& j) {
  protocols::Variant v;
  v.label = j.value("label", std::string{});
  v.order = protocols::order_from_string(j.value("order", std::string("first")));
  v.randomized = j.value("randomized", false);
  v.qdrift = protocols::qdrift_from_string(j.value("qdrift", std::string("off")));
  v.reps = j.value("reps", std::size_t{1});
  if (v.label.empty()) {
    v.label = v.qdrift != protocols::QdriftMode::off ? "qdrift_" + protocols::to_string(v.qdrift)
                                                     : protocols::to_string(v.order) + (v.randomized ? "_rand" : "_det");
  }
  return v;
}

inline json variant_to_json(const protocols::Variant& v) {
  return {{"label", v.label},
          {"order", protocols::to_string(v.order)},
          {"randomized", v.randomized},
          {"qdrift", protocols::to_string(v.qdrift)},
          {"reps", v.reps}};
}

struct LoadedConfig {
  protocols::ExperimentConfig cfg;
  std::string hamiltonian_text;  // contents of hamiltonian.file, if any
  std::string array_text;        // contents of scheme.file, if any
};

inline LoadedConfig config_from_json(const json& j, const std::filesystem::path& base) {
  LoadedConfig lc;
  auto& c = lc.cfg;
  const int version = j.value("config_version", kConfigVersion);
  if (version != kConfigVersion)
    throw ParseError("unsupported config_version " + std::to_string(version) + " (expected " +
                     std::to_string(kConfigVersion) + ")");
  if (j.contains("hamiltonian")) {
    const auto& h = j.at("hamiltonian");
    auto& hs = c.hamiltonian;
    hs.generator = h.value("generator", hs.generator);
    hs.qudits = h.value("qudits", hs.qudits);
    hs.terms = h.value("terms", hs.terms);
    hs.locality = h.value("locality", hs.locality);
    hs.dim = h.value("dim", hs.dim);
    hs.seed = h.value("seed", hs.seed);
    hs.scale = h.value("scale", hs.scale);
    hs.file = h.value("file", std::string{});
    if (!hs.file.empty()) lc.hamiltonian_text = read_file((base / hs.file).string());
  }
  if (j.contains("scheme")) {
    const auto& s = j.at("scheme");
    auto& ss = c.scheme;
    ss.array = s.value("array", ss.array);
    ss.levels = s.value("levels", ss.levels);
    ss.strength = s.value("strength", ss.strength);
    ss.ell = s.value("ell", ss.ell);
    ss.transpose = s.value("transpose", ss.transpose);
    ss.columns = s.value("columns", ss.columns);
    ss.dim = s.value("dim", ss.dim);
    ss.file = s.value("file", std::string{});
    if (!ss.file.empty()) lc.array_text = read_file((base / ss.file).string());
  }
  if (j.contains("variants"))
    for (const auto& v : j.at("variants")) c.variants.push_back(variant_from_json(v));
  c.blocks = j.value("blocks", c.blocks);
  c.trotter_steps = j.value("trotter_steps", c.trotter_steps);
  c.total_time = j.value("total_time", c.total_time);
  c.states = j.value("states", c.states);
  c.master_seed = j.value("master_seed", c.master_seed);
  return lc;
}

inline json config_to_json(const protocols::ExperimentConfig& c) {
  const auto& h = c.hamiltonian;
  const auto& s = c.scheme;
  json vars = json::array();
  for (const auto& v : c.variants) vars.push_back(variant_to_json(v));
  return {{"config_version", kConfigVersion},
          {"hamiltonian",
           {{"generator", h.generator},
            {"qudits", h.qudits},
            {"terms", h.terms},
            {"locality", h.locality},
            {"dim", h.dim},
            {"seed", h.seed},
            {"scale", h.scale},
            {"file", h.file}}},
          {"scheme",
           {{"array", s.array},
            {"levels", s.levels},
            {"strength", s.strength},
            {"ell", s.ell},
            {"transpose", s.transpose},
            {"columns", s.columns},
            {"dim", s.dim},
            {"file", s.file}}},
          {"variants", vars},
          {"blocks", c.blocks},
          {"trotter_steps", c.trotter_steps},
          {"total_time", c.total_time},
          {"states", c.states},
          {"master_seed", c.master_seed}};
}

inline LoadedConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError("config '" + path + "': " + e.what());
  }
  try {
    return config_from_json(j, std::filesystem::path(path).parent_path());
  } catch (const json::exception& e) {
    throw ParseError("config '" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Helpers shared by subcommands

inline std::vector<std::size_t> to_zero_based(const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> out;
  for (auto c : cols) {
    if (c == 0) throw InvalidArgument("column numbers are 1-based");
    out.push_back(c - 1);
  }
  return out;
}

inline oa::OrthogonalArray array_from_args(const std::string& file, const std::string& builtin, unsigned s, unsigned t,
                                           bool transpose) {
  if (!file.empty() && !builtin.empty()) throw InvalidArgument("give either --file or --builtin, not both");
  if (!builtin.empty()) {
    if (builtin == "oa16") return oa::known::oa_16_5_4_2();
    if (builtin == "oa32") return oa::known::oa_32_9_4_2();
    throw InvalidArgument("unknown builtin array '" + builtin + "' (oa16, oa32)");
  }
  if (file.empty()) throw InvalidArgument("an array is required (--file or --builtin)");
  if (s == 0 || t == 0) throw InvalidArgument("--s and --t are required with --file");
  return oa::load(read_file(file), s, t, {.transpose = transpose});
}

inline std::string format_coloring(const hamiltonian::Coloring& c, bool proper) {
  std::ostringstream os;
  os << "colors " << c.count << "\n";
  for (std::size_t i = 0; i < c.color.size(); ++i) os << "qudit " << i + 1 << " color " << c.color[i] + 1 << "\n";
  os << "proper " << (proper ? "yes" : "no") << "\n";
  os << "array columns needed " << c.count << " (strength 2 over " << c.count << " colored qudits)\n";
  return os.str();
}

struct Manifest {
  std::string command;
  json config;
  std::uint64_t master_seed = 0;
  std::size_t rows = 0;
  double seconds = 0.0;
  bool timing = false;
};

inline std::string manifest_text(const Manifest& m) {
  json j = {{"tool", "oactrl"},
            {"tool_version", kVersion},
            {"config_version", kConfigVersion},
            {"command", m.command},
            {"master_seed", m.master_seed},
            {"rows", m.rows},
            {"config", m.config}};
  if (m.timing) j["timings"] = {{m.command, m.seconds}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Entry point

/**
 * Runs one command line. Exit codes: 0 ok, 1 other failure, 2 usage,
 * 3 I/O or parse, 4 verification or guard.
 */
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonal-array decoupling and controlization toolkit", "oactrl"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::function<void()> action;

  // oa -----------------------------------------------------------------------
  auto* oa_cmd = app.add_subcommand("oa", "Construct, verify or restrict orthogonal arrays");
  oa_cmd->require_subcommand(1);
  struct {
    unsigned s = 0, t = 0, ell = 2;
    std::string file, out, builtin, generator;
    bool transpose = false, zero_based = false;
    std::vector<std::size_t> cols;
  } oa_opt;

  auto* oa_construct = oa_cmd->add_subcommand("construct", "Rao-Hamming OA(s^l, (s^l-1)/(s-1), s, 2) or a linear code");
  oa_construct->add_option("--s", oa_opt.s, "Levels (prime power <= 256)")->required();
  oa_construct->add_option("--ell", oa_opt.ell, "Exponent l >= 2");
  oa_construct->add_option("--generator", oa_opt.generator, "Generator matrix file (rows of field elements 0..s-1)");
  oa_construct->add_option("--t", oa_opt.t, "Claimed strength (with --generator)");
  oa_construct->add_option("-o,--out", oa_opt.out, "Output file (default stdout)");
  oa_construct->add_flag("--zero-based", oa_opt.zero_based, "Write symbols 0..s-1");
  oa_construct->callback([&] {
    action = [&] {
      const auto f = gf::Field::of_order(oa_opt.s);
      oa::OrthogonalArray arr = [&] {
        if (oa_opt.generator.empty()) return oa::construct_rao_hamming(f, oa_opt.ell);
        if (oa_opt.t == 0) throw InvalidArgument("--t is required with --generator");
        oa::GeneratorMatrix g;
        std::istringstream in(read_file(oa_opt.generator));
        std::string line;
        while (std::getline(in, line)) {
          if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#')
            continue;
          std::istringstream ls(line);
          std::vector<gf::FieldElement> row;
          long v;
          while (ls >> v) {
            if (v < 0 || v >= static_cast<long>(oa_opt.s)) throw ParseError("generator entry out of range");
            row.push_back(f.element(static_cast<unsigned>(v)));
          }
          if (!ls.eof()) throw ParseError("generator: not an integer on line '" + line + "'");
          g.push_back(std::move(row));
        }
        return oa::construct_from_linear_code(f, g, oa_opt.t);
      }();
      const auto rep = oa::verify(arr);
      emit(oa_opt.out, oa::to_text(arr, oa_opt.zero_based), out);
      out << "OA(" << arr.runs() << "," << arr.factors() << "," << arr.levels() << "," << arr.strength() << ") "
          << (rep.ok ? "OK strength " + std::to_string(arr.strength()) + ", lambda " + std::to_string(rep.lambda)
                     : rep.describe())
          << "\n";
      if (!rep.ok) throw VerificationError(rep.describe());
    };
  });

  auto* oa_verify = oa_cmd->add_subcommand("verify", "Exhaustively check the strength-t balance property");
  oa_verify->add_option("--file", oa_opt.file, "Array file")->required();
  oa_verify->add_option("--s", oa_opt.s, "Levels")->required();
  oa_verify->add_option("--t", oa_opt.t, "Strength")->required();
  oa_verify->add_flag("--transpose", oa_opt.transpose, "File stores the transpose");
  oa_verify->callback([&] {
    action = [&] {
      const auto arr = oa::parse(read_file(oa_opt.file), oa_opt.s, oa_opt.t, {.transpose = oa_opt.transpose});
      const auto rep = oa::verify(arr);
      out << "OA(" << arr.runs() << "," << arr.factors() << "," << arr.levels() << "," << arr.strength() << ") "
          << rep.describe() << "\n";
      if (!rep.ok) throw VerificationError(rep.describe());
    };
  });

  auto* oa_restrict = oa_cmd->add_subcommand("restrict", "Keep a subset of columns");
  oa_restrict->add_option("--file", oa_opt.file, "Array file");
  oa_restrict->add_option("--builtin", oa_opt.builtin, "oa16 | oa32");
  oa_restrict->add_option("--s", oa_opt.s, "Levels");
  oa_restrict->add_option("--t", oa_opt.t, "Strength");
  oa_restrict->add_flag("--transpose", oa_opt.transpose, "File stores the transpose");
  oa_restrict->add_option("--cols", oa_opt.cols, "1-based columns to keep")->required()->delimiter(',');
  oa_restrict->add_option("-o,--out", oa_opt.out, "Output file (default stdout)");
  oa_restrict->add_flag("--zero-based", oa_opt.zero_based, "Write symbols 0..s-1");
  oa_restrict->callback([&] {
    action = [&] {
      const auto arr = array_from_args(oa_opt.file, oa_opt.builtin, oa_opt.s, oa_opt.t, oa_opt.transpose);
      const auto r = oa::restrict_columns(arr, to_zero_based(oa_opt.cols));
      const auto rep = oa::verify(r);
      emit(oa_opt.out, oa::to_text(r, oa_opt.zero_based), out);
      out << "OA(" << r.runs() << "," << r.factors() << "," << r.levels() << "," << r.strength() << ") "
          << rep.describe() << "\n";
      if (!rep.ok) throw VerificationError(rep.describe());
    };
  });

  // scheme -------------------------------------------------------------------
  auto* sc_cmd = app.add_subcommand("scheme", "Compile and transform control schemes");
  sc_cmd->require_subcommand(1);
  struct {
    std::string file, builtin, in, out, hamiltonian;
    unsigned s = 0, t = 0, d = 2;
    bool transpose = false, vform = false;
    std::vector<std::size_t> cols;
  } sc_opt;

  auto* sc_compile = sc_cmd->add_subcommand("compile", "Decoupling scheme from an orthogonal array");
  sc_compile->add_option("--file", sc_opt.file, "Array file");
  sc_compile->add_option("--builtin", sc_opt.builtin, "oa16 | oa32");
  sc_compile->add_option("--s", sc_opt.s, "Levels (= d^2)");
  sc_compile->add_option("--t", sc_opt.t, "Strength");
  sc_compile->add_flag("--transpose", sc_opt.transpose, "File stores the transpose");
  sc_compile->add_option("--d", sc_opt.d, "Qudit dimension");
  sc_compile->add_option("--cols", sc_opt.cols, "1-based columns to keep")->delimiter(',');
  sc_compile->add_option("-o,--out", sc_opt.out, "Output file (default stdout)");
  sc_compile->callback([&] {
    action = [&] {
      auto arr = array_from_args(sc_opt.file, sc_opt.builtin, sc_opt.s, sc_opt.t, sc_opt.transpose);
      if (!sc_opt.cols.empty()) arr = oa::restrict_columns(arr, to_zero_based(sc_opt.cols));
      emit(sc_opt.out, schemes::to_text(schemes::scheme_from_oa(arr, sc_opt.d)), out);
    };
  });

  auto add_in_out = [&](CLI::App* c) {
    c->add_option("--in", sc_opt.in, "Scheme file")->required();
    c->add_option("-o,--out", sc_opt.out, "Output file (default stdout)");
  };
  auto* sc_ctrl = sc_cmd->add_subcommand("controlize", "Lift every step to Lambda(U_j)");
  add_in_out(sc_ctrl);
  sc_ctrl->callback([&] {
    action = [&] {
      emit(sc_opt.out, schemes::to_text(schemes::controlize(schemes::from_text(read_file(sc_opt.in)))), out);
    };
  });
  auto* sc_rev = sc_cmd->add_subcommand("reverse", "Time-reversal scheme from a decoupling scheme");
  add_in_out(sc_rev);
  sc_rev->callback([&] {
    action = [&] {
      emit(sc_opt.out, schemes::to_text(schemes::derive_time_reversal(schemes::from_text(read_file(sc_opt.in)))), out);
    };
  });
  auto* sc_export = sc_cmd->add_subcommand("export", "Rewrite a scheme; --vform lists V_1..V_{N+1}; "
                                                     "--hamiltonian prints the average Hamiltonian");
  add_in_out(sc_export);
  sc_export->add_flag("--vform", sc_opt.vform, "Emit the control operations V_j instead of U_j");
  sc_export->add_option("--hamiltonian", sc_opt.hamiltonian, "Hamiltonian file to average");
  sc_export->callback([&] {
    action = [&] {
      const auto s = schemes::from_text(read_file(sc_opt.in));
      std::ostringstream os;
      if (sc_opt.vform) {
        os << "vform N=" << s.size() + 1 << " n=" << s.qudits() << " d=" << s.dim() << "\n";
        for (const auto& v : schemes::us_to_vs(s)) os << v.to_string() << "\n";
      } else {
        os << schemes::to_text(s);
      }
      if (!sc_opt.hamiltonian.empty()) {
        const auto h = hamiltonian::from_text(read_file(sc_opt.hamiltonian));
        const auto avg = schemes::average_hamiltonian(s, h);
        os << "# average Hamiltonian: " << avg.terms().size() << " terms\n" << hamiltonian::to_text(avg);
      }
      emit(sc_opt.out, os.str(), out);
    };
  });
  auto* sc_w = sc_cmd->add_subcommand("weights", "Weights of the control operations V_j");
  sc_w->add_option("--in", sc_opt.in, "Scheme file")->required();
  sc_w->callback([&] {
    action = [&] {
      const auto rep = schemes::weight_report(schemes::from_text(read_file(sc_opt.in)));
      out << "weights";
      for (auto w : rep.weights) out << ' ' << w;
      out << "\nmax " << rep.max << "\nmean " << rep.mean << "\n";
    };
  });

  // bench --------------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Dense benchmarks driven by a JSON config");
  bench->require_subcommand(1);
  struct {
    std::string config, out, manifest;
    bool timing = false;
  } bopt;
  auto bench_opts = [&](CLI::App* c) {
    c->add_option("--config", bopt.config, "JSON config")->required();
    c->add_option("-o,--out", bopt.out, "CSV output (default stdout)");
    c->add_option("--manifest", bopt.manifest, "Manifest JSON (default: <out>.manifest.json)");
    c->add_flag("--timing", bopt.timing, "Record wall time in the seconds column");
  };
  auto run_bench = [&](const std::string& kind) {
    auto lc = load_config(bopt.config);
    auto& cfg = lc.cfg;
    cfg.record_timing = bopt.timing;
    if (kind == "decouple" && cfg.blocks.empty()) throw InvalidArgument("config has an empty block list");
    if (kind == "controlize" && cfg.trotter_steps.empty()) throw InvalidArgument("config has an empty trotter_steps list");
    if (cfg.variants.empty()) throw InvalidArgument("config lists no variants");
    const auto t0 = std::chrono::steady_clock::now();
    const auto h = protocols::build_hamiltonian(cfg.hamiltonian, lc.hamiltonian_text);
    const auto arr = protocols::build_array(cfg.scheme, h.qudits(), lc.array_text);
    const auto scheme = schemes::scheme_from_oa(arr, h.dim());
    const auto rows = kind == "decouple" ? protocols::run_decoupling_experiment(cfg, h, scheme)
                                         : protocols::run_controlization_experiment(cfg, h, scheme);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream csv;
    protocols::write_csv(csv, rows);
    emit(bopt.out, csv.str(), out);
    std::string mpath = bopt.manifest;
    if (mpath.empty() && !bopt.out.empty() && bopt.out != "-") mpath = bopt.out + ".manifest.json";
    if (!mpath.empty())
      write_file(mpath, manifest_text({"bench " + kind, config_to_json(cfg), cfg.master_seed, rows.size(), secs,
                                       bopt.timing}));
  };
  auto* b_dec = bench->add_subcommand("decouple", "Trace-distance benchmark of decoupling variants");
  bench_opts(b_dec);
  b_dec->callback([&] { action = [&] { run_bench("decouple"); }; });
  auto* b_ctl = bench->add_subcommand("controlize", "Operator error of Lambda(D) controlization vs Trotter steps");
  bench_opts(b_ctl);
  b_ctl->callback([&] { action = [&] { run_bench("controlize"); }; });

  // color --------------------------------------------------------------------
  auto* color = app.add_subcommand("color", "Greedy coloring of a Hamiltonian's interaction graph");
  struct {
    std::string hamiltonian, lattice;
    std::size_t chain = 0, complete = 0, random_sparse = 0, terms = 40;
    std::uint64_t seed = 1;
  } copt;
  color->add_option("--hamiltonian", copt.hamiltonian, "Hamiltonian file");
  color->add_option("--lattice", copt.lattice, "Square lattice LXxLY, e.g. 10x10");
  color->add_option("--chain", copt.chain, "Nearest-neighbor chain on n qudits");
  color->add_option("--complete", copt.complete, "Complete graph on n qudits");
  color->add_option("--random-sparse", copt.random_sparse, "Random sparse 2-local instance on n qubits");
  color->add_option("--terms", copt.terms, "Term count for --random-sparse");
  color->add_option("--seed", copt.seed, "Seed for --random-sparse");
  color->callback([&] {
    action = [&] {
      const int given = !copt.hamiltonian.empty() + !copt.lattice.empty() + (copt.chain > 0) + (copt.complete > 0) +
                        (copt.random_sparse > 0);
      if (given != 1) throw InvalidArgument("give exactly one of --hamiltonian, --lattice, --chain, --complete, --random-sparse");
      hamiltonian::InteractionGraph g;
      if (!copt.hamiltonian.empty()) {
        g = hamiltonian::interaction_graph(hamiltonian::from_text(read_file(copt.hamiltonian)));
      } else if (!copt.lattice.empty()) {
        const auto x = copt.lattice.find('x');
        std::size_t lx = 0, ly = 0;
        try {
          if (x == std::string::npos) throw std::invalid_argument("");
          lx = std::stoul(copt.lattice.substr(0, x));
          ly = std::stoul(copt.lattice.substr(x + 1));
        } catch (const std::exception&) {
          throw InvalidArgument("--lattice expects LXxLY, got '" + copt.lattice + "'");
        }
        g = hamiltonian::InteractionGraph::from_edges(lx * ly, hamiltonian::grid_edges(lx, ly));
      } else if (copt.chain > 0) {
        g = hamiltonian::InteractionGraph::from_edges(copt.chain, hamiltonian::chain_edges(copt.chain));
      } else if (copt.complete > 0) {
        g = hamiltonian::InteractionGraph::from_edges(copt.complete, hamiltonian::complete_edges(copt.complete));
      } else {
        g = hamiltonian::interaction_graph(hamiltonian::random_sparse(copt.random_sparse, copt.terms, copt.seed));
      }
      const auto c = hamiltonian::greedy_coloring(g);
      out << format_coloring(c, hamiltonian::is_proper(g, c));
    };
  });

  // estimate -----------------------------------------------------------------
  auto* est = app.add_subcommand("estimate", "Trotter steps and controlled-Pauli count for controlization");
  struct {
    std::size_t runs = 0;
    double t = 1.0, norm = 0.0, eps = 0.0, c1 = 1.0, c2 = 1.0;
    std::string order = "first", hamiltonian;
  } eopt;
  est->add_option("--runs", eopt.runs, "Array runs N")->required();
  est->add_option("--t", eopt.t, "Evolution time");
  est->add_option("--norm", eopt.norm, "Spectral norm of H");
  est->add_option("--hamiltonian", eopt.hamiltonian, "Hamiltonian file (norm computed)");
  est->add_option("--eps", eopt.eps, "Target operator error")->required();
  est->add_option("--order", eopt.order, "first | second");
  est->add_option("--c1", eopt.c1, "First-order constant");
  est->add_option("--c2", eopt.c2, "Second-order constant");
  est->callback([&] {
    action = [&] {
      double norm = eopt.norm;
      if (!eopt.hamiltonian.empty()) norm = hamiltonian::spectral_norm(hamiltonian::from_text(read_file(eopt.hamiltonian)));
      const auto order = protocols::order_from_string(eopt.order);
      const auto r = protocols::estimate_resources(eopt.runs, eopt.t, norm, eopt.eps, order, eopt.c1, eopt.c2);
      out << "order " << eopt.order << "\nnorm " << std::setprecision(12) << norm << "\ntrotter_steps "
          << r.trotter_steps << "\ncontrolled_paulis " << r.controlled_paulis << "\n";
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    action();
    return kOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace oactrl::cli
