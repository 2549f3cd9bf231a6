// Copyright 2026 The rmplus Authors.
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

#include "cli.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rmplus/efg_io.h"
#include "rmplus/game_io.h"
#include "rmplus/harness.h"

namespace rmplus::tools {

namespace {

struct RunOptions {
  std::string algo;
  std::string eta = "auto";
  std::optional<double> r0;
  std::string avg = "linear";
  bool alt = false;
  bool no_alt = false;
  long iters = 1000;
  std::uint64_t seed = 0;
  std::string game;
  std::string out = "-";
  long skip = 0;
  std::string eps_schedule = "inv-t2";
  long kmax = 1000;
};

void add_solver_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--algo", o.algo, "rm+ | prm+ | stable-prm+ | smooth-prm+ | "
                                    "conceptual-rm+ | exrm+ | predictive-cfr | clairvoyant-cfr")
      ->required();
  cmd->add_option("--r0", o.r0, "initial aggregate level R0");
  cmd->add_option("--avg", o.avg, "uniform | linear")->check(CLI::IsMember({"uniform", "linear"}));
  cmd->add_flag("--alt", o.alt, "force alternation");
  cmd->add_flag("--no-alt", o.no_alt, "disable alternation");
  cmd->add_option("--iters", o.iters, "number of iterations T");
  cmd->add_option("--seed", o.seed, "seed for random games");
  cmd->add_option("--game", o.game, "game name or file")->required();
  cmd->add_option("--skip", o.skip, "leading iterations left out of the trace");
  cmd->add_option("--eps-schedule", o.eps_schedule, "inv-t2 | exact | const:<v>");
  cmd->add_option("--kmax", o.kmax, "fixed-point iteration cap");
}

SolverConfig make_config(const RunOptions& o, const std::string& eta) {
  SolverConfig c;
  const auto algo = parse_algorithm(o.algo);
  if (!algo) throw ConfigError("unknown algorithm '" + o.algo + "'");
  c.algorithm = *algo;
  if (eta != "auto") {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(eta, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != eta.size()) throw ConfigError("bad --eta '" + eta + "'");
    c.eta = v;
  }
  c.r0 = o.r0;
  c.averaging = o.avg == "uniform" ? Averaging::kUniform : Averaging::kLinear;
  if (o.alt && o.no_alt) throw ConfigError("--alt and --no-alt are exclusive");
  if (o.alt) c.alternation = true;
  if (o.no_alt) c.alternation = false;
  c.iterations = o.iters;
  c.seed = o.seed;
  c.report_skip = o.skip;
  c.eps = EpsSchedule::parse(o.eps_schedule);
  c.k_max = o.kmax;
  return c;
}

RunTrace run_any(const SolverConfig& c, const AnyGame& game) {
  if (const auto* g = std::get_if<GameSpec>(&game)) return run(c, *g);
  return run(c, std::get<GameTree>(game));
}

template <class Writer>
void emit(const std::string& path, std::ostream& out, Writer write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  const std::filesystem::path p(output_path(path));
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p);
  if (!file) throw ConfigError("cannot write " + p.string());
  write(file);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int do_run(const RunOptions& o, std::ostream& out) {
  const SolverConfig c = make_config(o, o.eta);
  const AnyGame game = resolve_game(o.game, c.seed);
  RunTrace trace = run_any(c, game);
  trace.header.emplace_back("game_spec", o.game);
  emit(o.out, out, [&](std::ostream& s) { write_csv(trace, s); });
  return kOk;
}

struct SweepOptions {
  RunOptions base;
  std::string etas = "0.1,1,10";
  std::string seeds = "0";
  std::string out_dir = "sweep";
  unsigned jobs = 1;
};

int do_sweep(const SweepOptions& o, std::ostream& out) {
  struct Cell {
    std::string eta;
    std::uint64_t seed;
    std::string file;
    double final_gap = 0.0;
    double worst_regret = 0.0;
    int status = kOk;
    std::string error;
  };
  std::vector<Cell> cells;
  for (const auto& eta : split_list(o.etas)) {
    for (const auto& s : split_list(o.seeds)) {
      Cell cell;
      cell.eta = eta;
      try {
        cell.seed = std::stoull(s);
      } catch (const std::exception&) {
        throw ConfigError("bad seed '" + s + "'");
      }
      cell.file = fmt::format("{}_eta{}_seed{}.csv", o.base.algo, eta, cell.seed);
      cells.push_back(std::move(cell));
    }
  }
  if (cells.empty()) throw ConfigError("empty sweep");
  // Validate every configuration before starting any work.
  for (const Cell& cell : cells) {
    RunOptions ro = o.base;
    ro.seed = cell.seed;
    (void)make_config(ro, cell.eta);
  }
  const std::filesystem::path dir(output_path(o.out_dir));
  std::filesystem::create_directories(dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      Cell& cell = cells[k];
      try {
        RunOptions ro = o.base;
        ro.seed = cell.seed;
        const SolverConfig c = make_config(ro, cell.eta);
        RunTrace trace = run_any(c, resolve_game(o.base.game, cell.seed));
        trace.header.emplace_back("game_spec", o.base.game);
        std::ofstream file(dir / cell.file);
        write_csv(trace, file);
        cell.final_gap = trace.final_gap;
        cell.worst_regret = *std::max_element(trace.final_regrets.begin(),
                                              trace.final_regrets.end());
      } catch (const NumericalError& e) {
        cell.status = kNumericalError;
        cell.error = fmt::format("iteration {}: {}", e.iteration(), e.what());
      } catch (const ConfigError& e) {
        cell.status = kConfigError;
        cell.error = e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, cells.size()));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ofstream summary(dir / "summary.csv");
  summary << "algo,eta,seed,final_gap,max_final_regret,status,file\n";
  int status = kOk;
  for (const Cell& cell : cells) {
    summary << fmt::format("{},{},{},{:.17g},{:.17g},{},{}\n", o.base.algo, cell.eta,
                           cell.seed, cell.final_gap, cell.worst_regret, cell.status,
                           cell.file);
    if (cell.status != kOk) {
      out << fmt::format("eta={} seed={} failed: {}\n", cell.eta, cell.seed, cell.error);
      status = std::max(status, cell.status);
    }
  }
  out << fmt::format("wrote {} runs to {}\n", cells.size(), dir.string());
  return status;
}

struct CounterexampleOptions {
  std::string variant = "rm+";
  long iters = 40;
  bool scaled = false;
  bool exact = false;
  std::string out = "-";
};

int do_counterexample(const CounterexampleOptions& o, std::ostream& out) {
  InstabilityVariant v;
  if (o.variant == "rm+") {
    v = InstabilityVariant::kRmPlus;
  } else if (o.variant == "prm+") {
    v = InstabilityVariant::kPrmPlus;
  } else {
    throw ConfigError("--variant must be rm+ or prm+");
  }
  if (o.iters < 1) throw ConfigError("--iters must be >= 1");
  emit(o.out, out, [&](std::ostream& s) {
    s << "# variant=" << o.variant << '\n'
      << "# scaled=" << (o.scaled ? 1 : 0) << '\n'
      << "# arithmetic=" << (o.exact ? "rational" : "double") << '\n';
    if (o.exact) {
      s << "t,loss,x1,x2,r1,r2\n";
      for (const auto& row : exact_instability_replay(o.iters, v, o.scaled)) {
        s << row.t << ',' << row.loss << ',' << row.x[0] << ',' << row.x[1] << ','
          << row.r_next[0] << ',' << row.r_next[1] << '\n';
      }
      return;
    }
    const LossSequence seq = instability_losses(o.iters, v, o.scaled);
    const InstabilityReplay replay = replay_instability(seq);
    s << "# scale=" << fmt::format("{:.17g}", seq.scale) << '\n';
    s << "t,loss,x1,x2,r1,r2\n";
    for (std::size_t k = 0; k < seq.losses.size(); ++k) {
      s << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", k + 1,
                       seq.losses[k][0], replay.strategies[k][0], replay.strategies[k][1],
                       replay.aggregates[k][0], replay.aggregates[k][1]);
    }
  });
  return kOk;
}

int do_gen(const std::string& spec, std::uint64_t seed, const std::string& path,
           std::ostream& out) {
  const AnyGame game = resolve_game(spec, seed);
  emit(path, out, [&](std::ostream& s) {
    if (const auto* g = std::get_if<GameSpec>(&game)) {
      s << "# " << spec << '\n' << game_to_text(*g);
    } else {
      s << "# " << spec << '\n' << tree_to_text(std::get<GameTree>(game));
    }
  });
  return kOk;
}

struct RateOptions {
  std::string trace;
  long from = 0;
  long to = 0;
  std::string column = "gap";
  std::size_t player = 0;
};

int do_rate(const RateOptions& o, std::ostream& out) {
  std::ifstream file(o.trace);
  if (!file) throw ConfigError("cannot open trace " + o.trace);
  CsvTrace trace;
  try {
    trace = read_csv(file);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::vector<std::pair<long, double>> series;
  for (const TraceRow& r : trace.rows) {
    if (r.player != o.player) continue;
    const double v = o.column == "gap"          ? r.gap
                     : o.column == "regret_max" ? r.regret_max
                     : o.column == "iter_var"   ? r.iter_var
                                                : r.fp_residual;
    series.emplace_back(r.t, v);
  }
  if (series.empty()) throw ConfigError("trace has no rows for that player");
  const long lo = o.from > 0 ? o.from : series.front().first;
  const long hi = o.to > 0 ? o.to : series.back().first;
  double slope = 0.0;
  try {
    slope = rate_estimate(series, lo, hi);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  out << fmt::format("slope={:.6f} window=[{},{}] column={}\n", slope, lo, hi, o.column);
  return kOk;
}

}  // namespace

int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regret-matching solver experiments"};
  app.require_subcommand(1);
  app.allow_extras(false);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "run one solver on one game");
  add_solver_flags(run_cmd, run_opts);
  run_cmd->add_option("--eta", run_opts.eta, "step size or 'auto'");
  run_cmd->add_option("--out", run_opts.out, "CSV path, '-' for stdout");

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "cross product of step sizes and seeds");
  add_solver_flags(sweep_cmd, sweep_opts.base);
  sweep_cmd->add_option("--eta", sweep_opts.etas, "comma-separated step sizes ('auto' allowed)");
  sweep_cmd->add_option("--seeds", sweep_opts.seeds, "comma-separated seeds");
  sweep_cmd->add_option("--out", sweep_opts.out_dir, "output directory");
  sweep_cmd->add_option("--jobs", sweep_opts.jobs, "parallel runs");

  CounterexampleOptions ce_opts;
  auto* ce_cmd = app.add_subcommand("counterexample", "emit and replay the unstable loss sequences");
  ce_cmd->add_option("--variant", ce_opts.variant, "rm+ | prm+");
  ce_cmd->add_option("--iters", ce_opts.iters, "sequence length");
  ce_cmd->add_flag("--scaled", ce_opts.scaled, "divide losses by their largest magnitude");
  ce_cmd->add_flag("--exact", ce_opts.exact, "replay in rational arithmetic");
  ce_cmd->add_option("--out", ce_opts.out, "CSV path, '-' for stdout");

  std::string gen_game;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "-";
  auto* gen_cmd = app.add_subcommand("gen", "write a game file");
  gen_cmd->add_option("--game", gen_game, "game name")->required();
  gen_cmd->add_option("--seed", gen_seed, "seed for random games");
  gen_cmd->add_option("--out", gen_out, "file path, '-' for stdout");

  RateOptions rate_opts;
  auto* rate_cmd = app.add_subcommand("rate", "log-log slope over a trace window");
  rate_cmd->add_option("--trace", rate_opts.trace, "trace CSV")->required();
  rate_cmd->add_option("--from", rate_opts.from, "first iteration of the window");
  rate_cmd->add_option("--to", rate_opts.to, "last iteration of the window");
  rate_cmd->add_option("--column", rate_opts.column, "gap | regret_max | iter_var | fp_residual")
      ->check(CLI::IsMember({"gap", "regret_max", "iter_var", "fp_residual"}));
  rate_cmd->add_option("--player", rate_opts.player, "player index");

  std::vector<const char*> argv{"rmplus"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run_cmd) return do_run(run_opts, out);
    if (*sweep_cmd) return do_sweep(sweep_opts, out);
    if (*ce_cmd) return do_counterexample(ce_opts, out);
    if (*gen_cmd) return do_gen(gen_game, gen_seed, gen_out, out);
    if (*rate_cmd) return do_rate(rate_opts, out);
  } catch (const NumericalError& e) {
    err << fmt::format("numerical failure at iteration {}: {}\n", e.iteration(), e.what());
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kConfigError;
}

}  // namespace rmplus::tools
