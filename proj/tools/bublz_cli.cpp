// bublz: solve instances, validate triplets, generate campaigns, simulate
// policies, analyze trace logs, and serve the game.
//
// Exit codes: 0 success, 1 validation/analysis findings, 2 unreachable,
// 3 policy stall, 64 usage.

#include <algorithm>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bublz/analytics.hpp"
#include "bublz/json_io.hpp"
#include "bublz/level_design.hpp"
#include "bublz/policy.hpp"
#include "bublz/service.hpp"
#include "bublz/solver.hpp"

namespace {

using namespace bublz;

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUnreachableExit = 2;
constexpr int kStalled = 3;
constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ClickTriplet parse_triplet(const std::string& text) {
  ClickTriplet t;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> t.L >> c1 >> t.D >> c2 >> t.R) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
    throw UsageError("triplet must be L,D,R (got \"" + text + "\")");
  if (t.L < 1 || t.D < 1 || t.R < 1) throw UsageError("triplet components must be positive");
  return t;
}

std::string moves_text(const std::vector<MoveKind>& moves) {
  std::string out;
  for (MoveKind k : moves) {
    if (!out.empty()) out += ' ';
    out += to_string(k);
  }
  return out;
}

struct BoardArgs {
  Count min_count = 1;
  Count max_count = 150;
  Count lo = 2;
  Count hi = 70;

  BoardBounds bounds() const {
    BoardBounds b{min_count, max_count};
    try {
      validate(b);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return b;
  }
  TargetRange targets() const {
    TargetRange r{lo, hi};
    try {
      validate(r, bounds());
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return r;
  }
};

void add_board_flags(CLI::App* cmd, BoardArgs& a, bool with_targets) {
  cmd->add_option("--min", a.min_count, "Smallest legal bubble count")->capture_default_str();
  cmd->add_option("--max", a.max_count, "Largest legal bubble count")->capture_default_str();
  if (with_targets) {
    cmd->add_option("--lo", a.lo, "Smallest target")->capture_default_str();
    cmd->add_option("--hi", a.hi, "Largest target")->capture_default_str();
  }
}

// --- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string triplet;
  Count target = 0;
  Count start = 1;
  bool trace = false;
  bool compare = false;
  bool json = false;
  BoardArgs board;
};

int run_solve(const SolveArgs& a) {
  const ClickTriplet t = parse_triplet(a.triplet);
  const BoardBounds b = a.board.bounds();
  if (!b.contains(a.start) || !b.contains(a.target))
    throw UsageError("start and target must lie in [" + std::to_string(b.min_count) + ", " +
                     std::to_string(b.max_count) + "]");
  const auto seq = solve_sequence(t, b, a.start, a.target);
  std::optional<SolveResult> ilp;
  if (a.compare) ilp = solve_ilp(t, a.start, a.target, default_search_cap(b), b);

  if (a.json) {
    Json out{{"triplet", to_json(t)}, {"start", a.start}, {"target", a.target}};
    out["sequence"] = seq ? to_json(*seq) : Json(nullptr);
    if (a.compare) {
      out["ilp"] = ilp ? to_json(*ilp) : Json(nullptr);
      out["match"] = seq.has_value() == ilp.has_value() && (!seq || seq->n_min == ilp->n_min);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    if (seq) {
      std::cout << "n_min=" << seq->n_min << " x=" << seq->decomposition.x
                << " y=" << seq->decomposition.y << " z=" << seq->decomposition.z << "\n";
      if (a.trace) std::cout << "witness: " << moves_text(seq->witness) << "\n";
    } else {
      std::cout << "unreachable\n";
    }
    if (a.compare) {
      if (ilp)
        std::cout << "ilp: N=" << ilp->n_min << " x=" << ilp->decomposition.x
                  << " y=" << ilp->decomposition.y << " z=" << ilp->decomposition.z
                  << (ilp->order_feasible ? " order-feasible" : " order-infeasible") << "\n";
      else
        std::cout << "ilp: unreachable\n";
      const bool match = seq.has_value() == ilp.has_value() && (!seq || seq->n_min == ilp->n_min);
      std::cout << (match ? "match" : "mismatch") << "\n";
    }
  }
  return seq ? kOk : kUnreachableExit;
}

// --- table ----------------------------------------------------------------

struct TableArgs {
  std::string triplet;
  bool json = false;
  BoardArgs board;
};

int run_table(const TableArgs& a) {
  const ClickTriplet t = parse_triplet(a.triplet);
  const BoardBounds b = a.board.bounds();
  const TargetRange r = a.board.targets();
  Json rows = Json::array();
  if (!a.json) std::cout << std::setw(4) << "T" << std::setw(7) << "n_min" << "\n";
  bool all = true;
  for (Count target = r.lo; target <= r.hi; ++target) {
    const auto s = solve_sequence(t, b, b.min_count, target);
    all = all && s.has_value();
    if (a.json) {
      rows.push_back({{"target", target}, {"n_min", s ? Json(s->n_min) : Json(nullptr)}});
    } else {
      std::cout << std::setw(4) << target << std::setw(7)
                << (s ? std::to_string(s->n_min) : std::string("-")) << "\n";
    }
  }
  if (a.json) std::cout << Json{{"triplet", to_json(t)}, {"rows", rows}}.dump(2) << "\n";
  return all ? kOk : kFindings;
}

// --- validate -------------------------------------------------------------

struct ValidateArgs {
  std::string triplet;
  std::string campaign;
  bool json = false;
  BoardArgs board;
};

void print_report(const ValidityReport& r) {
  std::cout << "gcd: " << (r.gcd_ok ? "ok" : "fail") << ", bounded: "
            << (r.bounded_ok ? "ok" : "fail") << "\n";
  if (!r.unreachable_targets.empty()) {
    std::cout << "unreachable:";
    for (Count c : r.unreachable_targets) std::cout << ' ' << c;
    std::cout << "\n";
  }
  if (r.hardest_target)
    std::cout << "hardest: T=" << r.hardest_target->first << " n_min=" << r.hardest_target->second
              << "\n";
  if (!r.dead_ends.empty()) {
    std::cout << "dead ends:";
    for (Count c : r.dead_ends) std::cout << ' ' << c;
    std::cout << "\n";
  }
  if (!r.trap_states.empty()) {
    std::cout << "trap states:";
    for (Count c : r.trap_states) std::cout << ' ' << c;
    std::cout << "\n";
  }
}

int run_validate(const ValidateArgs& a) {
  if (a.triplet.empty() == a.campaign.empty())
    throw UsageError("validate needs exactly one of --triplet or --campaign");

  if (!a.campaign.empty()) {
    Campaign c;
    try {
      c = load_campaign_file(a.campaign);
    } catch (const FormatError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kFindings;
    }
    const auto problems = campaign_problems(c);
    if (a.json) {
      Json levels = Json::array();
      for (const auto& l : c.levels) {
        Json j = to_json(check_level(l));
        j["index"] = l.index;
        levels.push_back(std::move(j));
      }
      std::cout << Json{{"levels", levels}, {"problems", problems}}.dump(2) << "\n";
    } else {
      for (const auto& l : c.levels) {
        std::cout << "level " << l.index << " (" << l.triplet.L << "," << l.triplet.D << ","
                  << l.triplet.R << "): ";
        print_report(check_level(l));
      }
      for (const auto& p : problems) std::cout << "problem: " << p << "\n";
      std::cout << (problems.empty() ? "campaign: ok" : "campaign: fail") << "\n";
    }
    return problems.empty() ? kOk : kFindings;
  }

  const ClickTriplet t = parse_triplet(a.triplet);
  const BoardBounds b = a.board.bounds();
  const ValidityReport r = check_bounded_playability(t, b, b.min_count, a.board.targets());
  if (a.json)
    std::cout << to_json(r).dump(2) << "\n";
  else
    print_report(r);
  return r.gcd_ok && r.playable() ? kOk : kFindings;
}

// --- campaign -------------------------------------------------------------

struct CampaignArgs {
  std::uint64_t seed = 1;
  int levels = 6;
  std::string out;
  BoardArgs board;
};

int run_campaign(const CampaignArgs& a) {
  if (a.levels < 1) throw UsageError("--levels must be at least 1");
  const Campaign c = generate_campaign(a.seed, a.levels, a.board.bounds(), a.board.targets());
  const std::string text = serialize_campaign(c);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + a.out);
    f << text;
  }
  return kOk;
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string policy = "ideal";
  std::string triplet = "3,4,1";
  std::optional<Count> target;
  std::uint64_t seed = 0;
  int runs = 1;
  std::int64_t step_cap = 10000;
  std::string trace_log;
  BoardArgs board;
};

int run_simulate(const SimulateArgs& a) {
  const auto kind = parse_policy_kind(a.policy);
  if (!kind) throw UsageError("--policy must be ideal, random or greedy");
  if (a.runs < 1) throw UsageError("--runs must be at least 1");
  LevelSpec level;
  try {
    level = make_level(1, parse_triplet(a.triplet), a.board.bounds(), a.board.targets());
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (a.target && !level.targets.contains(*a.target))
    throw UsageError("--target outside the target range");

  std::vector<Count> targets;
  if (a.target)
    targets.push_back(*a.target);
  else
    for (Count t = level.targets.lo; t <= level.targets.hi; ++t) targets.push_back(t);

  std::ofstream log_file;
  if (!a.trace_log.empty()) {
    log_file.open(a.trace_log, std::ios::app | std::ios::binary);
    if (!log_file) throw std::runtime_error("cannot write " + a.trace_log);
  }
  std::ostream& lines = a.trace_log.empty() ? std::cout : log_file;
  std::ostream& summary = a.trace_log.empty() ? std::cerr : std::cout;

  // Stalled runs leave no trace; the rest of the cohort still runs so the
  // output does not depend on where the first stall happens.
  std::vector<TraceRecord> traces;
  std::uint64_t run_index = 0;
  int stalled = 0;
  for (Count target : targets) {
    for (int r = 0; r < a.runs; ++r, ++run_index) {
      const PolicySpec spec{*kind, derive_seed(a.seed, run_index), a.step_cap};
      try {
        const Session s = play(level, target, spec, "sim-" + std::to_string(run_index + 1));
        traces.push_back(to_trace(s));
        lines << serialize_trace(traces.back()) << "\n";
      } catch (const PolicyStalled& e) {
        std::cerr << "stalled: target " << target << " run " << r + 1 << ": " << e.what() << "\n";
        ++stalled;
      }
    }
  }

  double moves = 0, score_sum = 0;
  for (const auto& t : traces) {
    moves += static_cast<double>(t.moves.size());
    score_sum += static_cast<double>(t.score);
  }
  const Summary s = aggregate(traces, level.bounds, level.start_count);
  const double n = static_cast<double>(std::max<std::size_t>(traces.size(), 1));
  summary << "runs=" << traces.size() << " stalled=" << stalled << " mean_moves=" << moves / n
          << " mean_score=" << score_sum / n
          << " mean_efficiency=" << (s.empty() ? 0.0 : s.levels.front().mean_efficiency) << "\n";
  return stalled == 0 ? kOk : kStalled;
}

// --- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string path;
  bool per_move = false;
  bool json = false;
  BoardArgs board;
};

void print_summary_table(const Summary& s) {
  std::cout << std::left << std::setw(7) << "level" << std::right << std::setw(8) << "traces"
            << std::setw(10) << "mean_eff" << std::setw(10) << "med_eff" << std::setw(12)
            << "mean_regret" << std::setw(12) << "mean_moves" << std::setw(12) << "mean_score"
            << std::setw(14) << "mean_lat_ms" << std::setw(14) << "med_lat_ms" << "\n";
  std::cout << std::fixed << std::setprecision(4);
  for (const auto& l : s.levels)
    std::cout << std::left << std::setw(7) << l.level << std::right << std::setw(8) << l.traces
              << std::setw(10) << l.mean_efficiency << std::setw(10) << l.median_efficiency
              << std::setw(12) << l.mean_total_regret << std::setw(12) << l.mean_moves
              << std::setw(12) << l.mean_score << std::setw(14) << l.mean_move_latency_ms
              << std::setw(14) << l.median_move_latency_ms << "\n";
  std::cout.unsetf(std::ios::floatfield);
}

int run_analyze(const AnalyzeArgs& a) {
  std::ifstream in(a.path);
  if (!in) throw UsageError("cannot read " + a.path);
  const BoardBounds b = a.board.bounds();

  std::vector<TraceRecord> traces;
  Json profiles = Json::array();
  int skipped = 0;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      TraceRecord t = parse_trace(line);
      const RegretProfile p = regret_profile(t, b, b.min_count);
      if (a.per_move) {
        if (a.json) {
          Json j = to_json(p);
          j["session"] = t.session;
          profiles.push_back(std::move(j));
        } else {
          std::cout << "session " << t.session << " level " << t.level << " target " << t.target
                    << ": regret";
          for (auto r : p.per_move_regret) std::cout << ' ' << r;
          std::cout << " total=" << p.total_regret << " efficiency=" << p.efficiency.optimal << "/"
                    << p.efficiency.made << "\n";
        }
      }
      traces.push_back(std::move(t));
    } catch (const std::exception& e) {
      std::cerr << a.path << ":" << lineno << ": skipped: " << e.what() << "\n";
      ++skipped;
    }
  }
  const Summary s = aggregate(traces, b, b.min_count);
  if (a.json) {
    Json out = to_json(s);
    out["skipped"] = skipped;
    if (a.per_move) out["profiles"] = profiles;
    std::cout << out.dump(2) << "\n";
  } else {
    print_summary_table(s);
  }
  return skipped == 0 ? kOk : kFindings;
}

// --- serve ----------------------------------------------------------------

HttpServer* g_server = nullptr;

int run_serve(const ServerConfig& config) {
  std::unique_ptr<GameService> service;
  try {
    service = make_service(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFindings;
  }
  HttpServer server(*service, config);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  std::cerr << "serving " << service->campaign().levels.size() << " levels on " << config.host
            << ":" << (config.port == 0 ? std::string("<ephemeral>") : std::to_string(config.port))
            << "\n";
  server.run();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bubble-arithmetic game: solver, validator, simulator and server"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Minimum moves to reach a target");
  solve_cmd->add_option("--triplet", solve.triplet, "L,D,R")->required();
  solve_cmd->add_option("--target", solve.target, "Target bubble count")->required();
  solve_cmd->add_option("--start", solve.start, "Starting bubble count")->capture_default_str();
  solve_cmd->add_flag("--trace", solve.trace, "Print the witness move sequence");
  solve_cmd->add_flag("--compare", solve.compare, "Also run the unbounded integer formulation");
  solve_cmd->add_flag("--json", solve.json, "Machine-readable output");
  add_board_flags(solve_cmd, solve.board, false);

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "Minimum moves for every target in range");
  table_cmd->add_option("--triplet", table.triplet, "L,D,R")->required();
  table_cmd->add_flag("--json", table.json, "Machine-readable output");
  add_board_flags(table_cmd, table.board, true);

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "Check a triplet or a campaign file");
  validate_cmd->add_option("--triplet", validate_args.triplet, "L,D,R");
  validate_cmd->add_option("--campaign", validate_args.campaign, "Campaign JSON file");
  validate_cmd->add_flag("--json", validate_args.json, "Machine-readable output");
  add_board_flags(validate_cmd, validate_args.board, true);

  CampaignArgs campaign;
  auto* campaign_cmd = app.add_subcommand("campaign", "Generate a campaign file");
  campaign_cmd->add_option("--seed", campaign.seed, "RNG seed")->capture_default_str();
  campaign_cmd->add_option("--levels", campaign.levels, "Number of levels")->capture_default_str();
  campaign_cmd->add_option("--out", campaign.out, "Write to a file instead of stdout");
  add_board_flags(campaign_cmd, campaign.board, true);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Play sessions with an automated policy");
  sim_cmd->add_option("--policy", sim.policy, "ideal | random | greedy")->capture_default_str();
  sim_cmd->add_option("--triplet", sim.triplet, "L,D,R")->capture_default_str();
  sim_cmd->add_option("--target", sim.target, "Target (default: every target in range)");
  sim_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  sim_cmd->add_option("--runs", sim.runs, "Runs per target")->capture_default_str();
  sim_cmd->add_option("--max-steps", sim.step_cap, "Step cap per run")->capture_default_str();
  sim_cmd->add_option("--trace-log", sim.trace_log,
                      "Append trace lines here (summary then goes to stdout)");
  add_board_flags(sim_cmd, sim.board, true);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Regret and efficiency from a trace log");
  analyze_cmd->add_option("trace_log", analyze.path, "JSON Lines trace log")->required();
  analyze_cmd->add_flag("--per-move", analyze.per_move, "Print each trace's regret profile");
  analyze_cmd->add_flag("--json", analyze.json, "Machine-readable output");
  add_board_flags(analyze_cmd, analyze.board, false);

  ServerConfig serve;
  std::uint64_t serve_seed = 0;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP/JSON session server");
  serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Port (0 = ephemeral)")->capture_default_str();
  serve_cmd->add_option("--campaign", serve.campaign_path, "Campaign JSON file");
  serve_cmd->add_option("--trace-log", serve.trace_log_path, "Append completed sessions here");
  auto* seed_opt = serve_cmd->add_option("--seed", serve_seed, "Seed for target draws");
  serve_cmd->add_option("--static-dir", serve.static_dir, "Directory of built UI assets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*table_cmd) return run_table(table);
    if (*validate_cmd) return run_validate(validate_args);
    if (*campaign_cmd) return run_campaign(campaign);
    if (*sim_cmd) return run_simulate(sim);
    if (*analyze_cmd) return run_analyze(analyze);
    if (*serve_cmd) {
      if (*seed_opt) serve.seed = serve_seed;
      return run_serve(serve);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFindings;
  }
  return kUsage;
}
