// Command line front end: solve, run, simulate, bounds, verify, play.
//
// Exit codes: 0 success, 1 invariant violation or runtime failure, 2 memo
// capacity exceeded, 64 usage error.

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ozg/analysis.hpp"
#include "ozg/io.hpp"
#include "ozg/solver.hpp"
#include "ozg/strategy.hpp"

namespace {

using namespace ozg;

std::size_t env_memo_limit() {
  const char* env = std::getenv("OZG_MEMO_LIMIT");
  if (!env || !*env) return kDefaultMemoLimit;
  std::size_t v = 0;
  const char* end = env + std::strlen(env);
  auto [p, ec] = std::from_chars(env, end, v);
  if (ec != std::errc{} || p != end || v == 0) {
    throw std::domain_error("OZG_MEMO_LIMIT must be a positive integer");
  }
  return v;
}

// Owns the optional output file; falls back to stdout.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

SwitchTieBreak parse_tie(const std::string& s) {
  return s == "rightmost" ? SwitchTieBreak::Rightmost : SwitchTieBreak::Leftmost;
}

// Deliberately corrupted policy: picks the first legal position but reports a
// move kind that cannot match there (the five pair patterns are mutually
// exclusive), so the engine's transition validation must reject it.
class FaultyPolicy final : public Policy {
 public:
  std::optional<Move> next(const GameState& s) override {
    auto ms = legal_moves(s);
    if (ms.empty()) return std::nullopt;
    Move m = ms.front();
    m.kind = m.kind == MoveKind::Merge ? MoveKind::Switch : MoveKind::Merge;
    return m;
  }
  std::string_view name() const override { return "faulty"; }
};

int cmd_solve(std::int64_t n, std::size_t memo_limit, bool no_pv, const std::string& out) {
  SolveOptions opts;
  opts.memo_limit = memo_limit;
  opts.want_pv = !no_pv;
  const SolveResult r = solve_n(n, opts);
  OutStream os(out);
  os.get() << solve_result_json(r) << "\n";
  return 0;
}

int cmd_run(std::int64_t n, const std::string& policy, std::uint64_t seed,
            SwitchTieBreak tie, bool trace, const std::string& out) {
  OutStream wrap(out);
  std::ostream& os = wrap.get();

  if (trace) {
    // Human-readable: one line per move, then a summary. Output is
    // proportional to game size, so this is meant for small boards.
    std::int64_t i = 0;
    auto line = [&](const Move& m, const GameState& s, std::int64_t f) {
      os << '#' << ++i << ' ' << move_code(m.kind) << '@' << m.pos << " f=" << f << ' '
         << s.render_compact() << '\n';
    };
    GameRecord rec;
    if (policy == "shortest") {
      rec = shortest_game(n);
      GameState s = GameState::initial(n);
      for (const Move& m : rec.moves) {
        s = apply_move(s, m);
        line(m, s, monovariant(s));
      }
    } else {
      RunOptions opts;
      opts.record_moves = false;
      opts.on_move = line;
      LgsPolicy lgs(tie);
      RandomPolicy rnd(seed);
      Policy& p = policy == "random" ? static_cast<Policy&>(rnd) : lgs;
      rec = run_game(n, p, opts);
    }
    os << "length=" << rec.length << " merges=" << rec.merges() << " final="
       << rec.final_state->render_compact() << '\n';
    return 0;
  }

  if (policy == "shortest") {
    const GameRecord rec = shortest_game(n);
    write_record_json(os, rec);
    os << '\n';
    return 0;
  }

  // Stream the move list straight into the record so long games never hold
  // their full history in memory.
  bool first = true;
  auto emit = [&](const Move& m) {
    if (!first) os << ',';
    first = false;
    os << move_token_json(m);
  };

  GameRecord rec;
  if (policy == "lgs") {
    write_record_prefix(os, n, "lgs", 0);
    LgsRunOptions opts;
    opts.tie_break = tie;
    opts.on_move = emit;
    rec = run_lgs(n, opts);
  } else {
    write_record_prefix(os, n, "random", seed);
    RunOptions opts;
    opts.record_moves = false;
    opts.full_validation = false;
    opts.on_move = [&](const Move& m, const GameState&, std::int64_t) { emit(m); };
    RandomPolicy p(seed);
    rec = run_game(n, p, opts);
  }
  write_record_suffix(os, rec.length, rec.final_state);
  os << '\n';
  return 0;
}

int cmd_simulate(std::int64_t n, std::int64_t trials, std::uint64_t seed, int threads,
                 const std::string& out) {
  const Histogram h = simulate_random(n, trials, seed, threads);
  LogNormalFit fit{};  // n = 1 games have length 0: no log-scale, fit stays zero
  if (n >= 2 && trials > 0) fit = fit_lognormal(h);

  std::ofstream csv(out);
  if (!csv) throw std::runtime_error("cannot open output file: " + out);
  write_histogram_csv(csv, h);

  const std::string sidecar_path = out + ".json";
  std::ofstream sidecar(sidecar_path);
  if (!sidecar) throw std::runtime_error("cannot open output file: " + sidecar_path);
  sidecar << histogram_sidecar_json(h, fit) << "\n";

  std::cout << "n=" << h.n << " trials=" << h.trials << " seed=" << h.seed
            << " p1_wins=" << h.p1_wins << " mu=" << format_double(fit.mu)
            << " sigma=" << format_double(fit.sigma) << " ks=" << format_double(fit.ks_distance)
            << "\n";
  return 0;
}

int cmd_bounds_single(std::int64_t n, const std::string& out) {
  const BoundsReport r = bounds_report(n);
  nlohmann::json j;
  j["n"] = r.n;
  j["shortest"] = r.shortest;
  j["upper"] = r.upper;
  j["c_n"] = r.c_n;
  j["lower_leading"] = r.lower_leading;
  j["refined_upper_leading"] = r.refined_upper_leading;
  j["lgs_length"] = r.lgs_length;
  j["ratio"] = r.ratio;
  OutStream os(out);
  os.get() << j.dump() << "\n";
  return 0;
}

int cmd_bounds_series(std::int64_t n_min, std::int64_t n_max, std::int64_t step, int threads,
                      const std::string& out) {
  if (n_min < 2 || n_max < n_min || step < 1) {
    throw std::domain_error("bounds: need 2 <= n-min <= n-max and step >= 1");
  }
  std::vector<std::int64_t> ns;
  for (std::int64_t n = n_min; n <= n_max; n += step) ns.push_back(n);
  const auto series = ratio_series(ns, threads);
  OutStream os(out);
  write_ratio_csv(os.get(), series);
  return 0;
}

int cmd_verify(std::int64_t n_max, std::int64_t per_n, std::uint64_t seed,
               std::int64_t lemma_n_max, bool inject_fault) {
  if (inject_fault) {
    FaultyPolicy bad;
    run_game(8, bad);  // must throw before reaching here
    std::cerr << "fault injection was not detected\n";
    return 1;
  }

  std::int64_t games = 0;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    for (std::int64_t t = 0; t < per_n; ++t) {
      auto rng = make_stream(seed, static_cast<std::uint64_t>(games++));
      RandomPolicy p(rng());
      RunOptions opts;
      opts.record_moves = false;
      run_game(n, p, opts);  // full per-move validation; throws on violation
    }
  }
  std::cout << "transitions: " << games << " random games, n in [2," << n_max << "]: OK\n";

  std::int64_t checkpoints = 0;
  std::int64_t violations = 0;
  for (std::int64_t n = 2; n <= lemma_n_max; ++n) {
    const LemmaCheckpointReport rep = lemma_checker(n);
    checkpoints += rep.checkpoints_examined;
    violations += static_cast<std::int64_t>(rep.violations.size());
    for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i) {
      const auto& v = rep.violations[i];
      std::cerr << "lemma violation at n=" << n << " move " << v.move_number << " state "
                << v.state << ": " << v.reason << "\n";
    }
  }
  std::cout << "checkpoint walk: n in [2," << lemma_n_max << "], " << checkpoints
            << " checkpoints, " << violations << " violations"
            << (violations == 0 ? ": OK" : "") << "\n";
  return violations == 0 ? 0 : 1;
}

int cmd_play(std::int64_t n, const std::string& opponent, bool engine_first, std::uint64_t seed,
             std::size_t memo_limit) {
  GameState s = GameState::initial(n);
  MemoTable memo(memo_limit);
  LgsPolicy lgs;
  RandomPolicy rnd(seed);
  bool human_turn = !engine_first;
  std::int64_t total = 0;

  std::cout << "board: " << s.render_compact() << "\n";
  for (;;) {
    const auto ms = legal_moves(s);
    if (ms.empty()) break;

    Move chosen{};
    if (human_turn) {
      for (std::size_t i = 0; i < ms.size(); ++i) {
        std::cout << "  " << i + 1 << ") " << move_name(ms[i].kind) << " at " << ms[i].pos << "\n";
      }
      for (;;) {
        std::cout << "move> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) {
          std::cout << "\nresigned after " << total << " moves\n";
          return 0;
        }
        std::size_t pick = 0;
        const char* end = line.data() + line.size();
        auto [p, ec] = std::from_chars(line.data(), end, pick);
        if (ec == std::errc{} && p == end && pick >= 1 && pick <= ms.size()) {
          chosen = ms[pick - 1];
          break;
        }
        std::cout << "enter a number between 1 and " << ms.size() << "\n";
      }
    } else {
      std::optional<Move> m;
      if (opponent == "optimal") {
        m = best_move(s, memo);
      } else if (opponent == "lgs") {
        m = lgs.next(s);
      } else {
        m = rnd.next(s);
      }
      chosen = *m;
      std::cout << "engine: " << move_name(chosen.kind) << " at " << chosen.pos << "\n";
    }

    s = apply_move(s, chosen);
    ++total;
    std::cout << "board: " << s.render_compact() << "\n";
    human_turn = !human_turn;
  }

  // Last mover wins; the first mover made moves 1, 3, 5, ...
  const bool first_mover_won = total % 2 == 1;
  const bool human_moved_first = !engine_first;
  const bool human_won = first_mover_won == human_moved_first;
  std::cout << "game over after " << total << " moves: " << (human_won ? "you win" : "engine wins")
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordered Zeckendorf game: engine, solver, and simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ozg 0.1.0");

  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::size_t memo_limit = 0;
  std::string out;
  int threads = 0;

  auto* solve = app.add_subcommand("solve", "Decide the winner under optimal play");
  solve->add_option("--n", n, "board size (number of starting ones)")->required();
  auto* solve_memo = solve->add_option("--memo-limit", memo_limit,
                                       "max memo entries (default: OZG_MEMO_LIMIT or 2^27)");
  bool no_pv = false;
  solve->add_flag("--no-pv", no_pv, "skip the principal variation");
  solve->add_option("--out", out, "write JSON here instead of stdout");

  auto* run = app.add_subcommand("run", "Play one full game and record it");
  run->add_option("--n", n, "board size")->required();
  std::string policy = "lgs";
  run->add_option("--policy", policy, "move policy")
      ->check(CLI::IsMember({"lgs", "random", "shortest"}));
  run->add_option("--seed", seed, "seed for --policy random");
  std::string tie = "leftmost";
  run->add_option("--switch-tie", tie, "which switch to prefer when several are legal")
      ->check(CLI::IsMember({"leftmost", "rightmost"}));
  bool trace = false;
  run->add_flag("--trace", trace, "print one line per move instead of JSON");
  run->add_option("--out", out, "write here instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "Random playouts, length histogram, fit");
  simulate->add_option("--n", n, "board size")->required();
  std::int64_t trials = 0;
  simulate->add_option("--trials", trials, "number of games")->required();
  simulate->add_option("--seed", seed, "master seed (per-trial streams derive from it)");
  simulate->add_option("--threads", threads, "worker threads (0 = hardware)");
  simulate->add_option("--out", out, "histogram CSV path; metadata goes to <out>.json")
      ->required();

  auto* bounds = app.add_subcommand("bounds", "Length bounds and the LGS ratio");
  auto* bounds_n = bounds->add_option("--n", n, "single-n report (JSON)");
  std::int64_t n_min = 500, n_max_opt = 5000, step = 500;
  bounds->add_option("--n-min", n_min, "series start (CSV mode)");
  bounds->add_option("--n-max", n_max_opt, "series end");
  bounds->add_option("--step", step, "series stride");
  bounds->add_option("--threads", threads, "worker threads (0 = hardware)");
  bounds->add_option("--out", out, "write here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Replay validation and checkpoint lemma walk");
  std::int64_t verify_n_max = 60, per_n = 20, lemma_n_max = 200;
  verify->add_option("--n-max", verify_n_max, "validate random games for n up to this");
  verify->add_option("--per-n", per_n, "random games per n");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--lemma-n-max", lemma_n_max, "walk checkpoints for n up to this");
  bool inject_fault = false;
  verify->add_flag("--inject-fault", inject_fault)->group("");  // hidden: self-test hook

  auto* play = app.add_subcommand("play", "Interactive game against the engine");
  play->add_option("--n", n, "board size")->required();
  std::string opponent = "optimal";
  play->add_option("--opponent", opponent, "engine policy")
      ->check(CLI::IsMember({"optimal", "lgs", "random"}));
  bool engine_first = false;
  play->add_flag("--engine-first", engine_first, "engine moves first (you play second)");
  play->add_option("--seed", seed, "seed for --opponent random");
  auto* play_memo = play->add_option("--memo-limit", memo_limit,
                                     "max memo entries for --opponent optimal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (solve->parsed()) {
      if (!*solve_memo) memo_limit = env_memo_limit();
      return cmd_solve(n, memo_limit, no_pv, out);
    }
    if (run->parsed()) return cmd_run(n, policy, seed, parse_tie(tie), trace, out);
    if (simulate->parsed()) return cmd_simulate(n, trials, seed, threads, out);
    if (bounds->parsed()) {
      if (*bounds_n) return cmd_bounds_single(n, out);
      return cmd_bounds_series(n_min, n_max_opt, step, threads, out);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_n_max, per_n, seed, lemma_n_max, inject_fault);
    }
    if (play->parsed()) {
      if (!*play_memo) memo_limit = env_memo_limit();
      return cmd_play(n, opponent, engine_first, seed, memo_limit);
    }
  } catch (const ozg::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ozg::TransitionError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const std::length_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
