// Acceptance checks for the full toolkit: nine claims about solver output,
// exact game lengths, invariants under random play, long-game structure, and
// statistical behaviour. Each criterion prints exactly one PASS/FAIL line
// (plus optional FINDING lines for the statistical tolerances) so failures
// name the claim that broke. Run with no arguments for all criteria or with
// a single number to run one.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ozg/analysis.hpp"
#include "ozg/io.hpp"
#include "ozg/solver.hpp"
#include "ozg/strategy.hpp"

using namespace ozg;

namespace {

bool report(int crit, bool pass, const std::string& what) {
  std::cout << (pass ? "PASS" : "FAIL") << " c" << crit << ": " << what << std::endl;
  return pass;
}

// c1: optimal-play winner is Player 1 for every n in [2,20] except n = 18.
bool criterion1() {
  std::ostringstream detail;
  bool ok = true;
  for (std::int64_t n = 2; n <= 20; ++n) {
    const auto r = solve_n(n);
    const Player want = n == 18 ? Player::Two : Player::One;
    if (r.winner != want) {
      ok = false;
      detail << " n=" << n << " got " << player_code(r.winner);
    }
  }
  return report(1, ok, "winner table n in [2,20]: P1 everywhere except P2 at n=18" + detail.str());
}

// c2: the scripted shortest game has exactly n - Z(n) moves for all n <= 2000.
bool criterion2() {
  for (std::int64_t n = 1; n <= 2000; ++n) {
    const auto rec = shortest_game(n);
    if (rec.length != n - z_count(n)) {
      return report(2, false,
                    "shortest game length mismatch at n=" + std::to_string(n) + ": got " +
                        std::to_string(rec.length));
    }
  }
  return report(2, true, "shortest_game(n).length == n - Z(n) for all n <= 2000");
}

// Shared sweep for c3 and c4: 100 seeded random playouts per n, full per-move
// validation. run_game itself throws on any violated invariant; the checks
// here restate the claims on the returned record.
struct SweepOutcome {
  std::int64_t games = 0;
  std::string failure;  // empty when everything held
};

SweepOutcome random_sweep(bool check_counts) {
  SweepOutcome out;
  constexpr std::uint64_t kMasterSeed = 2026;
  for (std::int64_t n = 2; n <= 60; ++n) {
    const auto zk = zeckendorf(n);
    const auto terminal = GameState::from_indices(zk);
    for (int t = 0; t < 100; ++t) {
      RandomPolicy policy(stream_seed(kMasterSeed, static_cast<std::uint64_t>(out.games)));
      RunOptions opts;
      opts.record_moves = false;
      try {
        const auto rec = run_game(n, policy, opts);
        ++out.games;
        if (!check_counts) {
          if (rec.final_state != terminal) {
            out.failure = "n=" + std::to_string(n) + " ended off the Zeckendorf board";
            return out;
          }
          if (rec.length > n * (n - 1) / 2) {
            out.failure = "n=" + std::to_string(n) + " exceeded n(n-1)/2 moves";
            return out;
          }
          if (monovariant(GameState::initial(n)) != n * (n + 1) / 2) {
            out.failure = "initial monovariant is not n(n+1)/2 at n=" + std::to_string(n);
            return out;
          }
        } else {
          if (rec.merges() != n - z_count(n)) {
            out.failure = "n=" + std::to_string(n) + " merge count " +
                          std::to_string(rec.merges()) + " != n - Z(n)";
            return out;
          }
          if (rec.non_switch_moves() > 3 * n + 1) {
            out.failure = "n=" + std::to_string(n) + " non-switch moves " +
                          std::to_string(rec.non_switch_moves()) + " > 3n+1";
            return out;
          }
        }
      } catch (const std::exception& e) {
        out.failure = "n=" + std::to_string(n) + " playout " + std::to_string(t) +
                      " violated an invariant: " + e.what();
        return out;
      }
    }
  }
  return out;
}

// c3: every validated playout terminates at zeckendorf(n) within n(n-1)/2
// moves with a strictly decreasing monovariant from n(n+1)/2. The strict
// per-move decrease is enforced inside run_game's full-validation mode.
bool criterion3() {
  const auto sweep = random_sweep(false);
  return report(3, sweep.failure.empty(),
                sweep.failure.empty()
                    ? std::to_string(sweep.games) +
                          " random playouts (100 per n, n <= 60) all terminated at "
                          "zeckendorf(n) within n(n-1)/2 moves, monovariant strictly "
                          "decreasing from n(n+1)/2"
                    : sweep.failure);
}

// c4: in the same suite, merges number exactly n - Z(n) and non-switch moves
// at most 3n + 1.
bool criterion4() {
  const auto sweep = random_sweep(true);
  return report(4, sweep.failure.empty(),
                sweep.failure.empty()
                    ? std::to_string(sweep.games) +
                          " playouts: merge moves == n - Z(n) and non-switch moves <= 3n+1"
                    : sweep.failure);
}

// c5: the long-game strategy is exactly optimal at desk scale, including the
// anchors M(3) = 3 and M(4) = 5.
bool criterion5() {
  std::ostringstream detail;
  bool ok = true;
  for (std::int64_t n = 1; n <= 10; ++n) {
    MemoTable memo;
    const auto longest = max_remaining(GameState::initial(n), memo);
    const auto lgs = run_lgs(n).length;
    if (longest != lgs) {
      ok = false;
      detail << " n=" << n << " max=" << longest << " lgs=" << lgs;
    }
  }
  MemoTable memo;
  if (max_remaining(GameState::initial(3), memo) != 3) ok = false;
  if (max_remaining(GameState::initial(4), memo) != 5) ok = false;
  return report(5, ok, "LGS length == longest possible game for n <= 10 (M(3)=3, M(4)=5)" +
                           detail.str());
}

// c6: zero catalog or transition violations across every checkpoint for
// n <= 500.
bool criterion6() {
  std::int64_t checkpoints = 0;
  for (std::int64_t n = 2; n <= 500; ++n) {
    const auto rep = lemma_checker(n);
    checkpoints += rep.checkpoints_examined;
    if (!rep.violations.empty()) {
      const auto& v = rep.violations.front();
      return report(6, false,
                    "n=" + std::to_string(n) + " move " + std::to_string(v.move_number) + " " +
                        v.state + ": " + v.reason);
    }
  }
  return report(6, true,
                "repetition catalog and state graph hold at all " + std::to_string(checkpoints) +
                    " checkpoints, n <= 500");
}

// c7: the normalized distance of the LGS length from n^2/2 stays inside
// (0.35, 1.0) at n = 500, 1000, ..., 5000.
bool criterion7() {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 500; n <= 5000; n += 500) ns.push_back(n);
  const auto series = ratio_series(ns);
  std::ostringstream detail;
  bool ok = true;
  double lo = 1e9, hi = -1e9;
  for (const auto& p : series) {
    lo = std::min(lo, p.ratio);
    hi = std::max(hi, p.ratio);
    if (!(p.ratio > 0.35 && p.ratio < 1.0)) {
      ok = false;
      detail << " n=" << p.n << " ratio=" << p.ratio;
    }
  }
  std::ostringstream range;
  range.precision(4);
  range << " (observed " << lo << " .. " << hi << ")";
  return report(7, ok,
                "(n^2/2 - LGS length) / (n log_phi n) inside (0.35, 1.0) for n = 500..5000" +
                    range.str() + detail.str());
}

// c8: at n = 150 with 10,000 seeded trials the length histogram is unimodal
// and right-skewed and the run is reproducible (hard); the log-normal KS
// distance and the first-player win rate are tolerance checks reported as
// findings when violated.
bool criterion8() {
  constexpr std::int64_t kN = 150;
  constexpr std::int64_t kTrials = 10000;
  constexpr std::uint64_t kSeed = 42;
  constexpr int kBins = 12;

  const auto h = simulate_random(kN, kTrials, kSeed, 1);

  // (a) histogram shape, on equal-width bins to smooth sampling noise.
  const auto lo = h.counts.begin()->first;
  const auto hi = h.counts.rbegin()->first;
  std::vector<std::int64_t> bins(kBins, 0);
  double mean = 0;
  for (const auto& [len, c] : h.counts) {
    bins[static_cast<std::size_t>(
        std::min<std::int64_t>((len - lo) * kBins / (hi - lo + 1), kBins - 1))] += c;
    mean += static_cast<double>(len) * static_cast<double>(c);
  }
  mean /= static_cast<double>(kTrials);
  double m2 = 0, m3 = 0;
  for (const auto& [len, c] : h.counts) {
    const double d = static_cast<double>(len) - mean;
    m2 += d * d * static_cast<double>(c);
    m3 += d * d * d * static_cast<double>(c);
  }
  m2 /= static_cast<double>(kTrials);
  m3 /= static_cast<double>(kTrials);
  const double skew = m3 / std::pow(m2, 1.5);

  const auto peak = static_cast<std::size_t>(
      std::max_element(bins.begin(), bins.end()) - bins.begin());
  bool unimodal = true;
  for (std::size_t i = 0; i < peak; ++i) unimodal = unimodal && bins[i] <= bins[i + 1];
  for (std::size_t i = peak; i + 1 < bins.size(); ++i) {
    unimodal = unimodal && bins[i] >= bins[i + 1];
  }

  // Reproducibility across thread counts is part of the hard requirement.
  const auto h2 = simulate_random(kN, kTrials, kSeed, 2);
  const bool reproducible = h.counts == h2.counts && h.p1_wins == h2.p1_wins;

  // (b), (c): tolerance checks.
  const auto fit = fit_lognormal(h);
  const double p1_frac = static_cast<double>(h.p1_wins) / static_cast<double>(kTrials);
  if (!(fit.ks_distance < 0.1)) {
    std::cout << "FINDING c8: KS distance " << fit.ks_distance << " >= 0.1" << std::endl;
  }
  if (!(std::abs(p1_frac - 0.5) < 0.05)) {
    std::cout << "FINDING c8: first-player win rate " << p1_frac << " outside 0.5 +- 0.05"
              << std::endl;
  }

  std::ostringstream detail;
  detail.precision(4);
  detail << " (skew " << skew << ", ks " << fit.ks_distance << ", p1 " << p1_frac << ")";
  const bool ok = unimodal && skew > 0 && reproducible;
  return report(8, ok,
                "n=150 x 10k trials: unimodal right-skewed histogram, reproducible" +
                    detail.str() +
                    (unimodal ? "" : " [multimodal]") + (skew > 0 ? "" : " [left-skewed]") +
                    (reproducible ? "" : " [thread-count dependent]"));
}

// c9: fixed seeds and flags give byte-identical CSV/JSON artifacts no matter
// how many threads do the work, and across repeat runs.
bool criterion9() {
  auto hist_bytes = [](const Histogram& h) {
    std::ostringstream os;
    write_histogram_csv(os, h);
    return os.str() + "|" + histogram_sidecar_json(h, fit_lognormal(h));
  };
  const auto a = hist_bytes(simulate_random(60, 4000, 7, 1));
  const auto b = hist_bytes(simulate_random(60, 4000, 7, 4));
  const auto c = hist_bytes(simulate_random(60, 4000, 7, 1));
  const bool sim_ok = a == b && a == c;

  auto ratio_bytes = [](int threads) {
    const std::vector<std::int64_t> ns = {100, 200, 300};
    std::ostringstream os;
    write_ratio_csv(os, ratio_series(ns, threads));
    return os.str();
  };
  const bool ratio_ok = ratio_bytes(1) == ratio_bytes(3);

  const bool solve_ok = solve_result_json(solve_n(12)) == solve_result_json(solve_n(12));

  return report(9, sim_ok && ratio_ok && solve_ok,
                std::string("seeded outputs are byte-identical across thread counts and reruns") +
                    (sim_ok ? "" : " [simulate differs]") + (ratio_ok ? "" : " [ratio differs]") +
                    (solve_ok ? "" : " [solve differs]"));
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 9) {
      std::cerr << "usage: ozg_acceptance [1-9]\n";
      return 2;
    }
  }

  bool (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                          criterion6, criterion7, criterion8, criterion9};
  bool all_ok = true;
  for (int i = 1; i <= 9; ++i) {
    if (only && i != only) continue;
    try {
      all_ok = criteria[i - 1]() && all_ok;
    } catch (const std::exception& e) {
      std::cout << "FAIL c" << i << ": unexpected exception: " << e.what() << std::endl;
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}
