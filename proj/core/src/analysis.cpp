#include "ozg/analysis.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ozg/rng.hpp"

namespace ozg {

double log_phi(double x) { return std::log(x) / std::log(kPhi); }

namespace {

int pick_threads(int threads, std::int64_t work_items) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw ? static_cast<int>(hw) : 1;
  }
  threads = std::min<std::int64_t>(threads, std::max<std::int64_t>(work_items, 1));
  return std::max(threads, 1);
}

struct PlayoutCounters {
  std::int64_t length = 0;
  std::array<std::int64_t, kMoveKinds> kinds{};
};

// One random game, played on a reusable board buffer. Moves are applied in
// place; the monovariant is maintained through the closed-form decrements and
// cross-checked against a full recomputation at the end, together with the
// terminating invariants.
PlayoutCounters random_playout(std::int64_t n, std::mt19937_64& rng,
                               std::vector<std::uint8_t>& board,
                               std::vector<Move>& cand, const std::vector<int>& zeck_idx) {
  board.assign(static_cast<std::size_t>(n), 1);
  std::int64_t f = n * (n + 1) / 2;
  const std::int64_t bound = n * (n - 1) / 2;
  PlayoutCounters out;

  for (;;) {
    cand.clear();
    for (std::size_t p = 0; p + 1 < board.size(); ++p) {
      if (auto kind = classify_pair(board[p], board[p + 1])) {
        cand.push_back(Move{*kind, static_cast<std::int64_t>(p)});  // 0-based here
      }
    }
    if (cand.empty()) break;
    const Move m = cand[bounded_uniform(rng, cand.size())];
    const auto p = static_cast<std::size_t>(m.pos);
    const int a = board[p];

    std::int64_t dec = 0;
    switch (m.kind) {
      case MoveKind::Switch:
        dec = detail::fib_unchecked(a) - detail::fib_unchecked(board[p + 1]);
        std::swap(board[p], board[p + 1]);
        break;
      case MoveKind::Split:
        dec = detail::fib_unchecked(a - 1);
        board[p] = static_cast<std::uint8_t>(a - 2);
        board[p + 1] = static_cast<std::uint8_t>(a + 1);
        break;
      case MoveKind::SplitTwos:
        dec = 1;
        board[p] = 1;
        board[p + 1] = 3;
        break;
      case MoveKind::MergeOnes:
      case MoveKind::Merge: {
        std::int64_t prefix = 0;
        for (std::size_t q = 0; q < p; ++q) prefix += detail::fib_unchecked(board[q]);
        dec = prefix + detail::fib_unchecked(a);
        board[p] = static_cast<std::uint8_t>(m.kind == MoveKind::MergeOnes ? 2 : a + 2);
        board.erase(board.begin() + static_cast<std::ptrdiff_t>(p) + 1);
        break;
      }
    }
    if (dec <= 0) throw std::logic_error("random_playout: non-positive monovariant decrement");
    f -= dec;
    ++out.length;
    ++out.kinds[static_cast<std::size_t>(m.kind)];
    if (out.length > bound) throw std::logic_error("random_playout: move bound n(n-1)/2 exceeded");
  }

  // Terminating invariants: Zeckendorf board, consistent monovariant, exact
  // merge count, bounded non-switch count.
  bool is_zeck = board.size() == zeck_idx.size();
  for (std::size_t j = 0; is_zeck && j < board.size(); ++j) {
    is_zeck = board[j] == zeck_idx[j];
  }
  if (!is_zeck) throw std::logic_error("random_playout: final board is not the Zeckendorf decomposition");

  std::int64_t f_check = 0;
  const auto k = static_cast<std::int64_t>(board.size());
  for (std::int64_t j = 0; j < k; ++j) {
    f_check += (k - j) * detail::fib_unchecked(board[static_cast<std::size_t>(j)]);
  }
  if (f != f_check) throw std::logic_error("random_playout: monovariant bookkeeping diverged");

  const std::int64_t merges = out.kinds[static_cast<std::size_t>(MoveKind::Merge)] +
                              out.kinds[static_cast<std::size_t>(MoveKind::MergeOnes)];
  if (merges != n - static_cast<std::int64_t>(zeck_idx.size())) {
    throw std::logic_error("random_playout: merge count differs from n - z_count(n)");
  }
  const std::int64_t non_switch = out.length - out.kinds[static_cast<std::size_t>(MoveKind::Switch)];
  if (non_switch > 3 * n + 1) throw std::logic_error("random_playout: non-switch moves exceed 3n+1");

  return out;
}

}  // namespace

Histogram simulate_random(std::int64_t n, std::int64_t trials, std::uint64_t master_seed,
                          int threads) {
  if (n < 1) throw std::domain_error("simulate_random: n must be >= 1");
  if (trials < 0) throw std::domain_error("simulate_random: trials must be >= 0");

  Histogram h;
  h.n = n;
  h.trials = trials;
  h.seed = master_seed;
  if (trials == 0) return h;

  const int T = pick_threads(threads, trials);
  const std::int64_t bound = n * (n - 1) / 2;
  const bool dense = bound <= (std::int64_t{1} << 22);
  const auto zeck_idx = zeckendorf(n);

  std::vector<std::vector<std::int64_t>> dense_counts;
  std::vector<std::map<std::int64_t, std::int64_t>> sparse_counts;
  if (dense) {
    dense_counts.assign(static_cast<std::size_t>(T),
                        std::vector<std::int64_t>(static_cast<std::size_t>(bound) + 1, 0));
  } else {
    sparse_counts.assign(static_cast<std::size_t>(T), {});
  }
  std::vector<std::int64_t> p1(static_cast<std::size_t>(T), 0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(T));

  auto worker = [&](int t) {
    try {
      std::vector<std::uint8_t> board;
      std::vector<Move> cand;
      const std::int64_t lo = trials * t / T;
      const std::int64_t hi = trials * (t + 1) / T;
      for (std::int64_t i = lo; i < hi; ++i) {
        auto rng = make_stream(master_seed, static_cast<std::uint64_t>(i));
        const auto res = random_playout(n, rng, board, cand, zeck_idx);
        if (dense) {
          ++dense_counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(res.length)];
        } else {
          ++sparse_counts[static_cast<std::size_t>(t)][res.length];
        }
        if (res.length % 2 == 1) ++p1[static_cast<std::size_t>(t)];
      }
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  };

  if (T == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (int t = 0; t < T; ++t) {
    h.p1_wins += p1[static_cast<std::size_t>(t)];
    if (dense) {
      const auto& c = dense_counts[static_cast<std::size_t>(t)];
      for (std::size_t len = 0; len < c.size(); ++len) {
        if (c[len]) h.counts[static_cast<std::int64_t>(len)] += c[len];
      }
    } else {
      for (const auto& [len, c] : sparse_counts[static_cast<std::size_t>(t)]) h.counts[len] += c;
    }
  }
  return h;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Shared fit core over (log-length, count) pairs sorted by value.
LogNormalFit fit_from_log_bins(const std::vector<std::pair<double, std::int64_t>>& bins) {
  std::int64_t N = 0;
  for (const auto& [v, c] : bins) N += c;
  if (N <= 0) throw std::domain_error("fit_lognormal: empty sample");

  double mu = 0;
  for (const auto& [v, c] : bins) mu += static_cast<double>(c) * v;
  mu /= static_cast<double>(N);

  double var = 0;
  for (const auto& [v, c] : bins) var += static_cast<double>(c) * (v - mu) * (v - mu);
  var /= static_cast<double>(N);

  LogNormalFit fit;
  fit.mu = mu;
  fit.sigma = std::sqrt(var);
  if (fit.sigma == 0) {
    fit.ks_distance = 0;  // point mass against an identical sample
    return fit;
  }

  double d = 0;
  std::int64_t cum = 0;
  for (const auto& [v, c] : bins) {
    const double cdf = normal_cdf((v - mu) / fit.sigma);
    const double lo = static_cast<double>(cum) / static_cast<double>(N);
    const double hi = static_cast<double>(cum + c) / static_cast<double>(N);
    d = std::max({d, std::abs(cdf - lo), std::abs(hi - cdf)});
    cum += c;
  }
  fit.ks_distance = d;
  return fit;
}

}  // namespace

LogNormalFit fit_lognormal(const Histogram& h) {
  std::vector<std::pair<double, std::int64_t>> bins;
  bins.reserve(h.counts.size());
  for (const auto& [len, c] : h.counts) {
    if (len < 1) throw std::domain_error("fit_lognormal: lengths must be >= 1");
    bins.emplace_back(std::log(static_cast<double>(len)), c);
  }
  return fit_from_log_bins(bins);
}

LogNormalFit fit_lognormal_lengths(std::span<const double> lengths) {
  std::vector<double> sorted(lengths.begin(), lengths.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, std::int64_t>> bins;
  for (double v : sorted) {
    if (v < 1) throw std::domain_error("fit_lognormal: lengths must be >= 1");
    const double lv = std::log(v);
    if (!bins.empty() && bins.back().first == lv) {
      ++bins.back().second;
    } else {
      bins.emplace_back(lv, 1);
    }
  }
  return fit_from_log_bins(bins);
}

BoundsReport bounds_report(std::int64_t n) {
  if (n < 2) throw std::domain_error("bounds_report: n must be >= 2");
  BoundsReport r;
  r.n = n;
  r.shortest = n - z_count(n);
  r.upper = n * (n - 1) / 2;
  r.c_n = log_phi(std::sqrt(5.0) * static_cast<double>(n) + 0.5) - 1.0;
  const double nd = static_cast<double>(n);
  const double nlog = nd * log_phi(nd);
  r.lower_leading = 0.5 * nd * nd - nlog;
  r.refined_upper_leading = 0.5 * nd * nd - nlog / 32.0;
  r.lgs_length = run_lgs(n).length;
  r.ratio = (0.5 * nd * nd - static_cast<double>(r.lgs_length)) / nlog;
  return r;
}

std::vector<RatioPoint> ratio_series(std::span<const std::int64_t> n_values, int threads) {
  std::vector<RatioPoint> out(n_values.size());
  const int T = pick_threads(threads, static_cast<std::int64_t>(n_values.size()));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(T));
  std::atomic<std::size_t> cursor{0};

  auto worker = [&](int t) {
    try {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= n_values.size()) return;
        const std::int64_t n = n_values[i];
        if (n < 2) throw std::domain_error("ratio_series: n must be >= 2");
        const std::int64_t len = run_lgs(n).length;
        const double nd = static_cast<double>(n);
        out[i] = RatioPoint{n, len, (0.5 * nd * nd - static_cast<double>(len)) / (nd * log_phi(nd))};
      }
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  };

  if (T == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

const char* lemma_state_name(LemmaState s) {
  switch (s) {
    case LemmaState::NoRepetitions: return "NoRepetitions";
    case LemmaState::State1: return "State1";
    case LemmaState::State2: return "State2";
    case LemmaState::State3: return "State3";
  }
  return "?";
}

SuffixClass classify_checkpoint(std::span<const int> board) {
  for (std::size_t q = 0; q + 1 < board.size(); ++q) {
    if (board[q] > board[q + 1]) return {std::nullopt, "checkpoint board is not nondecreasing"};
    if (board[q] == 1 && board[q + 1] == 1) return {std::nullopt, "checkpoint board has two 1s"};
  }

  std::size_t start = board.size();
  while (start > 0 && board[start - 1] >= 3) --start;
  const auto run = board.subspan(start);

  std::ptrdiff_t rep = -1;
  for (std::size_t q = 0; q + 1 < run.size(); ++q) {
    if (run[q] == run[q + 1]) {
      if (rep >= 0) return {std::nullopt, "more than one adjacent repetition above index 2"};
      rep = static_cast<std::ptrdiff_t>(q);
    }
  }
  if (rep < 0) return {LemmaState::NoRepetitions, ""};

  const int j = run[static_cast<std::size_t>(rep)];
  if (rep == 0 && j == 3) return {LemmaState::State1, ""};
  if (rep == 0 && j == 4) return {LemmaState::State2, ""};

  // Predecessor in the full board: a 1 or 2 when the repetition leads the
  // high run, the previous run entry otherwise, or nothing at the far left.
  const std::size_t at = start + static_cast<std::size_t>(rep);
  if (at == 0) return {LemmaState::State3, ""};
  const int gap = j - board[at - 1];
  if (gap >= 3) return {LemmaState::State3, ""};
  return {std::nullopt,
          "repetition of index " + std::to_string(j) + " preceded at gap " + std::to_string(gap) +
              " (needs >= 3)"};
}

bool lemma_transition_allowed(LemmaState from, LemmaState to) {
  switch (from) {
    case LemmaState::NoRepetitions:
      return to == LemmaState::NoRepetitions || to == LemmaState::State1;
    case LemmaState::State1:
      return to == LemmaState::State2 || to == LemmaState::NoRepetitions;
    case LemmaState::State2:
      return to == LemmaState::State3 || to == LemmaState::NoRepetitions;
    case LemmaState::State3:
      return to == LemmaState::State3 || to == LemmaState::NoRepetitions;
  }
  return false;
}

namespace {

std::string render_board(std::span<const int> board) {
  std::string out = "(";
  for (std::size_t j = 0; j < board.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(board[j]);
  }
  out += ')';
  return out;
}

}  // namespace

LemmaCheckpointReport lemma_checker(std::int64_t n) {
  LemmaCheckpointReport rep;
  rep.n = n;
  // At the start no higher-index terms exist, so the walk begins at
  // NoRepetitions. The edge constraint applies only while the source
  // checkpoint is still in the splitting phase (at least two 2s on board).
  std::optional<LemmaState> prev = LemmaState::NoRepetitions;
  bool prev_splitting = true;

  LgsRunOptions opts;
  opts.on_checkpoint = [&](std::int64_t move_no, std::span<const int> board) {
    ++rep.checkpoints_examined;
    const auto cls = classify_checkpoint(board);
    if (!cls.state) {
      rep.violations.push_back({move_no, render_board(board), cls.violation});
      prev = std::nullopt;
      return;
    }
    if (prev && prev_splitting && !lemma_transition_allowed(*prev, *cls.state)) {
      rep.violations.push_back({move_no, render_board(board),
                                std::string("transition ") + lemma_state_name(*prev) + " -> " +
                                    lemma_state_name(*cls.state) + " not in the state graph"});
    }
    rep.state_labels.push_back(*cls.state);
    prev = *cls.state;
    prev_splitting = std::count(board.begin(), board.end(), 2) >= 2;
  };
  run_lgs(n, opts);
  return rep;
}

}  // namespace ozg
