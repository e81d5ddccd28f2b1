#include "ozg/strategy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ozg {

namespace {

// Exact decrement of the monovariant for playing m on the board `raw`.
// Split: F_{i-1}. SplitTwos: 1. Switch: F_left - F_right. Merges: every term
// left of the pair loses one unit of weight and the pair contributes -F_i.
std::int64_t move_decrement(std::span<const std::uint8_t> raw, Move m) {
  const auto p = static_cast<std::size_t>(m.pos - 1);
  const int a = raw[p];
  switch (m.kind) {
    case MoveKind::Split:
      return detail::fib_unchecked(a - 1);
    case MoveKind::SplitTwos:
      return 1;
    case MoveKind::Switch:
      return detail::fib_unchecked(a) - detail::fib_unchecked(raw[p + 1]);
    case MoveKind::Merge:
    case MoveKind::MergeOnes: {
      std::int64_t prefix = 0;
      for (std::size_t q = 0; q < p; ++q) prefix += detail::fib_unchecked(raw[q]);
      return prefix + detail::fib_unchecked(a);
    }
  }
  return 0;
}

[[noreturn]] void invariant_failure(const std::string& what, std::int64_t n,
                                    const std::string& context) {
  throw std::logic_error("playout invariant violated (n=" + std::to_string(n) + "): " + what +
                         (context.empty() ? "" : " at " + context));
}

}  // namespace

std::optional<Move> lgs_next(const GameState& s, SwitchTieBreak tb) {
  const auto raw = s.raw();
  std::int64_t sw = -1, ones = -1, split = -1, merge = -1;
  MoveKind split_kind = MoveKind::Split;
  for (std::size_t p = 0; p + 1 < raw.size(); ++p) {
    const int a = raw[p], b = raw[p + 1];
    if (a == b) {
      if (a == 1) {
        if (ones < 0) ones = static_cast<std::int64_t>(p);
      } else {
        split = static_cast<std::int64_t>(p);  // rightmost wins
        split_kind = (a == 2) ? MoveKind::SplitTwos : MoveKind::Split;
      }
    } else if (b == a + 1) {
      if (merge < 0) merge = static_cast<std::int64_t>(p);
    } else if (a > b) {
      if (sw < 0 || tb == SwitchTieBreak::Rightmost) sw = static_cast<std::int64_t>(p);
    }
  }
  if (sw >= 0) return Move{MoveKind::Switch, sw + 1};
  if (ones >= 0) return Move{MoveKind::MergeOnes, ones + 1};
  if (split >= 0) return Move{split_kind, split + 1};
  if (merge >= 0) return Move{MoveKind::Merge, merge + 1};
  return std::nullopt;
}

std::optional<Move> random_next(const GameState& s, std::mt19937_64& rng) {
  const auto moves = legal_moves(s);
  if (moves.empty()) return std::nullopt;
  return moves[bounded_uniform(rng, moves.size())];
}

GameRecord run_game(std::int64_t n, Policy& policy, const RunOptions& opts) {
  GameState s = GameState::initial(n);
  const std::int64_t bound = n * (n - 1) / 2;
  GameRecord rec;
  rec.n = n;
  rec.policy = std::string(policy.name());

  std::int64_t f = monovariant(s);  // n(n+1)/2 on the all-ones board
  if (opts.record_states) {
    rec.states.push_back(s);
    rec.monovariants.push_back(f);
  }

  while (auto m = policy.next(s)) {
    GameState next = apply_move(s, *m);  // throws on illegal policy output
    if (opts.full_validation) {
      if (!validate_transition(s, *m, next)) {
        invariant_failure("transition validation failed", n, s.render_compact());
      }
      f = monovariant(next);
    } else {
      const std::int64_t dec = move_decrement(s.raw(), *m);
      if (dec <= 0) invariant_failure("non-positive decrement", n, s.render_compact());
      f -= dec;
      if ((rec.length & 63) == 0 && f != monovariant(next)) {
        invariant_failure("incremental monovariant diverged", n, next.render_compact());
      }
    }
    ++rec.length;
    if (rec.length > bound) invariant_failure("move bound n(n-1)/2 exceeded", n, "");
    ++rec.kind_counts[static_cast<std::size_t>(m->kind)];
    if (opts.record_moves) rec.moves.push_back(*m);
    if (opts.record_states) {
      rec.states.push_back(next);
      rec.monovariants.push_back(f);
    }
    if (opts.on_move) opts.on_move(*m, next, f);
    s = std::move(next);
  }

  if (!is_terminal(s)) invariant_failure("policy stopped before the terminal state", n, s.render_compact());
  if (f != monovariant(s)) invariant_failure("final monovariant mismatch", n, s.render_compact());

  const auto zk = zeckendorf(n);
  const auto raw = s.raw();
  bool is_zeck = raw.size() == zk.size();
  for (std::size_t j = 0; is_zeck && j < zk.size(); ++j) is_zeck = raw[j] == zk[j];
  if (!is_zeck) invariant_failure("final board is not the Zeckendorf decomposition", n, s.render_compact());
  if (rec.merges() != n - static_cast<std::int64_t>(zk.size())) {
    invariant_failure("merge count differs from n - z_count(n)", n, "");
  }
  if (rec.non_switch_moves() > 3 * n + 1) invariant_failure("non-switch moves exceed 3n+1", n, "");

  rec.final_state = std::move(s);
  return rec;
}

namespace {

// Collapses the F_l ones occupying positions [p, p + F_l - 1] into the single
// index l using F_l - 1 merges: build F_{l-1} from the right part of the
// block, build F_{l-2} from the left part, merge the adjacent results.
void build_term(int l, std::int64_t p, std::vector<Move>& out) {
  if (l == 1) return;
  if (l == 2) {
    out.push_back(Move{MoveKind::MergeOnes, p});
    return;
  }
  build_term(l - 1, p + detail::fib_unchecked(l - 2), out);
  build_term(l - 2, p, out);
  out.push_back(Move{MoveKind::Merge, p});
}

class ScriptedPolicy final : public Policy {
 public:
  ScriptedPolicy(std::string name, std::vector<Move> moves)
      : name_(std::move(name)), moves_(std::move(moves)) {}
  std::optional<Move> next(const GameState&) override {
    if (i_ >= moves_.size()) return std::nullopt;
    return moves_[i_++];
  }
  std::string_view name() const override { return name_; }

 private:
  std::string name_;
  std::vector<Move> moves_;
  std::size_t i_ = 0;
};

}  // namespace

GameRecord shortest_game(std::int64_t n) {
  const auto zk = zeckendorf(n);
  std::vector<Move> script;
  std::int64_t rest = n;
  for (auto it = zk.rbegin(); it != zk.rend(); ++it) {
    rest -= detail::fib_unchecked(*it);
    build_term(*it, rest + 1, script);
  }

  ScriptedPolicy policy("shortest", std::move(script));
  RunOptions opts;
  opts.full_validation = false;
  GameRecord rec = run_game(n, policy, opts);
  if (rec.length != n - static_cast<std::int64_t>(zk.size())) {
    throw std::logic_error("shortest_game: constructed game is not n - z_count(n) moves");
  }
  return rec;
}

namespace {

// Incremental engine for the long-game policy. Candidate pair positions are
// kept in one ordered set per move kind; a move only disturbs pairs adjacent
// to where it was played, except merges (rare, and only fired on strictly
// increasing boards, which are short by pigeonhole), which trigger a rebuild.
//
// The board lives in `buf_` with the live region starting at `head_`; a
// front MergeOnes advances head_ instead of shifting the array, which keeps
// stored positions stable.
class LgsRunner {
 public:
  LgsRunner(std::int64_t n, const LgsRunOptions& opts) : n_(n), opts_(opts) {
    if (n < 1) throw std::domain_error("run_lgs: n must be >= 1");
    if (n > kMaxInitialLength) throw std::length_error("run_lgs: n exceeds the supported board length");
    buf_.assign(static_cast<std::size_t>(n), 1);
    f_ = n * (n + 1) / 2;
    rebuild();
    rec_.n = n;
    rec_.policy = "lgs";
  }

  GameRecord run() {
    const std::int64_t bound = n_ * (n_ - 1) / 2;
    for (;;) {
      if (sw_.empty() && ones_.empty() && opts_.on_checkpoint) {
        view_.assign(buf_.begin() + head_, buf_.end());
        opts_.on_checkpoint(rec_.length, view_);
      }
      MoveKind kind;
      std::int64_t p;
      if (!sw_.empty()) {
        rec_.max_switch_candidates =
            std::max(rec_.max_switch_candidates, static_cast<std::int64_t>(sw_.size()));
        p = (opts_.tie_break == SwitchTieBreak::Leftmost) ? *sw_.begin() : *sw_.rbegin();
        kind = MoveKind::Switch;
      } else if (!ones_.empty()) {
        p = *ones_.begin();
        kind = MoveKind::MergeOnes;
      } else if (!splits_.empty()) {
        p = *splits_.rbegin();
        kind = (buf_[static_cast<std::size_t>(p)] == 2) ? MoveKind::SplitTwos : MoveKind::Split;
      } else if (!merges_.empty()) {
        p = *merges_.begin();
        kind = MoveKind::Merge;
      } else {
        break;
      }
      const std::int64_t logical = p - head_ + 1;
      apply(kind, p);
      ++rec_.length;
      if (rec_.length > bound) throw std::logic_error("run_lgs: move bound n(n-1)/2 exceeded");
      ++rec_.kind_counts[static_cast<std::size_t>(kind)];
      if (opts_.record_moves) rec_.moves.push_back(Move{kind, logical});
      if (opts_.on_move) opts_.on_move(Move{kind, logical});
      if ((rec_.length & 0xFFFF) == 0) audit();
    }
    finish();
    return std::move(rec_);
  }

 private:
  static std::int64_t fib(int i) { return detail::fib_unchecked(i); }
  int at(std::int64_t p) const { return buf_[static_cast<std::size_t>(p)]; }
  std::int64_t end() const { return static_cast<std::int64_t>(buf_.size()); }

  void classify_insert(std::int64_t p) {
    const int a = at(p), b = at(p + 1);
    if (a == b) {
      (a == 1 ? ones_ : splits_).insert(p);
    } else if (b == a + 1) {
      merges_.insert(p);
    } else if (a > b) {
      sw_.insert(p);
    }
  }

  void reclassify(std::int64_t p) {
    sw_.erase(p);
    ones_.erase(p);
    splits_.erase(p);
    merges_.erase(p);
    if (p < head_ || p + 1 >= end()) return;
    classify_insert(p);
  }

  void rebuild() {
    sw_.clear();
    ones_.clear();
    splits_.clear();
    merges_.clear();
    for (std::int64_t p = head_; p + 1 < end(); ++p) classify_insert(p);
  }

  void apply(MoveKind kind, std::int64_t p) {
    auto& left = buf_[static_cast<std::size_t>(p)];
    switch (kind) {
      case MoveKind::Switch: {
        auto& right = buf_[static_cast<std::size_t>(p + 1)];
        f_ += fib(right) - fib(left);
        std::swap(left, right);
        touch(p);
        break;
      }
      case MoveKind::Split: {
        const int i = left;
        f_ -= fib(i - 1);
        left = i - 2;
        buf_[static_cast<std::size_t>(p + 1)] = i + 1;
        touch(p);
        break;
      }
      case MoveKind::SplitTwos: {
        f_ -= 1;
        left = 1;
        buf_[static_cast<std::size_t>(p + 1)] = 3;
        touch(p);
        break;
      }
      case MoveKind::MergeOnes: {
        if (p == head_) {
          f_ -= 1;
          ++head_;
          buf_[static_cast<std::size_t>(head_)] = 2;
          reclassify(p);
          reclassify(head_);
        } else {
          merge_at(p, 2);
        }
        break;
      }
      case MoveKind::Merge:
        merge_at(p, at(p) + 2);
        break;
    }
  }

  void touch(std::int64_t p) {
    reclassify(p - 1);
    reclassify(p);
    reclassify(p + 1);
  }

  void merge_at(std::int64_t p, int result) {
    std::int64_t prefix = 0;
    for (std::int64_t q = head_; q < p; ++q) prefix += fib(at(q));
    f_ -= prefix + fib(at(p));
    buf_[static_cast<std::size_t>(p)] = result;
    buf_.erase(buf_.begin() + static_cast<std::ptrdiff_t>(p) + 1);
    rebuild();
  }

  void audit() const {
    const std::int64_t k = end() - head_;
    std::int64_t f = 0;
    for (std::int64_t j = 0; j < k; ++j) f += (k - j) * fib(at(head_ + j));
    if (f != f_) throw std::logic_error("run_lgs: monovariant bookkeeping diverged");
  }

  void finish() {
    audit();
    const auto zk = zeckendorf(n_);
    const std::int64_t k = end() - head_;
    bool is_zeck = k == static_cast<std::int64_t>(zk.size());
    for (std::int64_t j = 0; is_zeck && j < k; ++j) is_zeck = at(head_ + j) == zk[static_cast<std::size_t>(j)];
    if (!is_zeck) throw std::logic_error("run_lgs: final board is not the Zeckendorf decomposition");
    if (rec_.merges() != n_ - static_cast<std::int64_t>(zk.size())) {
      throw std::logic_error("run_lgs: merge count differs from n - z_count(n)");
    }
    if (rec_.non_switch_moves() > 3 * n_ + 1) {
      throw std::logic_error("run_lgs: non-switch moves exceed 3n+1");
    }
    std::vector<int> fin(buf_.begin() + head_, buf_.end());
    rec_.final_state = GameState::from_indices(fin);
  }

  std::int64_t n_;
  const LgsRunOptions& opts_;
  std::vector<int> buf_;
  std::int64_t head_ = 0;
  std::int64_t f_ = 0;
  std::set<std::int64_t> sw_, ones_, splits_, merges_;
  std::vector<int> view_;
  GameRecord rec_;
};

}  // namespace

GameRecord run_lgs(std::int64_t n, const LgsRunOptions& opts) {
  return LgsRunner(n, opts).run();
}

}  // namespace ozg
