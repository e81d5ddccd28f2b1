#include "ozg/solver.hpp"

#include <functional>
#include <mutex>
#include <utility>

namespace ozg {

const char* player_code(Player p) { return p == Player::One ? "P1" : "P2"; }

MemoTable::Shard& MemoTable::shard_for(const std::string& key) {
  return shards_[std::hash<std::string>{}(key) % kShards];
}

const MemoTable::Shard& MemoTable::shard_for(const std::string& key) const {
  return shards_[std::hash<std::string>{}(key) % kShards];
}

std::optional<MemoEntry> MemoTable::find(const std::string& key) const {
  const Shard& sh = shard_for(key);
  std::shared_lock lock(sh.mu);
  auto it = sh.map.find(key);
  if (it == sh.map.end()) return std::nullopt;
  return it->second;
}

MemoEntry& MemoTable::locate(Shard& sh, const std::string& key) {
  auto [it, inserted] = sh.map.try_emplace(key);
  if (inserted) {
    if (size_.fetch_add(1, std::memory_order_relaxed) + 1 > limit_) {
      sh.map.erase(it);
      size_.fetch_sub(1, std::memory_order_relaxed);
      throw CapacityError("memo table limit of " + std::to_string(limit_) +
                          " entries exceeded; raise it via --memo-limit or OZG_MEMO_LIMIT");
    }
  }
  return it->second;
}

void MemoTable::store_win(const std::string& key, bool mover_wins) {
  Shard& sh = shard_for(key);
  std::unique_lock lock(sh.mu);
  locate(sh, key).win = mover_wins ? 1 : 0;
}

void MemoTable::store_max(const std::string& key, std::int64_t value) {
  Shard& sh = shard_for(key);
  std::unique_lock lock(sh.mu);
  locate(sh, key).max_remaining = value;
}

namespace {

// One path of the position DAG lives on this explicit stack; longest paths
// run to ~n^2/2 states, far beyond safe recursion depth at large n.
struct WinFrame {
  GameState state;
  std::string key;
  std::vector<Move> moves;
  std::size_t next = 0;
  bool any_losing_child = false;

  explicit WinFrame(GameState s)
      : state(std::move(s)), key(state.packed()), moves(legal_moves(state)) {}
};

struct MaxFrame {
  GameState state;
  std::string key;
  std::vector<Move> moves;
  std::size_t next = 0;
  std::int64_t best = 0;

  explicit MaxFrame(GameState s)
      : state(std::move(s)), key(state.packed()), moves(legal_moves(state)) {}
};

}  // namespace

bool mover_wins(const GameState& root, MemoTable& memo) {
  if (auto e = memo.find(root.packed()); e && e->win >= 0) return e->win == 1;

  std::vector<WinFrame> stack;
  stack.emplace_back(root);
  memo.note_expansion();
  bool result = false;

  while (!stack.empty()) {
    WinFrame& f = stack.back();

    if (f.any_losing_child) {  // some child is lost for the opponent: f wins
      memo.store_win(f.key, true);
      result = true;
      stack.pop_back();
      continue;  // a winning child never changes the parent's flag
    }
    if (f.next >= f.moves.size()) {  // exhausted (or terminal): f loses
      memo.store_win(f.key, false);
      result = false;
      stack.pop_back();
      if (!stack.empty()) stack.back().any_losing_child = true;
      continue;
    }

    GameState child = apply_move(f.state, f.moves[f.next++]);
    if (auto e = memo.find(child.packed()); e && e->win >= 0) {
      if (e->win == 0) f.any_losing_child = true;
      continue;
    }
    stack.emplace_back(std::move(child));
    memo.note_expansion();
  }
  return result;
}

std::int64_t max_remaining(const GameState& root, MemoTable& memo) {
  if (auto e = memo.find(root.packed()); e && e->max_remaining >= 0) return e->max_remaining;

  std::vector<MaxFrame> stack;
  stack.emplace_back(root);
  std::int64_t result = 0;

  while (!stack.empty()) {
    MaxFrame& f = stack.back();

    if (f.next >= f.moves.size()) {
      memo.store_max(f.key, f.best);
      result = f.best;
      stack.pop_back();
      if (!stack.empty()) {
        MaxFrame& parent = stack.back();
        parent.best = std::max(parent.best, result + 1);
      }
      continue;
    }

    GameState child = apply_move(f.state, f.moves[f.next++]);
    if (auto e = memo.find(child.packed()); e && e->max_remaining >= 0) {
      f.best = std::max(f.best, e->max_remaining + 1);
      continue;
    }
    stack.emplace_back(std::move(child));
  }
  return result;
}

std::optional<Move> best_move(const GameState& s, MemoTable& memo) {
  const auto moves = legal_moves(s);
  if (moves.empty()) return std::nullopt;

  for (const Move& m : moves) {
    if (!mover_wins(apply_move(s, m), memo)) return m;
  }
  // Losing position: prolong resistance.
  Move best = moves.front();
  std::int64_t best_len = -1;
  for (const Move& m : moves) {
    const std::int64_t len = max_remaining(apply_move(s, m), memo);
    if (len > best_len) {
      best_len = len;
      best = m;
    }
  }
  return best;
}

SolveResult solve_n(std::int64_t n, const SolveOptions& opts) {
  if (n < 1) throw std::domain_error("solve_n: n must be >= 1");

  SolveResult r;
  r.n = n;
  if (n == 1) {
    r.winner = Player::Two;
    r.degenerate = true;
    r.states_explored = 1;
    return r;
  }

  MemoTable memo(opts.memo_limit);
  const GameState initial = GameState::initial(n);
  r.winner = mover_wins(initial, memo) ? Player::One : Player::Two;
  r.states_explored = memo.expansions();
  r.memo_entries = memo.size();

  if (opts.want_pv) {
    GameState cur = initial;
    while (auto m = best_move(cur, memo)) {
      r.principal_variation.push_back(*m);
      cur = apply_move(cur, *m);
    }
  }
  return r;
}

}  // namespace ozg
