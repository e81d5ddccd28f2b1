#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ozg/game.hpp"

namespace ozg {

enum class Player { One, Two };
const char* player_code(Player p);  // "P1" / "P2"

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kDefaultMemoLimit = std::size_t{1} << 27;

struct MemoEntry {
  std::int8_t win = -1;              // -1 unknown, 0 mover loses, 1 mover wins
  std::int64_t max_remaining = -1;   // -1 unknown
};

// Keyed by GameState::packed(), which is exact (no hash collisions can alias
// two states). Sharded for concurrent readers and idempotent concurrent
// inserts: both fields of an entry are canonical for the key, so last-write
// duplication is harmless. Exceeding the entry limit throws CapacityError.
class MemoTable {
 public:
  explicit MemoTable(std::size_t limit = kDefaultMemoLimit) : limit_(limit) {}

  std::optional<MemoEntry> find(const std::string& key) const;
  void store_win(const std::string& key, bool mover_wins);
  void store_max(const std::string& key, std::int64_t value);

  std::size_t size() const { return size_.load(std::memory_order_relaxed); }
  std::size_t limit() const { return limit_; }

  std::uint64_t expansions() const { return expansions_.load(std::memory_order_relaxed); }
  void note_expansion() { expansions_.fetch_add(1, std::memory_order_relaxed); }

 private:
  static constexpr std::size_t kShards = 16;

  struct Shard {
    mutable std::shared_mutex mu;
    std::unordered_map<std::string, MemoEntry> map;
  };

  Shard& shard_for(const std::string& key);
  const Shard& shard_for(const std::string& key) const;
  MemoEntry& locate(Shard& sh, const std::string& key);

  std::array<Shard, kShards> shards_;
  std::atomic<std::size_t> size_{0};
  std::atomic<std::uint64_t> expansions_{0};
  std::size_t limit_;
};

// Normal play: the player who makes the last move wins, so the mover at a
// terminal state has lost. True iff some legal move reaches a state where
// mover_wins is false. Iterative DFS; the position DAG is acyclic because the
// monovariant strictly decreases.
bool mover_wins(const GameState& s, MemoTable& memo);

// Length of the longest playout from s: 0 at terminal states, else
// 1 + max over successors.
std::int64_t max_remaining(const GameState& s, MemoTable& memo);

// A winning move if one exists (the first in ascending move order), else the
// move maximizing max_remaining (first among ties); nullopt at terminal
// states.
std::optional<Move> best_move(const GameState& s, MemoTable& memo);

struct SolveOptions {
  std::size_t memo_limit = kDefaultMemoLimit;
  bool want_pv = true;
};

struct SolveResult {
  std::int64_t n = 0;
  Player winner = Player::One;
  std::uint64_t states_explored = 0;
  std::uint64_t memo_entries = 0;
  std::vector<Move> principal_variation;
  // n = 1 starts at a terminal state: no move is ever made and the first
  // player loses by convention.
  bool degenerate = false;
};

// Full solve from the all-ones board. The principal variation follows
// best_move from the initial state and is always a legal playout.
SolveResult solve_n(std::int64_t n, const SolveOptions& opts = {});

}  // namespace ozg
