#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ozg/game.hpp"
#include "ozg/rng.hpp"

namespace ozg {

enum class SwitchTieBreak { Leftmost, Rightmost };

// Deterministic long-game move choice. Priorities: (1) a Switch (leftmost by
// default, rightmost under the variant flag), (2) the leftmost MergeOnes,
// (3) the rightmost Split or SplitTwos, (4) the leftmost Merge.
std::optional<Move> lgs_next(const GameState& s, SwitchTieBreak tb = SwitchTieBreak::Leftmost);

// Uniform choice over legal_moves(s); nullopt at terminal states.
std::optional<Move> random_next(const GameState& s, std::mt19937_64& rng);

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::optional<Move> next(const GameState& s) = 0;
  virtual std::string_view name() const = 0;
};

class LgsPolicy final : public Policy {
 public:
  explicit LgsPolicy(SwitchTieBreak tb = SwitchTieBreak::Leftmost) : tb_(tb) {}
  std::optional<Move> next(const GameState& s) override { return lgs_next(s, tb_); }
  std::string_view name() const override { return "lgs"; }

 private:
  SwitchTieBreak tb_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  std::optional<Move> next(const GameState& s) override { return random_next(s, rng_); }
  std::string_view name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
};

struct RunOptions {
  bool record_moves = true;
  // Also records a state snapshot and monovariant value per position.
  bool record_states = false;
  // true: recompute the monovariant for every transition (validate_transition).
  // false: maintain it incrementally via the closed-form decrements, with a
  // full recomputation every 64 moves and at the end.
  bool full_validation = true;
  // Invoked after each move with the move, the resulting state, and its
  // monovariant. Lets callers stream traces without recording.
  std::function<void(const Move&, const GameState&, std::int64_t)> on_move;
};

struct GameRecord {
  std::int64_t n = 0;
  std::string policy;
  std::uint64_t seed = 0;
  std::int64_t length = 0;
  std::vector<Move> moves;                    // empty unless recorded
  std::vector<GameState> states;              // per position, when recorded
  std::vector<std::int64_t> monovariants;     // per position, when recorded
  std::optional<GameState> final_state;
  std::array<std::int64_t, kMoveKinds> kind_counts{};
  // Largest number of simultaneously available Switch moves seen (fast runner
  // only; 0 for generic runs).
  std::int64_t max_switch_candidates = 0;

  std::int64_t merges() const {
    return kind_counts[static_cast<std::size_t>(MoveKind::Merge)] +
           kind_counts[static_cast<std::size_t>(MoveKind::MergeOnes)];
  }
  std::int64_t non_switch_moves() const {
    return length - kind_counts[static_cast<std::size_t>(MoveKind::Switch)];
  }
};

// Plays a full game from the all-ones board under the given policy,
// validating every transition. Enforces the terminating invariants: the final
// board is the Zeckendorf decomposition of n, the move count is at most
// n(n-1)/2, merges number exactly n - z_count(n), and non-switch moves number
// at most 3n + 1. Violations throw std::logic_error.
GameRecord run_game(std::int64_t n, Policy& policy, const RunOptions& opts = {});

// Minimal game: n - z_count(n) moves, all merges. Builds each Zeckendorf
// summand largest-first from the rightmost block of ones.
GameRecord shortest_game(std::int64_t n);

struct LgsRunOptions {
  SwitchTieBreak tie_break = SwitchTieBreak::Leftmost;
  bool record_moves = false;
  std::function<void(const Move&)> on_move;
  // Invoked at every checkpoint: a state with no Switch and no MergeOnes
  // legal (the terminal state included). Arguments: moves played so far and
  // the board.
  std::function<void(std::int64_t, std::span<const int>)> on_checkpoint;
};

// Incremental long-game runner. Produces exactly the same game as
// run_game(n, LgsPolicy) but tracks candidate positions per move kind instead
// of rescanning the board, so a game of ~n^2/2 moves costs about log(n) set
// operations per move. The monovariant is maintained via the closed-form
// decrements and audited against a full recomputation periodically and at the
// end.
GameRecord run_lgs(std::int64_t n, const LgsRunOptions& opts = {});

}  // namespace ozg
