#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ozg/fib.hpp"

namespace ozg {

// Hard cap on the length of an all-ones starting board. Keeps the initial
// monovariant n(n+1)/2 comfortably inside int64 and bounds allocations.
inline constexpr std::int64_t kMaxInitialLength = std::int64_t{1} << 27;

enum class MoveKind : std::uint8_t { MergeOnes, Merge, Split, SplitTwos, Switch };

inline constexpr int kMoveKinds = 5;

// Single-letter codes used in serialized records.
char move_code(MoveKind k);       // O M P T W
const char* move_name(MoveKind k);  // merge-ones merge split split-twos switch

struct Move {
  MoveKind kind;
  std::int64_t pos;  // 1-based position of the left element of the affected pair
  bool operator==(const Move&) const = default;
};

enum class TransitionErrorReason { IllegalPosition, PatternMismatch };

class TransitionError : public std::runtime_error {
 public:
  TransitionError(TransitionErrorReason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  TransitionErrorReason reason() const { return reason_; }

 private:
  TransitionErrorReason reason_;
};

// Ordered board of Fibonacci indices. A value type: engine operations return
// fresh states and never mutate their inputs.
class GameState {
 public:
  // All-ones board of length n (total value n). Throws std::domain_error for
  // n < 1 and std::length_error for n > kMaxInitialLength.
  static GameState initial(std::int64_t n);

  // Arbitrary board. Validates each index against [1, kMaxFibIndex] and the
  // total value against kMaxValue.
  static GameState from_indices(std::span<const int> indices);

  std::int64_t value() const { return value_; }
  std::int64_t size() const { return static_cast<std::int64_t>(idx_.size()); }

  // 1-based to match Move::pos and all rendered output.
  int index_at(std::int64_t pos) const { return idx_[static_cast<std::size_t>(pos - 1)]; }

  std::span<const std::uint8_t> raw() const { return idx_; }

  // Canonical byte encoding: the index sequence itself, one byte per term.
  // Distinct states always pack to distinct strings, so it doubles as an
  // exact memo key.
  std::string packed() const { return std::string(idx_.begin(), idx_.end()); }

  std::string render_compact() const;  // "(1,1,2)"
  std::string render_terms() const;    // "F1 F1 F2"

  bool operator==(const GameState& other) const { return idx_ == other.idx_; }

 private:
  GameState(std::vector<std::uint8_t> idx, std::int64_t value)
      : idx_(std::move(idx)), value_(value) {}
  friend GameState apply_move(const GameState&, Move);

  std::vector<std::uint8_t> idx_;
  std::int64_t value_ = 0;
};

// The move pattern an adjacent pair admits, if any. The five patterns are
// mutually exclusive: (1,1), (2,2), (i,i) with i>2, (i,i+1), and left>right.
// A pair (a,b) with b > a+1 admits no move.
std::optional<MoveKind> classify_pair(int left, int right);

// All legal moves in ascending position order.
std::vector<Move> legal_moves(const GameState& s);

// Applies m to s. Throws TransitionError if the position is out of range or
// the pair at that position does not match the move kind.
GameState apply_move(const GameState& s, Move m);

// True iff no move is legal: strictly increasing indices with gaps >= 2.
bool is_terminal(const GameState& s);

// f(S) = sum over positions j of (k+1-j) * F_{i_j}. Strictly decreases under
// every legal move; throws std::overflow_error if the sum leaves int64 range.
std::int64_t monovariant(const GameState& s);

// Checks that `after` is a sound result of playing m on s: the total value is
// conserved, the monovariant strictly decreased, and the decrement matches
// the closed form for the move kind (F_{i-1} for Split, 1 for SplitTwos,
// F_left - F_right for Switch, prefix sum + F_i for the merges).
bool validate_transition(const GameState& s, Move m, const GameState& after);

}  // namespace ozg
