#include "ozg/game.hpp"

#include <limits>

namespace ozg {

char move_code(MoveKind k) {
  switch (k) {
    case MoveKind::MergeOnes: return 'O';
    case MoveKind::Merge: return 'M';
    case MoveKind::Split: return 'P';
    case MoveKind::SplitTwos: return 'T';
    case MoveKind::Switch: return 'W';
  }
  return '?';
}

const char* move_name(MoveKind k) {
  switch (k) {
    case MoveKind::MergeOnes: return "merge-ones";
    case MoveKind::Merge: return "merge";
    case MoveKind::Split: return "split";
    case MoveKind::SplitTwos: return "split-twos";
    case MoveKind::Switch: return "switch";
  }
  return "?";
}

GameState GameState::initial(std::int64_t n) {
  if (n < 1) throw std::domain_error("GameState::initial: n must be >= 1");
  if (n > kMaxInitialLength) {
    throw std::length_error("GameState::initial: n exceeds the supported board length");
  }
  return GameState(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1), n);
}

GameState GameState::from_indices(std::span<const int> indices) {
  if (indices.empty()) throw std::domain_error("GameState: at least one term required");
  std::vector<std::uint8_t> idx;
  idx.reserve(indices.size());
  unsigned __int128 total = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxFibIndex) {
      throw std::domain_error("GameState: index " + std::to_string(i) + " outside [1, " +
                              std::to_string(kMaxFibIndex) + "]");
    }
    idx.push_back(static_cast<std::uint8_t>(i));
    total += static_cast<unsigned __int128>(detail::fib_unchecked(i));
  }
  if (total > static_cast<unsigned __int128>(kMaxValue)) {
    throw std::domain_error("GameState: total value exceeds the 2^62 input guard");
  }
  return GameState(std::move(idx), static_cast<std::int64_t>(total));
}

std::string GameState::render_compact() const {
  std::string out = "(";
  for (std::size_t j = 0; j < idx_.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(static_cast<int>(idx_[j]));
  }
  out += ')';
  return out;
}

std::string GameState::render_terms() const {
  std::string out;
  for (std::size_t j = 0; j < idx_.size(); ++j) {
    if (j) out += ' ';
    out += 'F';
    out += std::to_string(static_cast<int>(idx_[j]));
  }
  return out;
}

std::optional<MoveKind> classify_pair(int left, int right) {
  if (left == right) {
    if (left == 1) return MoveKind::MergeOnes;
    if (left == 2) return MoveKind::SplitTwos;
    return MoveKind::Split;
  }
  if (right == left + 1) return MoveKind::Merge;
  if (left > right) return MoveKind::Switch;
  return std::nullopt;  // right > left + 1
}

std::vector<Move> legal_moves(const GameState& s) {
  std::vector<Move> out;
  const auto raw = s.raw();
  for (std::size_t p = 0; p + 1 < raw.size(); ++p) {
    if (auto kind = classify_pair(raw[p], raw[p + 1])) {
      out.push_back(Move{*kind, static_cast<std::int64_t>(p + 1)});
    }
  }
  return out;
}

GameState apply_move(const GameState& s, Move m) {
  const std::int64_t k = s.size();
  if (m.pos < 1 || m.pos >= k) {
    throw TransitionError(TransitionErrorReason::IllegalPosition,
                          "apply_move: position " + std::to_string(m.pos) +
                              " has no pair in a state of length " + std::to_string(k));
  }
  const int a = s.index_at(m.pos);
  const int b = s.index_at(m.pos + 1);
  const auto kind = classify_pair(a, b);
  if (!kind || *kind != m.kind) {
    throw TransitionError(TransitionErrorReason::PatternMismatch,
                          std::string("apply_move: pair (") + std::to_string(a) + "," +
                              std::to_string(b) + ") at position " + std::to_string(m.pos) +
                              " does not admit " + move_name(m.kind));
  }

  const auto raw = s.raw();
  const auto cut = static_cast<std::size_t>(m.pos - 1);  // 0-based left cell
  std::vector<std::uint8_t> out;
  const bool merging = (m.kind == MoveKind::Merge || m.kind == MoveKind::MergeOnes);
  out.reserve(raw.size() - (merging ? 1 : 0));
  out.insert(out.end(), raw.begin(), raw.begin() + cut);
  switch (m.kind) {
    case MoveKind::MergeOnes:
      out.push_back(2);
      break;
    case MoveKind::Merge:
      out.push_back(static_cast<std::uint8_t>(a + 2));
      break;
    case MoveKind::Split:  // (i,i) -> (i-2, i+1), i > 2
      out.push_back(static_cast<std::uint8_t>(a - 2));
      out.push_back(static_cast<std::uint8_t>(a + 1));
      break;
    case MoveKind::SplitTwos:  // (2,2) -> (1,3)
      out.push_back(1);
      out.push_back(3);
      break;
    case MoveKind::Switch:
      out.push_back(static_cast<std::uint8_t>(b));
      out.push_back(static_cast<std::uint8_t>(a));
      break;
  }
  out.insert(out.end(), raw.begin() + cut + 2, raw.end());

  if (merging && a + 2 > kMaxFibIndex) {
    // Unreachable from valid states (the value guard keeps indices below the
    // table top), but a merged index must stay representable.
    throw std::overflow_error("apply_move: merged index exceeds the Fibonacci table");
  }
  return GameState(std::move(out), s.value());
}

bool is_terminal(const GameState& s) {
  const auto raw = s.raw();
  for (std::size_t p = 0; p + 1 < raw.size(); ++p) {
    if (classify_pair(raw[p], raw[p + 1])) return false;
  }
  return true;
}

std::int64_t monovariant(const GameState& s) {
  const auto raw = s.raw();
  const auto k = static_cast<unsigned __int128>(raw.size());
  unsigned __int128 acc = 0;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    acc += (k - j) * static_cast<unsigned __int128>(detail::fib_unchecked(raw[j]));
  }
  if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
    throw std::overflow_error("monovariant: weighted sum exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(acc);
}

bool validate_transition(const GameState& s, Move m, const GameState& after) {
  const std::int64_t k = s.size();
  if (m.pos < 1 || m.pos >= k) return false;
  const int a = s.index_at(m.pos);
  const int b = s.index_at(m.pos + 1);
  const auto kind = classify_pair(a, b);
  if (!kind || *kind != m.kind) return false;

  const bool merging = (m.kind == MoveKind::Merge || m.kind == MoveKind::MergeOnes);
  if (after.size() != k - (merging ? 1 : 0)) return false;

  // Recompute the successor's value from its raw indices rather than trusting
  // the cached field; conservation is part of what is being checked.
  unsigned __int128 total = 0;
  for (std::uint8_t i : after.raw()) total += static_cast<unsigned __int128>(detail::fib_unchecked(i));
  if (total != static_cast<unsigned __int128>(s.value())) return false;

  std::int64_t f_before, f_after;
  try {
    f_before = monovariant(s);
    f_after = monovariant(after);
  } catch (const std::overflow_error&) {
    return false;
  }
  if (f_after >= f_before) return false;

  std::int64_t expected = 0;
  switch (m.kind) {
    case MoveKind::Split:
      expected = detail::fib_unchecked(a - 1);
      break;
    case MoveKind::SplitTwos:
      expected = 1;
      break;
    case MoveKind::Switch:
      expected = detail::fib_unchecked(a) - detail::fib_unchecked(b);
      break;
    case MoveKind::Merge:
    case MoveKind::MergeOnes: {
      // Every term left of the pair loses one unit of weight; the pair itself
      // contributes -F_i.
      std::int64_t prefix = 0;
      for (std::int64_t p = 1; p < m.pos; ++p) prefix += detail::fib_unchecked(s.index_at(p));
      expected = prefix + detail::fib_unchecked(a);
      break;
    }
  }
  return f_before - f_after == expected;
}

}  // namespace ozg
