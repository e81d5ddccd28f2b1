#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ozg/strategy.hpp"

namespace ozg {

inline constexpr double kPhi = 1.6180339887498948482;

double log_phi(double x);

struct Histogram {
  std::int64_t n = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<std::int64_t, std::int64_t> counts;  // game length -> frequency
  std::int64_t p1_wins = 0;  // games of odd length: the first mover moved last
};

// Random playouts from the all-ones board. Trial i always draws from the RNG
// stream derived from (master_seed, i), so the histogram is identical for any
// thread count. threads <= 0 picks a hardware default.
Histogram simulate_random(std::int64_t n, std::int64_t trials, std::uint64_t master_seed,
                          int threads = 0);

struct LogNormalFit {
  double mu = 0;
  double sigma = 0;
  double ks_distance = 0;
};

// Population-moment fit (divide by N) of a normal to ln(length), plus the
// Kolmogorov-Smirnov distance between the empirical log-length distribution
// and the fitted CDF. sigma = 0 degenerates to a point mass, whose KS
// distance against an identical sample is 0. Lengths must be >= 1.
LogNormalFit fit_lognormal(const Histogram& h);
LogNormalFit fit_lognormal_lengths(std::span<const double> lengths);

struct BoundsReport {
  std::int64_t n = 0;
  std::int64_t shortest = 0;         // n - z_count(n)
  std::int64_t upper = 0;            // n(n-1)/2
  double c_n = 0;                    // log_phi(sqrt(5) n + 1/2) - 1
  double lower_leading = 0;          // n^2/2 - n log_phi n
  double refined_upper_leading = 0;  // n^2/2 - (1/32) n log_phi n
  std::int64_t lgs_length = 0;       // measured deterministic long game
  double ratio = 0;                  // (n^2/2 - lgs_length) / (n log_phi n)
  double phi = kPhi;
};

BoundsReport bounds_report(std::int64_t n);

struct RatioPoint {
  std::int64_t n = 0;
  std::int64_t lgs_length = 0;
  double ratio = 0;
};

// One long game per n; points are independent, so they may be computed in
// parallel without affecting the (input-ordered) result.
std::vector<RatioPoint> ratio_series(std::span<const std::int64_t> n_values, int threads = 0);

// Structure of the high-index terms at long-game checkpoints (states with no
// Switch and no MergeOnes legal). A checkpoint board is nondecreasing with at
// most one leading 1, and its trailing run of indices >= 3 carries at most
// one adjacent repetition, in one of three shapes:
//   State1: (3,3, i>=4, ...)  repetition of 3 leading the run
//   State2: (4,4, i>=5, ...)  repetition of 4 leading the run
//   State3: (j,j) preceded in the full board by a term smaller by at least 3,
//           or by nothing at all
// The State3 predecessor may be a 1 or a 2; only the gap matters.
enum class LemmaState { NoRepetitions, State1, State2, State3 };
const char* lemma_state_name(LemmaState s);

struct SuffixClass {
  std::optional<LemmaState> state;  // set iff the board is well formed
  std::string violation;            // reason otherwise
};

// Classifies a full checkpoint board against the catalog above.
SuffixClass classify_checkpoint(std::span<const int> board);

// While the board still holds at least two 2s (the splitting phase), the
// checkpoint-to-checkpoint walk must stay inside the graph:
// NoRep -> {NoRep, State1}, State1 -> {State2, NoRep},
// State2 -> {State3, NoRep}, State3 -> {State3, NoRep}.
// Once fewer than two 2s remain, the closing merge cascade can jump
// arbitrarily (e.g. (2,3,4) -> (4,4)), so edges are no longer constrained.
bool lemma_transition_allowed(LemmaState from, LemmaState to);

struct LemmaViolation {
  std::int64_t move_number = 0;
  std::string state;
  std::string reason;
};

struct LemmaCheckpointReport {
  std::int64_t n = 0;
  std::int64_t checkpoints_examined = 0;
  std::vector<LemmaViolation> violations;
  std::vector<LemmaState> state_labels;  // one per well-formed checkpoint
};

// Runs the long game at n and classifies every checkpoint.
LemmaCheckpointReport lemma_checker(std::int64_t n);

}  // namespace ozg
