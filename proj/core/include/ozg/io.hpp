#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ozg/analysis.hpp"
#include "ozg/solver.hpp"
#include "ozg/strategy.hpp"

namespace ozg {

// Shortest round-trip decimal form, locale independent.
std::string format_double(double v);

// ["M",3] style token: single-letter move code plus 1-based position.
std::string move_token_json(const Move& m);

// One-line record: {"n":...,"policy":"...","seed":...,"moves":[...],"length":...,
// "final":"(...)"}. Streams the move list, so arbitrarily long games serialize
// in bounded memory.
void write_record_json(std::ostream& os, const GameRecord& rec);
std::string record_json(const GameRecord& rec);

// Streaming variant for callers that produce moves one at a time: emit the
// prefix, then comma-separated move_token_json tokens, then the suffix.
void write_record_prefix(std::ostream& os, std::int64_t n, std::string_view policy,
                         std::uint64_t seed);
void write_record_suffix(std::ostream& os, std::int64_t length,
                         const std::optional<GameState>& final_state);

// {"n":...,"winner":"P1"|"P2","states":...,"memo":...,"pv":[...]} plus
// "degenerate":true for n = 1.
std::string solve_result_json(const SolveResult& r);

// CSV with header "length,count", rows ascending by length.
void write_histogram_csv(std::ostream& os, const Histogram& h);

// Metadata sidecar: {"n","trials","seed","p1_wins","mu","sigma","ks"}.
std::string histogram_sidecar_json(const Histogram& h, const LogNormalFit& fit);

// CSV with header "n,lgs_length,ratio".
void write_ratio_csv(std::ostream& os, std::span<const RatioPoint> points);

// {"n","checkpoints","violations":[...],"labels":{...},"transitions_ok":...}.
std::string lemma_report_json(const LemmaCheckpointReport& rep);

}  // namespace ozg
