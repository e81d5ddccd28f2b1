#include "ozg/io.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ozg {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string move_token_json(const Move& m) {
  return std::string("[\"") + move_code(m.kind) + "\"," + std::to_string(m.pos) + "]";
}

void write_record_prefix(std::ostream& os, std::int64_t n, std::string_view policy,
                         std::uint64_t seed) {
  os << "{\"n\":" << n << ",\"policy\":\"" << policy << "\",\"seed\":" << seed << ",\"moves\":[";
}

void write_record_suffix(std::ostream& os, std::int64_t length,
                         const std::optional<GameState>& final_state) {
  os << "],\"length\":" << length;
  if (final_state) os << ",\"final\":\"" << final_state->render_compact() << "\"";
  os << "}";
}

void write_record_json(std::ostream& os, const GameRecord& rec) {
  write_record_prefix(os, rec.n, rec.policy, rec.seed);
  for (std::size_t i = 0; i < rec.moves.size(); ++i) {
    if (i) os << ',';
    os << move_token_json(rec.moves[i]);
  }
  write_record_suffix(os, rec.length, rec.final_state);
}

std::string record_json(const GameRecord& rec) {
  std::ostringstream os;
  write_record_json(os, rec);
  return os.str();
}

std::string solve_result_json(const SolveResult& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["winner"] = player_code(r.winner);
  j["states"] = r.states_explored;
  j["memo"] = r.memo_entries;
  auto pv = nlohmann::json::array();
  for (const Move& m : r.principal_variation) {
    pv.push_back(nlohmann::json::array({std::string(1, move_code(m.kind)), m.pos}));
  }
  j["pv"] = std::move(pv);
  if (r.degenerate) j["degenerate"] = true;
  return j.dump();
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "length,count\n";
  for (const auto& [len, c] : h.counts) os << len << ',' << c << '\n';
}

std::string histogram_sidecar_json(const Histogram& h, const LogNormalFit& fit) {
  nlohmann::json j;
  j["n"] = h.n;
  j["trials"] = h.trials;
  j["seed"] = h.seed;
  j["p1_wins"] = h.p1_wins;
  j["mu"] = fit.mu;
  j["sigma"] = fit.sigma;
  j["ks"] = fit.ks_distance;
  return j.dump();
}

void write_ratio_csv(std::ostream& os, std::span<const RatioPoint> points) {
  os << "n,lgs_length,ratio\n";
  for (const auto& p : points) {
    os << p.n << ',' << p.lgs_length << ',' << format_double(p.ratio) << '\n';
  }
}

std::string lemma_report_json(const LemmaCheckpointReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["checkpoints"] = rep.checkpoints_examined;
  auto viol = nlohmann::json::array();
  for (const auto& v : rep.violations) {
    viol.push_back({{"move", v.move_number}, {"state", v.state}, {"reason", v.reason}});
  }
  j["violations"] = std::move(viol);
  nlohmann::json labels;
  for (int s = 0; s < 4; ++s) labels[lemma_state_name(static_cast<LemmaState>(s))] = 0;
  for (LemmaState s : rep.state_labels) {
    auto& slot = labels[lemma_state_name(s)];
    slot = slot.get<std::int64_t>() + 1;
  }
  j["labels"] = std::move(labels);
  j["transitions_ok"] = rep.violations.empty();
  return j.dump();
}

}  // namespace ozg
