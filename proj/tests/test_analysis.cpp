#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ozg/analysis.hpp"

using namespace ozg;

namespace {

constexpr double kE = 2.718281828459045;

std::vector<int> board_of(std::initializer_list<int> idx) { return std::vector<int>(idx); }

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("log base phi") {
    CHECK(log_phi(kPhi) == doctest::Approx(1.0));
    CHECK(log_phi(1.0) == doctest::Approx(0.0));
    CHECK(log_phi(kPhi * kPhi) == doctest::Approx(2.0));
  }

  TEST_CASE("log-normal fit on a two-point sample") {
    // ln of {e, e^3} is {1, 3}: population mean 2, population sd 1. The KS
    // distance against N(2,1) is reached just before the first jump:
    // |Phi(-1) - 1/2| = 0.3413...
    const std::vector<double> lengths = {kE, kE * kE * kE};
    const auto fit = fit_lognormal_lengths(lengths);
    CHECK(fit.mu == doctest::Approx(2.0));
    CHECK(fit.sigma == doctest::Approx(1.0));
    CHECK(fit.ks_distance == doctest::Approx(0.3413447460685429));
  }

  TEST_CASE("degenerate fits") {
    const std::vector<double> same = {7, 7, 7, 7};
    const auto fit = fit_lognormal_lengths(same);
    CHECK(fit.mu == doctest::Approx(std::log(7.0)));
    CHECK(fit.sigma == 0.0);
    CHECK(fit.ks_distance == 0.0);

    CHECK_THROWS_AS(fit_lognormal_lengths(std::vector<double>{}), std::domain_error);
    CHECK_THROWS_AS(fit_lognormal_lengths(std::vector<double>{0.5}), std::domain_error);
  }

  TEST_CASE("histogram fit equals the raw-sample fit") {
    Histogram h;
    h.counts = {{3, 2}, {9, 1}, {27, 3}};
    const std::vector<double> raw = {3, 3, 9, 27, 27, 27};
    const auto a = fit_lognormal(h);
    const auto b = fit_lognormal_lengths(raw);
    CHECK(a.mu == doctest::Approx(b.mu));
    CHECK(a.sigma == doctest::Approx(b.sigma));
    CHECK(a.ks_distance == doctest::Approx(b.ks_distance));

    Histogram zero;
    zero.counts = {{0, 5}};
    CHECK_THROWS_AS(fit_lognormal(zero), std::domain_error);
  }

  TEST_CASE("simulation is reproducible and thread-count independent") {
    const auto one = simulate_random(20, 400, 123, 1);
    const auto again = simulate_random(20, 400, 123, 1);
    const auto wide = simulate_random(20, 400, 123, 3);
    CHECK(one.counts == again.counts);
    CHECK(one.p1_wins == again.p1_wins);
    CHECK(one.counts == wide.counts);
    CHECK(one.p1_wins == wide.p1_wins);

    const auto other = simulate_random(20, 400, 124, 1);
    CHECK(one.counts != other.counts);
  }

  TEST_CASE("simulated lengths respect the structural bounds") {
    const std::int64_t n = 20;
    const auto h = simulate_random(n, 400, 5);
    std::int64_t total = 0;
    for (const auto& [len, c] : h.counts) {
      CHECK(len >= n - z_count(n));       // merges alone take this many moves
      CHECK(len <= n * (n - 1) / 2);
      CHECK(c > 0);
      total += c;
    }
    CHECK(total == 400);
    CHECK(h.n == n);
    CHECK(h.seed == 5);
  }

  TEST_CASE("tiny boards degenerate cleanly") {
    const auto h1 = simulate_random(1, 50, 9);
    REQUIRE(h1.counts.size() == 1);
    CHECK(h1.counts.at(0) == 50);   // already terminal, zero-move games
    CHECK(h1.p1_wins == 0);

    const auto h2 = simulate_random(2, 50, 9);
    REQUIRE(h2.counts.size() == 1);
    CHECK(h2.counts.at(1) == 50);   // single forced merge of the two ones
    CHECK(h2.p1_wins == 50);

    const auto empty = simulate_random(5, 0, 9);
    CHECK(empty.counts.empty());
  }

  TEST_CASE("bounds report for n = 10") {
    const auto r = bounds_report(10);
    CHECK(r.shortest == 8);
    CHECK(r.upper == 45);
    CHECK(r.c_n == doctest::Approx(5.5033).epsilon(1e-4));
    CHECK(r.lgs_length == 39);
    const double nlog = 10.0 * log_phi(10.0);
    CHECK(r.lower_leading == doctest::Approx(50.0 - nlog));
    CHECK(r.refined_upper_leading == doctest::Approx(50.0 - nlog / 32.0));
    CHECK(r.ratio == doctest::Approx((50.0 - 39.0) / nlog));
    CHECK_THROWS_AS(bounds_report(1), std::domain_error);
  }

  TEST_CASE("bounds report for n = 4 hits the known long game") {
    const auto r = bounds_report(4);
    CHECK(r.lgs_length == 5);  // the longest game at n = 4
    CHECK(r.ratio == doctest::Approx(3.0 / (4.0 * log_phi(4.0))));
    CHECK(r.ratio == doctest::Approx(0.26034071761148153));
  }

  TEST_CASE("ratio series matches per-point reports in input order") {
    const std::vector<std::int64_t> ns = {40, 10, 20};
    const auto series = ratio_series(ns, 2);
    REQUIRE(series.size() == 3);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const auto r = bounds_report(ns[i]);
      CHECK(series[i].n == ns[i]);
      CHECK(series[i].lgs_length == r.lgs_length);
      CHECK(series[i].ratio == doctest::Approx(r.ratio));
    }
    const auto single = ratio_series(ns, 1);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      CHECK(single[i].lgs_length == series[i].lgs_length);
      CHECK(single[i].ratio == series[i].ratio);
    }
  }

  TEST_CASE("checkpoint classification catalog") {
    auto state = [](std::initializer_list<int> idx) {
      return classify_checkpoint(board_of(idx)).state;
    };
    CHECK(state({2, 2, 3, 5}) == LemmaState::NoRepetitions);
    CHECK(state({2}) == LemmaState::NoRepetitions);
    CHECK(state({3, 3, 5}) == LemmaState::State1);
    CHECK(state({1, 3, 3, 5}) == LemmaState::State1);
    CHECK(state({2, 3, 3}) == LemmaState::State1);
    CHECK(state({4, 4, 6}) == LemmaState::State2);
    CHECK(state({2, 4, 4, 6}) == LemmaState::State2);
    CHECK(state({2, 2, 5, 5}) == LemmaState::State3);   // gap 3 over the last 2
    CHECK(state({5, 5}) == LemmaState::State3);         // nothing to the left at all
    CHECK(state({3, 6, 6, 8}) == LemmaState::State3);   // interior, gap 3
    CHECK(state({1, 2, 2, 5, 5, 7}) == LemmaState::State3);

    auto violation = [](std::initializer_list<int> idx) {
      return !classify_checkpoint(board_of(idx)).state;
    };
    CHECK(violation({3, 4, 4, 5}));     // repetition of 4 behind a gap of 1
    CHECK(violation({2, 4, 5, 5}));     // repetition of 5 behind a gap of 1
    CHECK(violation({2, 4, 4, 5, 5}));  // two repetitions
    CHECK(violation({2, 1, 3}));        // not nondecreasing, not a checkpoint
    CHECK(violation({1, 1, 3}));        // two 1s, merge-ones still legal
  }

  TEST_CASE("transition edges match the state graph") {
    using L = LemmaState;
    auto ok = [](L a, L b) { return lemma_transition_allowed(a, b); };
    const std::vector<std::pair<L, L>> allowed = {
        {L::NoRepetitions, L::NoRepetitions}, {L::NoRepetitions, L::State1},
        {L::State1, L::State2},               {L::State1, L::NoRepetitions},
        {L::State2, L::State3},               {L::State2, L::NoRepetitions},
        {L::State3, L::State3},               {L::State3, L::NoRepetitions}};
    for (const L a : {L::NoRepetitions, L::State1, L::State2, L::State3}) {
      for (const L b : {L::NoRepetitions, L::State1, L::State2, L::State3}) {
        const bool want =
            std::find(allowed.begin(), allowed.end(), std::make_pair(a, b)) != allowed.end();
        CHECK(ok(a, b) == want);
      }
    }
  }

  TEST_CASE("long games stay inside the lemma catalog") {
    std::int64_t checkpoints = 0;
    bool saw_state3 = false;
    for (std::int64_t n = 2; n <= 120; ++n) {
      const auto rep = lemma_checker(n);
      CHECK(rep.violations.empty());
      CHECK(rep.checkpoints_examined > 0);
      CHECK(rep.state_labels.size() == static_cast<std::size_t>(rep.checkpoints_examined));
      checkpoints += rep.checkpoints_examined;
      saw_state3 = saw_state3 ||
                   std::find(rep.state_labels.begin(), rep.state_labels.end(),
                             LemmaState::State3) != rep.state_labels.end();
    }
    CHECK(checkpoints > 1000);
    CHECK(saw_state3);  // the walk reaches the deepest state, not just 1 and 2
  }

  TEST_CASE("state names") {
    CHECK(std::string(lemma_state_name(LemmaState::NoRepetitions)) == "NoRepetitions");
    CHECK(std::string(lemma_state_name(LemmaState::State1)) == "State1");
    CHECK(std::string(lemma_state_name(LemmaState::State2)) == "State2");
    CHECK(std::string(lemma_state_name(LemmaState::State3)) == "State3");
  }
}
