#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaplab/errors.hpp"
#include "gaplab/io.hpp"
#include "gaplab/linalg.hpp"
#include "gaplab/montecarlo.hpp"

using namespace gaplab;

#ifndef GAPLAB_TEST_DATA_DIR
#error "GAPLAB_TEST_DATA_DIR must be defined"
#endif

namespace {

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  io::write_trials_csv(os, records);
  return os.str();
}

}  // namespace

TEST_CASE("counter rng") {
  CounterRng a(CounterRng::stream_key(7, 3));
  CounterRng b(CounterRng::stream_key(7, 3));
  CounterRng c(CounterRng::stream_key(7, 4));
  for (int k = 0; k < 100; ++k) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  CounterRng u(1);
  double sum = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    sum += v;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("gen_random_network") {
  CounterRng rng(5);
  for (int t = 0; t < 20; ++t) {
    const BlockStructure s({1, 2, 1, 3});
    const auto p = gen_random_network(rng, s, 0.75);
    CHECK(linalg::max_singular_value(p.matrix()) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p.is_monotone());
    CHECK((p.matrix().array() >= 0.0).all());
  }
  CHECK(gen_random_network(rng, BlockStructure({3}), 0.75).matrix().isZero(0.0));
  CHECK_THROWS_AS(gen_random_network(rng, BlockStructure({1, 1}), 1.0), InputError);
}

TEST_CASE("gen_shock_profile") {
  CounterRng rng(6);
  const BlockStructure s({1, 2, 2});
  for (const double delta : {0.0, 0.1, 0.7}) {
    const auto shocks = gen_shock_profile(rng, s, delta);
    double spread = 0.0;
    for (std::size_t a = 0; a < shocks.size(); ++a) {
      for (std::size_t b = a + 1; b < shocks.size(); ++b) {
        spread = std::max(spread, (shocks[a] - shocks[b]).norm());
      }
      CHECK((shocks[a].array() >= 1.0 - delta).all());
    }
    CHECK(spread == doctest::Approx(delta).epsilon(1e-10));
    if (delta == 0.0) {
      for (const auto& e : shocks) CHECK(e == shocks.front());
    }
  }
  CHECK_THROWS_AS(gen_shock_profile(rng, BlockStructure({2}), 0.5), InputError);
}

TEST_CASE("gen_alpha_profile") {
  CounterRng rng(8);
  for (const double a : gen_alpha_profile(rng, 5, 0.0)) CHECK(a == 1.0);
  const auto alphas = gen_alpha_profile(rng, 200, 0.4);
  const auto [lo, hi] = std::minmax_element(alphas.begin(), alphas.end());
  CHECK(*lo >= 0.8);
  CHECK(*hi <= 1.2);
  CHECK(*hi - *lo <= 0.4);
  CHECK_THROWS_AS(gen_alpha_profile(rng, 3, 2.0), InputError);
}

TEST_CASE("McConfig validation") {
  McConfig c;
  CHECK_NOTHROW(c.validate());
  c.target_sv = 1.0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = {};
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = {};
  c.delta_s = -0.1;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = {};
  c.delta_g = 2.0;
  CHECK_THROWS_AS(c.validate(), InputError);
  CHECK(parse_mc_mode("both") == McMode::both);
  CHECK_THROWS_AS(parse_mc_mode("shocks"), InputError);
}

TEST_CASE("zero misalignment gives exactly zero gaps") {
  for (const McMode mode : {McMode::shock, McMode::graph, McMode::both}) {
    McConfig c;
    c.mode = mode;
    c.trials = 25;
    c.master_seed = 99;
    c.block_sizes = {1, 2, 1};
    for (const auto& r : run_trials(c)) {
      REQUIRE(r.valid);
      for (const double g : r.gap_direct) CHECK(g == 0.0);
      for (const auto& rel : r.relative_gap) CHECK(*rel == 0.0);
    }
  }
}

TEST_CASE("records do not depend on thread count or batch position") {
  McConfig c;
  c.mode = McMode::both;
  c.delta_s = 0.5;
  c.delta_g = 0.2;
  c.trials = 40;
  c.master_seed = 7;
  const auto one = run_trials(c, 1);
  const auto many = run_trials(c, 8);
  CHECK(trials_csv(one) == trials_csv(many));

  const auto single = run_trial(c, 17);
  CHECK(single.gap_direct == one[17].gap_direct);
  CHECK(single.seed == CounterRng::stream_key(7, 17));

  c.fixed_network = true;
  CHECK(trials_csv(run_trials(c, 1)) == trials_csv(run_trials(c, 3)));
}

TEST_CASE("sweeps use disjoint trial ids") {
  McConfig c;
  c.trials = 5;
  c.master_seed = 1;
  const std::vector<SweepLevel> levels{{0.1, 0.0}, {0.2, 0.0}};
  const auto records = run_sweep(c, levels);
  REQUIRE(records.size() == 10);
  for (std::size_t k = 0; k < records.size(); ++k) CHECK(records[k].trial_id == k);
  CHECK(records[7].delta_s == 0.2);
}

TEST_CASE("quantiles and summaries") {
  const std::vector<double> data{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(quantile_sorted(data, 0.0) == 1.0);
  CHECK(quantile_sorted(data, 1.0) == 5.0);
  CHECK(quantile_sorted(data, 0.5) == 3.0);
  CHECK(quantile_sorted(data, 0.25) == 2.0);
  CHECK(quantile_sorted(data, 0.1) == doctest::Approx(1.4));

  TrialRecord single;
  single.valid = true;
  single.delta_s = 0.3;
  single.gap_direct = {0.2};
  single.relative_gap = {0.25};
  const auto rows = summarize(std::vector<TrialRecord>{single});
  REQUIRE(rows.size() == 1);
  for (const double q : {rows[0].q05, rows[0].q25, rows[0].q50, rows[0].q75, rows[0].q95}) {
    CHECK(q == 0.25);
  }

  TrialRecord sym;
  sym.valid = true;
  sym.gap_direct = {0, 0, 0, 0, 0, 0};
  sym.relative_gap = {-3.0, -1.0, -0.5, 0.5, 1.0, 3.0};
  TrialRecord failed;
  failed.valid = false;
  const auto srows = summarize(std::vector<TrialRecord>{sym, failed});
  CHECK(srows[0].q50 == doctest::Approx(srows[0].mean));
  CHECK(srows[0].share_negative == 0.5);
  CHECK(srows[0].dropped == 1);
  CHECK(srows[0].count == 6);

  CHECK_THROWS_AS(summarize(std::vector<TrialRecord>{}), InputError);
}

TEST_CASE("relative-gap spread widens with shock misalignment") {
  McConfig c;
  c.trials = 400;
  c.master_seed = 2024;
  std::vector<SweepLevel> levels;
  for (int k = 1; k <= 5; ++k) levels.push_back({0.2 * k, 0.0});
  const auto rows = summarize(run_sweep(c, levels, resolve_thread_count()));
  int inversions = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].iqr() < rows[k - 1].iqr()) ++inversions;
  }
  CHECK(inversions <= 1);
}

TEST_CASE("golden summary") {
  McConfig c;
  c.trials = 50;
  c.master_seed = 12345;
  const std::vector<SweepLevel> levels{{0.1, 0.0}, {0.5, 0.0}, {1.0, 0.0}};
  std::ostringstream os;
  const auto records = run_sweep(c, levels, 2);
  const auto rows = summarize(records);
  io::write_summary_csv(os, rows);
  const auto golden =
      io::read_file(std::filesystem::path(GAPLAB_TEST_DATA_DIR) / "golden_summary.csv");
  CHECK(os.str() == golden);
}

TEST_CASE("resolve_thread_count") {
  CHECK(resolve_thread_count(1) == 1);
  CHECK(resolve_thread_count() >= 1);
}
