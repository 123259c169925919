#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaplab/game.hpp"
#include "gaplab/rng.hpp"

namespace gaplab {

enum class McMode { shock, graph, both };

const char* to_string(McMode mode);
McMode parse_mc_mode(const std::string& name);

struct McConfig {
  std::vector<int> block_sizes = {1, 1, 1, 1, 1};
  McMode mode = McMode::shock;
  double delta_s = 0.0;  // max pairwise shock distance
  double delta_g = 0.0;  // width of the α interval around 1
  double target_sv = 0.75;
  int trials = 1;
  std::uint64_t master_seed = 0;
  // One network (and, in graph mode, one shock) shared by every trial
  // instead of a fresh draw per trial.
  bool fixed_network = false;

  // Throws InputError on out-of-range fields.
  void validate() const;
};

struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::uint64_t seed = 0;  // stream key; a function of (master_seed, trial_id)
  double delta_s = 0.0;
  double delta_g = 0.0;
  std::vector<double> gap_direct;                  // per player
  std::vector<std::optional<double>> relative_gap; // nullopt: |predicted| tiny
  bool valid = false;   // trial completed
  int resamples = 0;    // α draws rejected for violating monotonicity
  std::string error;    // set when !valid
};

// Off-diagonal blocks i.i.d. U[0,1], diagonal blocks zero, rescaled so the
// largest singular value is target_sv. A single player yields the zero matrix.
InteractionMatrix gen_random_network(CounterRng& rng,
                                     const BlockStructure& structure,
                                     double target_sv);

// Per-player shock conjectures: U[0,1] draws whose deviations from their
// mean are rescaled to a max pairwise distance of delta_s, then shifted by 1.
std::vector<Eigen::VectorXd> gen_shock_profile(CounterRng& rng,
                                               const BlockStructure& structure,
                                               double delta_s);

// n i.i.d. draws on [1 - delta_g/2, 1 + delta_g/2].
std::vector<double> gen_alpha_profile(CounterRng& rng, int players,
                                      double delta_g);

// One trial; never throws on numerical failure (recorded in the record).
TrialRecord run_trial(const McConfig& config, std::uint64_t trial_id);

// Trials first_trial_id .. first_trial_id + trials - 1, ordered by id.
// Output is identical for every thread count.
std::vector<TrialRecord> run_trials(const McConfig& config, int threads = 1,
                                    std::uint64_t first_trial_id = 0);

struct SweepLevel {
  double delta_s = 0.0;
  double delta_g = 0.0;
};

// Level k uses trial ids k·trials .. (k+1)·trials - 1.
std::vector<TrialRecord> run_sweep(const McConfig& config,
                                   std::span<const SweepLevel> levels,
                                   int threads = 1);

struct SummaryRow {
  double delta_s = 0.0;
  double delta_g = 0.0;
  std::size_t count = 0;    // player outcomes with a defined relative gap
  std::size_t dropped = 0;  // undefined relative gaps and failed trials
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
  double mean = 0.0;
  double share_negative = 0.0;

  double iqr() const noexcept { return q75 - q25; }
};

// Relative-gap distribution per (delta_s, delta_g), in order of first
// appearance. Throws InputError on empty input.
std::vector<SummaryRow> summarize(std::span<const TrialRecord> records);

// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

// Worker count: GAPLAB_THREADS when set, else hardware concurrency, capped
// by `requested` when positive.
int resolve_thread_count(int requested = 0);

}  // namespace gaplab
