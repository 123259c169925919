#include "gaplab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "gaplab/equilibrium.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/gap.hpp"
#include "gaplab/linalg.hpp"

namespace gaplab {

namespace {

constexpr int kMaxShockRedraws = 10;
constexpr int kMaxAlphaResamples = 1000;
// Stream reserved for the shared network of the fixed-network protocol.
constexpr std::uint64_t kFixedStream = ~std::uint64_t{0};

Eigen::VectorXd uniform_vector(CounterRng& rng, int m) {
  Eigen::VectorXd v(m);
  for (int k = 0; k < m; ++k) v(k) = rng.uniform();
  return v;
}

struct SharedDraw {
  InteractionMatrix network;
  Eigen::VectorXd shock;
};

SharedDraw draw_network_and_shock(CounterRng& rng, const BlockStructure& s,
                                  double target_sv) {
  auto p = gen_random_network(rng, s, target_sv);
  Eigen::VectorXd eps = uniform_vector(rng, s.dim()).array() + 1.0;
  return {std::move(p), std::move(eps)};
}

}  // namespace

const char* to_string(McMode mode) {
  switch (mode) {
    case McMode::shock:
      return "shock";
    case McMode::graph:
      return "graph";
    case McMode::both:
      return "both";
  }
  return "unknown";
}

McMode parse_mc_mode(const std::string& name) {
  if (name == "shock") return McMode::shock;
  if (name == "graph") return McMode::graph;
  if (name == "both") return McMode::both;
  throw InputError("unknown mode '" + name + "' (expected shock, graph or both)");
}

void McConfig::validate() const {
  const BlockStructure s(block_sizes);
  if (!(delta_s >= 0.0)) throw InputError("delta_s must be >= 0");
  if (!(delta_g >= 0.0)) throw InputError("delta_g must be >= 0");
  if (!(delta_g < 2.0)) throw InputError("delta_g must be < 2 to keep alpha > 0");
  if (!(target_sv > 0.0 && target_sv < 1.0)) {
    throw InputError("target_sv must lie in (0, 1)");
  }
  if (trials < 1) throw InputError("trials must be >= 1");
  if (s.players() < 2 && delta_s > 0.0 && mode != McMode::graph) {
    throw InputError("shock misalignment needs at least two players");
  }
}

InteractionMatrix gen_random_network(CounterRng& rng,
                                     const BlockStructure& structure,
                                     double target_sv) {
  if (!(target_sv > 0.0 && target_sv < 1.0)) {
    throw InputError("target_sv must lie in (0, 1)");
  }
  const int m = structure.dim();
  Eigen::MatrixXd data(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) data(r, c) = rng.uniform();
  }
  auto p = InteractionMatrix::with_zeroed_diagonal(structure, std::move(data));
  const double sv = linalg::max_singular_value(p.matrix());
  if (sv == 0.0) return p;
  return p.scaled(target_sv / sv);
}

std::vector<Eigen::VectorXd> gen_shock_profile(CounterRng& rng,
                                               const BlockStructure& structure,
                                               double delta_s) {
  if (!(delta_s >= 0.0)) throw InputError("delta_s must be >= 0");
  const int n = structure.players();
  const int m = structure.dim();
  if (n < 2 && delta_s > 0.0) {
    throw InputError("shock misalignment needs at least two players");
  }
  for (int attempt = 0; attempt < kMaxShockRedraws; ++attempt) {
    std::vector<Eigen::VectorXd> draws;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < n; ++j) {
      draws.push_back(uniform_vector(rng, m));
      mean += draws.back();
    }
    mean /= n;
    double spread = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        spread = std::max(spread, (draws[a] - draws[b]).norm());
      }
    }
    if (delta_s > 0.0 && !(spread > 0.0)) continue;
    const double scale = delta_s > 0.0 ? delta_s / spread : 0.0;
    for (auto& x : draws) {
      x = (mean + scale * (x - mean)).array() + 1.0;
    }
    return draws;
  }
  throw NumericalError("shock draws degenerate after " +
                       std::to_string(kMaxShockRedraws) + " attempts");
}

std::vector<double> gen_alpha_profile(CounterRng& rng, int players,
                                      double delta_g) {
  if (!(delta_g >= 0.0 && delta_g < 2.0)) {
    throw InputError("delta_g must lie in [0, 2)");
  }
  std::vector<double> alphas(static_cast<std::size_t>(players));
  for (auto& a : alphas) a = rng.uniform(1.0 - 0.5 * delta_g, 1.0 + 0.5 * delta_g);
  return alphas;
}

TrialRecord run_trial(const McConfig& config, std::uint64_t trial_id) {
  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.seed = CounterRng::stream_key(config.master_seed, trial_id);
  rec.delta_s = config.delta_s;
  rec.delta_g = config.delta_g;
  try {
    const BlockStructure s(config.block_sizes);
    const int n = s.players();
    CounterRng rng(rec.seed);

    std::optional<SharedDraw> shared;
    if (config.fixed_network) {
      CounterRng fixed(
          CounterRng::stream_key(config.master_seed, kFixedStream));
      shared = draw_network_and_shock(fixed, s, config.target_sv);
    } else {
      shared = draw_network_and_shock(rng, s, config.target_sv);
    }
    const InteractionMatrix& p = shared->network;

    std::vector<Eigen::VectorXd> shocks;
    if (config.mode == McMode::graph) {
      shocks.assign(static_cast<std::size_t>(n), shared->shock);
    } else {
      shocks = gen_shock_profile(rng, s, config.delta_s);
    }

    std::vector<double> alphas(static_cast<std::size_t>(n), 1.0);
    if (config.mode != McMode::shock) {
      const double lambda = p.symmetric_max_eigenvalue();
      for (;;) {
        alphas = gen_alpha_profile(rng, n, config.delta_g);
        const bool ok = std::all_of(alphas.begin(), alphas.end(), [&](double a) {
          return a * lambda < 1.0 - kMonotonicityTolerance;
        });
        if (ok) break;
        if (++rec.resamples >= kMaxAlphaResamples) {
          throw NumericalError("no monotone alpha draw after " +
                               std::to_string(kMaxAlphaResamples) + " attempts");
        }
      }
    }

    const auto profile =
        config.mode == McMode::shock
            ? ConjectureProfile::shared_network(p, std::move(shocks))
            : ConjectureProfile::scaled(p, std::move(alphas), std::move(shocks));
    for (const auto& r : gap_direct_all(profile)) {
      rec.gap_direct.push_back(r.gap_direct);
      rec.relative_gap.push_back(relative_gap(r));
    }
    rec.valid = true;
  } catch (const std::exception& e) {
    rec.valid = false;
    rec.error = e.what();
    rec.gap_direct.clear();
    rec.relative_gap.clear();
  }
  return rec;
}

std::vector<TrialRecord> run_trials(const McConfig& config, int threads,
                                    std::uint64_t first_trial_id) {
  config.validate();
  const auto total = static_cast<std::size_t>(config.trials);
  std::vector<TrialRecord> out(total);
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(total)));
  if (workers == 1) {
    for (std::size_t k = 0; k < total; ++k) {
      out[k] = run_trial(config, first_trial_id + k);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < total;
             k = next.fetch_add(1)) {
          out[k] = run_trial(config, first_trial_id + k);
        }
      });
    }
  }
  return out;
}

std::vector<TrialRecord> run_sweep(const McConfig& config,
                                   std::span<const SweepLevel> levels,
                                   int threads) {
  std::vector<TrialRecord> out;
  out.reserve(levels.size() * static_cast<std::size_t>(config.trials));
  for (std::size_t k = 0; k < levels.size(); ++k) {
    McConfig level = config;
    level.delta_s = levels[k].delta_s;
    level.delta_g = levels[k].delta_g;
    auto records = run_trials(
        level, threads, static_cast<std::uint64_t>(k) * config.trials);
    std::move(records.begin(), records.end(), std::back_inserter(out));
  }
  return out;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InputError("quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<SummaryRow> summarize(std::span<const TrialRecord> records) {
  if (records.empty()) throw InputError("summarize: no records");
  struct Group {
    SweepLevel level;
    std::vector<double> values;
    std::size_t dropped = 0;
  };
  std::vector<Group> groups;
  for (const auto& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.level.delta_s == r.delta_s && g.level.delta_g == r.delta_g;
    });
    if (it == groups.end()) {
      groups.push_back({{r.delta_s, r.delta_g}, {}, 0});
      it = std::prev(groups.end());
    }
    if (!r.valid) {
      ++it->dropped;
      continue;
    }
    for (const auto& v : r.relative_gap) {
      if (v) {
        it->values.push_back(*v);
      } else {
        ++it->dropped;
      }
    }
  }
  std::vector<SummaryRow> out;
  for (auto& g : groups) {
    SummaryRow row;
    row.delta_s = g.level.delta_s;
    row.delta_g = g.level.delta_g;
    row.count = g.values.size();
    row.dropped = g.dropped;
    if (!g.values.empty()) {
      std::sort(g.values.begin(), g.values.end());
      row.q05 = quantile_sorted(g.values, 0.05);
      row.q25 = quantile_sorted(g.values, 0.25);
      row.q50 = quantile_sorted(g.values, 0.50);
      row.q75 = quantile_sorted(g.values, 0.75);
      row.q95 = quantile_sorted(g.values, 0.95);
      double sum = 0.0;
      std::size_t negative = 0;
      for (double v : g.values) {
        sum += v;
        if (v < 0.0) ++negative;
      }
      row.mean = sum / static_cast<double>(g.values.size());
      row.share_negative =
          static_cast<double>(negative) / static_cast<double>(g.values.size());
    }
    out.push_back(row);
  }
  return out;
}

int resolve_thread_count(int requested) {
  int count = requested > 0
                  ? requested
                  : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GAPLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) count = std::min(count, cap);
  }
  return std::max(count, 1);
}

}  // namespace gaplab
