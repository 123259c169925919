#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaplab/centrality.hpp"
#include "gaplab/constructions.hpp"
#include "gaplab/equilibrium.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/gap.hpp"
#include "gaplab/io.hpp"
#include "gaplab/montecarlo.hpp"

namespace {

using namespace gaplab;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitInput = 2;

// Writes to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  io::write_file(path, text);
}

ConjectureProfile load_profile(const std::string& path) {
  const std::string text = io::read_file(path);
  if (io::looks_like_profile(text)) return io::parse_profile(text);
  return ConjectureProfile::homogeneous(io::parse_game(text));
}

struct SolveArgs {
  std::string game;
};

int run_solve(const SolveArgs& a) {
  const NetworkGame game = io::parse_game(io::read_file(a.game));
  const auto report = validate_game(game);
  const auto eq = nash_equilibrium(game.interaction(), game.epsilon());
  std::cout << io::equilibrium_to_json(eq, report) << '\n';
  for (const auto& w : eq.warnings) std::cerr << "warning: " << w << '\n';
  if (!report.passed()) {
    std::cerr << "error: game fails validation (lambda_max of the symmetric "
                 "part is "
              << report.max_sym_eigenvalue << ")\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct GapArgs {
  std::string profile;
  bool closed_form = false;
  bool bound = false;
  bool per_pair = false;
  std::optional<double> delta;
  std::string format = "table";
  std::string certificate;
  std::string out;
};

std::string optional_cell(const std::optional<double>& v) {
  return v ? io::format_double(*v) : "-";
}

std::string gap_table(const std::vector<GapReport>& reports, bool per_pair) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "player" << std::setw(24) << "predicted"
     << std::setw(24) << "realized" << std::setw(24) << "gap_direct"
     << std::setw(24) << "gap_closed" << std::setw(24) << "bound"
     << "rel_gap\n";
  for (const auto& r : reports) {
    os << std::setw(8) << r.player << std::setw(24)
       << io::format_double(r.predicted_cost) << std::setw(24)
       << io::format_double(r.realized_cost) << std::setw(24)
       << io::format_double(r.gap_direct) << std::setw(24)
       << optional_cell(r.gap_closed_form) << std::setw(24)
       << optional_cell(r.bound) << optional_cell(relative_gap(r)) << '\n';
    if (per_pair) {
      for (const auto& t : r.per_pair_terms) {
        os << "  pair (" << r.player << ", " << t.j
           << "): " << io::format_double(t.contribution) << '\n';
      }
    }
  }
  return os.str();
}

int run_gap(const GapArgs& a) {
  const auto profile = load_profile(a.profile);
  GapOptions opts;
  opts.closed_form = a.closed_form || a.per_pair;
  opts.bound = a.bound;
  opts.delta = a.delta;
  auto reports = analyze_gaps(profile, opts);
  if (!a.per_pair) {
    for (auto& r : reports) r.per_pair_terms.clear();
  }

  if (a.format == "json") {
    emit(a.out, io::gap_reports_to_json(reports));
  } else if (a.format == "csv") {
    std::vector<io::GapSweepRow> rows;
    for (const auto& r : reports) {
      rows.push_back({0, r.player, r.gap_direct, r.gap_closed_form, r.bound,
                      relative_gap(r)});
    }
    std::ostringstream os;
    io::write_gap_sweep_csv(os, rows);
    emit(a.out, os.str());
  } else {
    emit(a.out, gap_table(reports, a.per_pair));
  }

  int status = kExitOk;
  for (const auto& r : reports) {
    if (r.bound && r.gap_direct > *r.bound + kAlgebraicTolerance * (1 + std::abs(r.gap_direct))) {
      std::cerr << "error: player " << r.player << " gap exceeds its bound\n";
      status = kExitNumerical;
    }
  }
  if (!a.certificate.empty()) {
    const Certificate cert = io::parse_certificate(io::read_file(a.certificate));
    const auto big_m = cert.parameter("M");
    if (!big_m) throw InputError("certificate has no parameter M");
    for (const auto& r : reports) {
      if (!(r.gap_direct > *big_m)) {
        std::cerr << "error: player " << r.player << " gap "
                  << io::format_double(r.gap_direct)
                  << " does not exceed the certified M = "
                  << io::format_double(*big_m) << '\n';
        status = kExitNumerical;
      }
    }
  }
  return status;
}

struct CentralityArgs {
  std::string input;
  std::string kind = "bonacich";
  std::optional<int> i;
  std::optional<int> j;
  std::string csv;
};

int run_centrality(const CentralityArgs& a) {
  const auto profile = load_profile(a.input);
  if (a.kind == "bonacich") {
    // Bonacich centrality of the first conjecture, which is the base game
    // for a plain game file.
    const auto profiles = bonacich(profile.conjecture(0).network);
    std::cout << io::bonacich_to_json(profiles) << '\n';
    return kExitOk;
  }
  if (!a.i || !a.j) {
    throw InputError("--kind " + a.kind + " requires --i and --j");
  }
  PairCentrality pair;
  if (a.kind == "shock") {
    pair = shock_misspec_centrality(profile.conjecture(0).network, *a.i, *a.j);
  } else {
    profile.structure().check_player(*a.i);
    profile.structure().check_player(*a.j);
    pair = graph_misspec_centrality(profile.conjecture(*a.i).network,
                                    profile.conjecture(*a.j).network, *a.i,
                                    *a.j);
  }
  if (!a.csv.empty()) {
    std::ostringstream os;
    io::write_matrix_csv(os, pair.matrix);
    emit(a.csv, os.str());
    if (a.csv != "-") std::cout << io::pair_centrality_to_json(pair) << '\n';
  } else {
    std::cout << io::pair_centrality_to_json(pair) << '\n';
  }
  return kExitOk;
}

struct ConstructArgs {
  std::string kind;
  double delta = 0.0;
  double big_m = 0.0;
  std::optional<double> gamma;
  std::optional<double> beta;
  std::string shock_pattern = "uniform";
  std::string out_profile;
  std::string out_certificate;
};

int run_construct(const ConstructArgs& a) {
  if (a.kind == "graph" && a.beta) throw InputError("--beta applies to shock only");
  const Construction c =
      a.kind == "shock"
          ? build_shock_cycle(a.delta, a.big_m, a.gamma, a.beta)
          : build_graph_cycle(a.delta, a.big_m, a.gamma,
                              parse_graph_shock_pattern(a.shock_pattern));
  if (!a.out_profile.empty()) {
    emit(a.out_profile, io::profile_to_json(c.profile));
  }
  emit(a.out_certificate, io::certificate_to_json(c.certificate));
  if (!c.certificate.passed()) {
    for (const auto& check : c.certificate.checks) {
      if (!check.passed) {
        std::cerr << "check failed: " << check.name << " (" << check.detail
                  << ")\n";
      }
    }
    return kExitNumerical;
  }
  return kExitOk;
}

struct McArgs {
  std::string config_file;
  std::string mode;
  std::vector<double> delta_s;
  std::vector<double> delta_g;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> players;
  std::vector<int> block_sizes;
  std::optional<double> target_sv;
  bool fixed_network = false;
  int threads = 0;
  std::string out;
  std::string summary;
};

int run_mc(const McArgs& a) {
  McConfig config;
  if (!a.config_file.empty()) {
    config = io::parse_mc_config(io::read_file(a.config_file), config);
  }
  if (!a.mode.empty()) config.mode = parse_mc_mode(a.mode);
  if (a.trials) config.trials = *a.trials;
  if (a.seed) config.master_seed = *a.seed;
  if (a.players && !a.block_sizes.empty()) {
    throw InputError("give either --players or --block-sizes, not both");
  }
  if (a.players) {
    if (*a.players < 1) throw InputError("--players must be >= 1");
    config.block_sizes.assign(static_cast<std::size_t>(*a.players), 1);
  }
  if (!a.block_sizes.empty()) config.block_sizes = a.block_sizes;
  if (a.target_sv) config.target_sv = *a.target_sv;
  if (a.fixed_network) config.fixed_network = true;

  const std::vector<double> ds =
      a.delta_s.empty() ? std::vector<double>{config.delta_s} : a.delta_s;
  const std::vector<double> dg =
      a.delta_g.empty() ? std::vector<double>{config.delta_g} : a.delta_g;
  std::vector<SweepLevel> levels;
  for (const double s : ds) {
    for (const double g : dg) levels.push_back({s, g});
  }
  for (const auto& level : levels) {
    McConfig probe = config;
    probe.delta_s = level.delta_s;
    probe.delta_g = level.delta_g;
    probe.validate();
  }

  const int threads = resolve_thread_count(a.threads);
  const auto records = run_sweep(config, levels, threads);

  std::ostringstream trials_csv;
  io::write_trials_csv(trials_csv, records);
  emit(a.out, trials_csv.str());
  if (!a.summary.empty()) {
    std::ostringstream summary_csv;
    io::write_summary_csv(summary_csv, summarize(records));
    emit(a.summary, summary_csv.str());
  }

  std::size_t failed = 0;
  for (const auto& r : records) {
    if (!r.valid) {
      if (failed++ < 5) {
        std::cerr << "trial " << r.trial_id << " failed: " << r.error << '\n';
      }
    }
  }
  if (failed > 0) {
    std::cerr << failed << " of " << records.size() << " trials failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-to-real gap analysis for quadratic network games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gaplab 0.1.0");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Nash equilibrium of a game file");
  solve->add_option("game", solve_args.game, "Game JSON file")->required();

  GapArgs gap_args;
  auto* gap = app.add_subcommand(
      "gap", "Game-to-real gap of every player in a profile or game file");
  gap->add_option("profile", gap_args.profile, "Profile or game JSON file")
      ->required();
  gap->add_flag("--closed-form", gap_args.closed_form,
                "Add the closed form selected by the profile shape");
  gap->add_flag("--bound", gap_args.bound, "Add the misalignment bound");
  gap->add_flag("--per-pair", gap_args.per_pair,
                "Show the closed form's pairwise terms");
  gap->add_option("--delta", gap_args.delta,
                  "Misalignment bound (default: measured from the profile)");
  gap->add_option("--format", gap_args.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  gap->add_option("--certificate", gap_args.certificate,
                  "Certificate whose M every gap must exceed");
  gap->add_option("--out", gap_args.out, "Output file (default stdout)");

  CentralityArgs cen_args;
  auto* cen = app.add_subcommand("centrality", "Centrality measures");
  cen->add_option("input", cen_args.input, "Game or profile JSON file")
      ->required();
  cen->add_option("--kind", cen_args.kind, "bonacich, shock or graph")
      ->check(CLI::IsMember({"bonacich", "shock", "graph"}));
  cen->add_option("--i", cen_args.i, "First player of the pair (0-based)");
  cen->add_option("--j", cen_args.j, "Second player of the pair (0-based)");
  cen->add_option("--csv", cen_args.csv, "Write the pair matrix as CSV");

  ConstructArgs con_args;
  auto* con = app.add_subcommand(
      "construct", "Three-player instances with large gaps under small misalignment");
  con->add_option("kind", con_args.kind, "shock or graph")
      ->required()
      ->check(CLI::IsMember({"shock", "graph"}));
  con->add_option("--delta", con_args.delta, "Misalignment budget")->required();
  con->add_option("--M", con_args.big_m, "Gap every player must exceed")
      ->required();
  con->add_option("--gamma", con_args.gamma, "Fix gamma instead of searching");
  con->add_option("--beta", con_args.beta,
                  "shock only: own-shock level instead of the interval midpoint");
  con->add_option("--shock-pattern", con_args.shock_pattern,
                  "graph only: uniform or alternating")
      ->check(CLI::IsMember({"uniform", "alternating"}));
  con->add_option("--out-profile", con_args.out_profile, "Profile JSON output");
  con->add_option("--out-certificate", con_args.out_certificate,
                  "Certificate JSON output (default stdout)");

  McArgs mc_args;
  auto* mc = app.add_subcommand("mc", "Monte Carlo relative-gap experiments");
  mc->add_option("--config", mc_args.config_file, "JSON config file");
  mc->add_option("--mode", mc_args.mode, "shock, graph or both")
      ->check(CLI::IsMember({"shock", "graph", "both"}));
  mc->add_option("--delta-s", mc_args.delta_s, "Shock misalignment levels")
      ->delimiter(',');
  mc->add_option("--delta-g", mc_args.delta_g, "Alpha spread levels")
      ->delimiter(',');
  mc->add_option("--trials", mc_args.trials, "Trials per level");
  mc->add_option("--seed", mc_args.seed, "Master seed");
  mc->add_option("--players", mc_args.players, "Number of scalar players");
  mc->add_option("--block-sizes", mc_args.block_sizes, "Action dimension per player")
      ->delimiter(',');
  mc->add_option("--target-sv", mc_args.target_sv,
                 "Largest singular value of each random network");
  mc->add_flag("--fixed-network", mc_args.fixed_network,
               "Share one network across all trials");
  mc->add_option("--threads", mc_args.threads,
                 "Worker threads (0: hardware; capped by GAPLAB_THREADS)");
  mc->add_option("--out", mc_args.out, "Per-trial CSV (default stdout)");
  mc->add_option("--summary", mc_args.summary, "Quantile summary CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*gap) return run_gap(gap_args);
    if (*cen) return run_centrality(cen_args);
    if (*con) return run_construct(con_args);
    if (*mc) return run_mc(mc_args);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInput;
}
