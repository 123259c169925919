#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gaplab/centrality.hpp"
#include "gaplab/constructions.hpp"
#include "gaplab/equilibrium.hpp"
#include "gaplab/game.hpp"
#include "gaplab/gap.hpp"
#include "gaplab/montecarlo.hpp"

// JSON and CSV formats. Parsing failures throw InputError with a
// JSON-pointer-style location ("$.P[2][0]") or the parser's byte offset.
namespace gaplab::io {

// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// {"block_sizes":[int], "P":[[real]], "epsilon":[real]}
NetworkGame parse_game(const std::string& text);
std::string game_to_json(const NetworkGame& game, int indent = 2);

// {"base": <game>, "conjectures":[{"player":int, "alpha":real?,
//  "P":[[real]]?, "epsilon":[real]?}]}; omitted fields and players fall
// back to the base game.
ConjectureProfile parse_profile(const std::string& text);
std::string profile_to_json(const ConjectureProfile& profile, int indent = 2);

// True when the document has a "base" key.
bool looks_like_profile(const std::string& text);

std::string equilibrium_to_json(const Equilibrium& eq,
                                const ValidationReport& report, int indent = 2);
std::string gap_reports_to_json(std::span<const GapReport> reports,
                                int indent = 2);
std::string bonacich_to_json(std::span<const CentralityProfile> profiles,
                             int indent = 2);
std::string pair_centrality_to_json(const PairCentrality& pair, int indent = 2);
std::string certificate_to_json(const Certificate& cert, int indent = 2);
Certificate parse_certificate(const std::string& text);
std::string validation_to_json(const ValidationReport& report, int indent = 2);

// McConfig from a JSON object; keys mirror the CLI flags
// (block_sizes, mode, delta_s, delta_g, target_sv, trials, seed,
// fixed_network). Missing keys keep the values already in `base`.
McConfig parse_mc_config(const std::string& text, McConfig base = {});

// trial_id,seed,player,delta_s,delta_g,gap_direct,relative_gap,valid
void write_trials_csv(std::ostream& os, std::span<const TrialRecord> records);
// delta_s,delta_g,count,dropped,q05,q25,q50,q75,q95,mean,share_negative
void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows);

struct GapSweepRow {
  std::size_t instance_id = 0;
  int player = 0;
  double gap_direct = 0.0;
  std::optional<double> gap_closed;
  std::optional<double> bound;
  std::optional<double> rel_gap;
};
// instance_id,player,gap_direct,gap_closed,bound,rel_gap
void write_gap_sweep_csv(std::ostream& os, std::span<const GapSweepRow> rows);

// Dense matrix as headerless CSV.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);

}  // namespace gaplab::io
