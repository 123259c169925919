#include "gaplab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gaplab/errors.hpp"

namespace gaplab::io {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) +
                     ": " + e.what());
  }
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw InputError(path + "." + key + ": missing required field");
  }
  return *it;
}

double as_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw InputError(path + ": expected a number");
  return v.get<double>();
}

int as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw InputError(path + ": expected an integer");
  return v.get<int>();
}

std::vector<int> as_int_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw InputError(path + ": expected an array");
  std::vector<int> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(as_int(v[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Eigen::VectorXd as_vector(const Json& v, const std::string& path, int length) {
  if (!v.is_array()) throw InputError(path + ": expected an array");
  if (static_cast<int>(v.size()) != length) {
    throw InputError(path + ": expected " + std::to_string(length) +
                     " entries, got " + std::to_string(v.size()));
  }
  Eigen::VectorXd out(length);
  for (int k = 0; k < length; ++k) {
    out(k) = as_number(v[k], path + "[" + std::to_string(k) + "]");
  }
  return out;
}

Eigen::MatrixXd as_matrix(const Json& v, const std::string& path, int m) {
  if (!v.is_array()) throw InputError(path + ": expected an array of rows");
  if (static_cast<int>(v.size()) != m) {
    throw InputError(path + ": expected " + std::to_string(m) +
                     " rows, got " + std::to_string(v.size()));
  }
  Eigen::MatrixXd out(m, m);
  for (int r = 0; r < m; ++r) {
    out.row(r) =
        as_vector(v[r], path + "[" + std::to_string(r) + "]", m).transpose();
  }
  return out;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.push_back(vector_json(m.row(r).transpose()));
  }
  return out;
}

Json optional_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json game_json(const BlockStructure& s, const Eigen::MatrixXd& p,
               const Eigen::VectorXd& eps) {
  Json out;
  out["block_sizes"] = std::vector<int>(s.sizes().begin(), s.sizes().end());
  out["P"] = matrix_json(p);
  out["epsilon"] = vector_json(eps);
  return out;
}

NetworkGame game_from(const Json& doc, const std::string& path) {
  const BlockStructure s(
      as_int_array(require(doc, "block_sizes", path), path + ".block_sizes"));
  auto p = as_matrix(require(doc, "P", path), path + ".P", s.dim());
  auto eps = as_vector(require(doc, "epsilon", path), path + ".epsilon", s.dim());
  try {
    return {InteractionMatrix(s, std::move(p)), std::move(eps)};
  } catch (const InputError& e) {
    throw InputError(path + "." + e.what());
  }
}

std::string dump(const Json& j, int indent) {
  return j.dump(indent) + (indent >= 0 ? "\n" : "");
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

NetworkGame parse_game(const std::string& text) {
  return game_from(parse_json(text), "$");
}

std::string game_to_json(const NetworkGame& game, int indent) {
  return dump(game_json(game.structure(), game.interaction().matrix(),
                        game.epsilon()),
              indent);
}

bool looks_like_profile(const std::string& text) {
  const Json doc = parse_json(text);
  return doc.is_object() && doc.contains("base");
}

ConjectureProfile parse_profile(const std::string& text) {
  const Json doc = parse_json(text);
  const NetworkGame base = game_from(require(doc, "base", "$"), "$.base");
  const auto& s = base.structure();
  const int n = s.players();

  struct Entry {
    std::optional<double> alpha;
    std::optional<Eigen::MatrixXd> p;
    std::optional<Eigen::VectorXd> eps;
  };
  std::vector<Entry> entries(static_cast<std::size_t>(n));
  bool any_alpha = false;
  bool any_p = false;
  std::set<int> seen;
  const Json empty = Json::array();
  const Json& list = doc.contains("conjectures") ? doc["conjectures"] : empty;
  if (!list.is_array()) throw InputError("$.conjectures: expected an array");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = "$.conjectures[" + std::to_string(k) + "]";
    const Json& item = list[k];
    const int player = as_int(require(item, "player", path), path + ".player");
    if (player < 0 || player >= n) {
      throw InputError(path + ".player: index " + std::to_string(player) +
                       " out of range [0, " + std::to_string(n) + ")");
    }
    if (!seen.insert(player).second) {
      throw InputError(path + ".player: duplicate entry for player " +
                       std::to_string(player));
    }
    Entry& e = entries[player];
    if (item.contains("alpha")) {
      e.alpha = as_number(item["alpha"], path + ".alpha");
      if (!(*e.alpha > 0.0)) throw InputError(path + ".alpha: must be > 0");
      any_alpha = true;
    }
    if (item.contains("P")) {
      if (e.alpha) {
        throw InputError(path + ": give either alpha or P, not both");
      }
      e.p = as_matrix(item["P"], path + ".P", s.dim());
      any_p = true;
    }
    if (item.contains("epsilon")) {
      e.eps = as_vector(item["epsilon"], path + ".epsilon", s.dim());
    }
  }
  if (any_alpha && any_p) {
    throw InputError(
        "$.conjectures: alpha-scaled and explicit-P conjectures cannot be "
        "mixed in one profile");
  }

  std::vector<Eigen::VectorXd> shocks;
  for (const auto& e : entries) shocks.push_back(e.eps.value_or(base.epsilon()));

  if (any_alpha) {
    std::vector<double> alphas;
    for (const auto& e : entries) alphas.push_back(e.alpha.value_or(1.0));
    return ConjectureProfile::scaled(base.interaction(), std::move(alphas),
                                     std::move(shocks));
  }
  std::vector<Conjecture> conjectures;
  for (int j = 0; j < n; ++j) {
    const auto& e = entries[j];
    if (e.p) {
      try {
        conjectures.push_back({InteractionMatrix(s, *e.p), shocks[j]});
      } catch (const InputError& err) {
        throw InputError("$.conjectures[player " + std::to_string(j) + "]." +
                         err.what());
      }
    } else {
      conjectures.push_back({base.interaction(), shocks[j]});
    }
  }
  return ConjectureProfile::general(std::move(conjectures));
}

std::string profile_to_json(const ConjectureProfile& profile, int indent) {
  const auto& s = profile.structure();
  const auto& first = profile.conjecture(0);
  Json doc;
  Json list = Json::array();
  if (const auto& scaling = profile.scaling()) {
    doc["base"] = game_json(s, scaling->base.matrix(), first.shock);
    for (int j = 0; j < profile.players(); ++j) {
      Json item;
      item["player"] = j;
      item["alpha"] = scaling->alphas[j];
      if (profile.conjecture(j).shock != first.shock) {
        item["epsilon"] = vector_json(profile.conjecture(j).shock);
      }
      list.push_back(std::move(item));
    }
  } else {
    doc["base"] = game_json(s, first.network.matrix(), first.shock);
    for (int j = 0; j < profile.players(); ++j) {
      const auto& c = profile.conjecture(j);
      Json item;
      item["player"] = j;
      if (!(c.network == first.network)) item["P"] = matrix_json(c.network.matrix());
      if (c.shock != first.shock) item["epsilon"] = vector_json(c.shock);
      list.push_back(std::move(item));
    }
  }
  doc["conjectures"] = std::move(list);
  return dump(doc, indent);
}

std::string validation_to_json(const ValidationReport& report, int indent) {
  Json v;
  v["max_sym_eigenvalue"] = report.max_sym_eigenvalue;
  v["min_singular_value"] = report.min_singular_value;
  v["condition_estimate"] = report.condition_estimate;
  v["monotone"] = report.monotone;
  v["zero_diagonal_blocks"] = report.zero_diagonal_blocks;
  v["passed"] = report.passed();
  return dump(v, indent);
}

std::string equilibrium_to_json(const Equilibrium& eq,
                                const ValidationReport& report, int indent) {
  Json doc;
  doc["equilibrium"] = vector_json(eq.action.values());
  Json blocks = Json::array();
  for (int i = 0; i < eq.action.structure().players(); ++i) {
    blocks.push_back(vector_json(eq.action.view(i)));
  }
  doc["blocks"] = std::move(blocks);
  doc["condition_estimate"] = eq.condition_estimate;
  doc["warnings"] = eq.warnings;
  doc["validation"] = Json::parse(validation_to_json(report, -1));
  return dump(doc, indent);
}

std::string gap_reports_to_json(std::span<const GapReport> reports,
                                int indent) {
  Json out = Json::array();
  for (const auto& r : reports) {
    Json item;
    item["player"] = r.player;
    item["predicted_cost"] = r.predicted_cost;
    item["realized_cost"] = r.realized_cost;
    item["gap_direct"] = r.gap_direct;
    item["gap_closed_form"] = optional_json(r.gap_closed_form);
    item["closed_form_kind"] =
        r.closed_form_kind ? Json(to_string(*r.closed_form_kind)) : Json(nullptr);
    item["bound"] = optional_json(r.bound);
    item["delta"] = optional_json(r.delta);
    item["relative_gap"] = optional_json(relative_gap(r));
    Json terms = Json::array();
    for (const auto& t : r.per_pair_terms) {
      terms.push_back({{"j", t.j}, {"contribution", t.contribution}});
    }
    item["per_pair_terms"] = std::move(terms);
    out.push_back(std::move(item));
  }
  return dump(out, indent);
}

std::string bonacich_to_json(std::span<const CentralityProfile> profiles,
                             int indent) {
  Json out = Json::array();
  for (const auto& p : profiles) {
    Json item;
    item["player"] = p.player;
    item["bonacich"] = vector_json(p.bonacich);
    out.push_back(std::move(item));
  }
  return dump(out, indent);
}

std::string pair_centrality_to_json(const PairCentrality& pair, int indent) {
  Json out;
  out["i"] = pair.i;
  out["j"] = pair.j;
  out["kind"] = pair.kind == PairKind::shock ? "shock" : "graph";
  out["matrix"] = matrix_json(pair.matrix);
  return dump(out, indent);
}

std::string certificate_to_json(const Certificate& cert, int indent) {
  Json doc;
  doc["construction"] = cert.construction;
  doc["passed"] = cert.passed();
  Json params = Json::object();
  for (const auto& p : cert.parameters) params[p.name] = p.value;
  doc["parameters"] = std::move(params);
  doc["pairwise_misalignment"] = cert.pairwise_misalignment;
  doc["gaps_direct"] = cert.gaps_direct;
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  doc["checks"] = std::move(checks);
  Json comparisons = Json::object();
  for (const auto& c : cert.comparisons) comparisons[c.name] = c.value;
  doc["comparisons"] = std::move(comparisons);
  doc["notes"] = cert.notes;
  Json trace = Json::array();
  for (const auto& t : cert.search_trace) trace.push_back({t.gamma, t.gap});
  doc["search_trace"] = std::move(trace);
  return dump(doc, indent);
}

Certificate parse_certificate(const std::string& text) {
  const Json doc = parse_json(text);
  Certificate cert;
  try {
    cert.construction = doc.at("construction").get<std::string>();
    for (const auto& [k, v] : doc.at("parameters").items()) {
      cert.parameters.push_back({k, v.get<double>()});
    }
    cert.pairwise_misalignment =
        doc.at("pairwise_misalignment").get<std::vector<double>>();
    cert.gaps_direct = doc.at("gaps_direct").get<std::vector<double>>();
    for (const auto& c : doc.at("checks")) {
      cert.checks.push_back({c.at("name").get<std::string>(),
                             c.at("passed").get<bool>(),
                             c.at("detail").get<std::string>()});
    }
    for (const auto& [k, v] : doc.at("comparisons").items()) {
      cert.comparisons.push_back({k, v.is_number() ? v.get<double>() : NAN});
    }
    cert.notes = doc.at("notes").get<std::vector<std::string>>();
    for (const auto& t : doc.at("search_trace")) {
      cert.search_trace.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("certificate: ") + e.what());
  }
  return cert;
}

McConfig parse_mc_config(const std::string& text, McConfig base) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw InputError("$: expected an object");
  if (doc.contains("block_sizes")) {
    base.block_sizes = as_int_array(doc["block_sizes"], "$.block_sizes");
  }
  if (doc.contains("players")) {
    base.block_sizes.assign(
        static_cast<std::size_t>(as_int(doc["players"], "$.players")), 1);
  }
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw InputError("$.mode: expected a string");
    base.mode = parse_mc_mode(doc["mode"].get<std::string>());
  }
  if (doc.contains("delta_s")) base.delta_s = as_number(doc["delta_s"], "$.delta_s");
  if (doc.contains("delta_g")) base.delta_g = as_number(doc["delta_g"], "$.delta_g");
  if (doc.contains("target_sv")) {
    base.target_sv = as_number(doc["target_sv"], "$.target_sv");
  }
  if (doc.contains("trials")) base.trials = as_int(doc["trials"], "$.trials");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      throw InputError("$.seed: expected an integer");
    }
    base.master_seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("fixed_network")) {
    if (!doc["fixed_network"].is_boolean()) {
      throw InputError("$.fixed_network: expected a boolean");
    }
    base.fixed_network = doc["fixed_network"].get<bool>();
  }
  return base;
}

void write_trials_csv(std::ostream& os, std::span<const TrialRecord> records) {
  os << "trial_id,seed,player,delta_s,delta_g,gap_direct,relative_gap,valid\n";
  for (const auto& r : records) {
    const std::string prefix = std::to_string(r.trial_id) + "," +
                               std::to_string(r.seed) + ",";
    const std::string deltas =
        format_double(r.delta_s) + "," + format_double(r.delta_g) + ",";
    if (!r.valid) {
      os << prefix << "," << deltas << ",,0\n";
      continue;
    }
    for (std::size_t p = 0; p < r.gap_direct.size(); ++p) {
      const auto& rel = r.relative_gap[p];
      os << prefix << p << "," << deltas << format_double(r.gap_direct[p])
         << "," << csv_optional(rel) << "," << (rel ? 1 : 0) << "\n";
    }
  }
}

void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows) {
  os << "delta_s,delta_g,count,dropped,q05,q25,q50,q75,q95,mean,"
        "share_negative\n";
  for (const auto& r : rows) {
    os << format_double(r.delta_s) << "," << format_double(r.delta_g) << ","
       << r.count << "," << r.dropped << "," << format_double(r.q05) << ","
       << format_double(r.q25) << "," << format_double(r.q50) << ","
       << format_double(r.q75) << "," << format_double(r.q95) << ","
       << format_double(r.mean) << "," << format_double(r.share_negative)
       << "\n";
  }
}

void write_gap_sweep_csv(std::ostream& os, std::span<const GapSweepRow> rows) {
  os << "instance_id,player,gap_direct,gap_closed,bound,rel_gap\n";
  for (const auto& r : rows) {
    os << r.instance_id << "," << r.player << "," << format_double(r.gap_direct)
       << "," << csv_optional(r.gap_closed) << "," << csv_optional(r.bound)
       << "," << csv_optional(r.rel_gap) << "\n";
  }
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ",";
      os << format_double(m(r, c));
    }
    os << "\n";
  }
}

}  // namespace gaplab::io
