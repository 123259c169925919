#include "gaplab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gaplab/equilibrium.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/gap.hpp"

namespace gaplab {

namespace {

constexpr double kGammaCap = 1.0 - 1e-12;
// Bisection accepts γ only when the closed-form gap clears M by this factor,
// leaving room for simulation rounding.
constexpr double kSearchMargin = 1e-9;
constexpr double kClosedFormAgreement = 1e-6;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool nondecreasing(const std::vector<TracePoint>& trace) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k].gap < trace[k - 1].gap) return false;
  }
  return true;
}

InteractionMatrix cycle(double gamma) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
  p(0, 2) = gamma;
  p(1, 0) = gamma;
  p(2, 1) = gamma;
  return {BlockStructure::scalar(3), std::move(p)};
}

double min_of(const std::vector<double>& v) {
  return *std::min_element(v.begin(), v.end());
}

}  // namespace

bool Certificate::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CertificateCheck& c) { return c.passed; });
}

std::optional<double> Certificate::parameter(const std::string& name) const {
  for (const auto& p : parameters) {
    if (p.name == name) return p.value;
  }
  return std::nullopt;
}

double shock_cycle_gap(double gamma, double beta) {
  const double g2 = gamma * gamma;
  // 1-γ³ = (1-γ)(1+γ+γ²) and 1-γ² = (1-γ)(1+γ) keep precision near γ = 1.
  const double one_minus = 1.0 - gamma;
  const double denom = one_minus * (1.0 + gamma + g2);
  return gamma * (g2 + gamma + beta) * (1.0 - beta) * one_minus *
         (1.0 + gamma) / (denom * denom);
}

Construction build_shock_cycle(double delta, double big_m,
                               std::optional<double> gamma,
                               std::optional<double> beta_override) {
  if (!(delta > 0.0)) throw InputError("delta must be > 0");
  if (!(big_m > 0.0)) throw InputError("M must be > 0");

  const double lower = std::max(1.0 - delta / std::numbers::sqrt2, 0.0);
  double beta = 0.5 * (lower + 1.0);
  if (beta_override) {
    beta = *beta_override;
    if (!(beta > lower && beta < 1.0)) {
      throw InputError("beta must lie in (" + fmt(lower) + ", 1) for delta = " +
                       fmt(delta));
    }
  }

  Certificate cert;
  cert.construction = "shock_cycle";
  const double target = big_m * (1.0 + kSearchMargin);
  double g = 0.0;
  if (gamma) {
    g = *gamma;
    if (!(g > 0.0 && g < 1.0)) throw InputError("gamma must lie in (0, 1)");
  } else {
    double lo = 0.0;
    double hi = kGammaCap;
    const double top = shock_cycle_gap(hi, beta);
    cert.search_trace.push_back({hi, top});
    if (!(top > target)) {
      throw NumericalError("M = " + fmt(big_m) +
                           " is unreachable: the gap at gamma = 1 - 1e-12 is " +
                           fmt(top));
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-3 * (1.0 - hi); ++it) {
      const double mid = lo + 0.5 * (hi - lo);
      const double value = shock_cycle_gap(mid, beta);
      cert.search_trace.push_back({mid, value});
      (value > target ? hi : lo) = mid;
    }
    g = hi;
    std::sort(cert.search_trace.begin(), cert.search_trace.end(),
              [](const TracePoint& a, const TracePoint& b) {
                return a.gamma < b.gamma;
              });
  }

  cert.parameters = {{"delta", delta}, {"M", big_m}, {"gamma", g},
                     {"beta", beta},   {"diagnostic", gamma || beta_override ? 1.0 : 0.0}};

  const InteractionMatrix p = cycle(g);
  std::vector<Eigen::VectorXd> shocks;
  for (int j = 0; j < 3; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Ones(3);
    e(j) = beta;
    shocks.push_back(e);
  }
  auto profile = ConjectureProfile::shared_network(p, shocks);

  const double expected_distance = std::numbers::sqrt2 * (1.0 - beta);
  bool within = true;
  double worst_spread = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const double d = (shocks[a] - shocks[b]).norm();
      cert.pairwise_misalignment.push_back(d);
      within = within && d <= delta;
      worst_spread = std::max(worst_spread, std::abs(d - expected_distance));
    }
  }
  cert.checks.push_back({"misalignment_within_delta", within,
                         "max pairwise shock distance " +
                             fmt(*std::max_element(
                                 cert.pairwise_misalignment.begin(),
                                 cert.pairwise_misalignment.end())) +
                             " <= " + fmt(delta)});
  cert.checks.push_back(
      {"misalignment_symmetric", worst_spread <= 1e-12,
       "every pair at sqrt(2)(1-beta) = " + fmt(expected_distance)});

  const auto v = validate_network(p);
  cert.checks.push_back({"monotone", v.monotone,
                         "lambda_max = " + fmt(v.max_sym_eigenvalue)});

  for (const auto& r : gap_direct_all(profile)) {
    cert.gaps_direct.push_back(r.gap_direct);
  }
  const double closed = shock_cycle_gap(g, beta);
  cert.comparisons.push_back({"gap_closed_form", closed});
  cert.checks.push_back({"gaps_exceed_M", min_of(cert.gaps_direct) > big_m,
                         "min simulated gap " + fmt(min_of(cert.gaps_direct)) +
                             " vs M = " + fmt(big_m)});
  double worst_rel = 0.0;
  double spread = 0.0;
  for (double gap : cert.gaps_direct) {
    worst_rel = std::max(worst_rel, std::abs(gap - closed) / std::abs(closed));
    spread = std::max(spread, std::abs(gap - cert.gaps_direct.front()));
  }
  cert.comparisons.push_back({"closed_form_relative_error", worst_rel});
  cert.checks.push_back({"closed_form_agrees", worst_rel <= kClosedFormAgreement,
                         "relative error " + fmt(worst_rel)});
  cert.checks.push_back(
      {"symmetric_gaps", spread <= 1e-9 * std::abs(cert.gaps_direct.front()),
       "max deviation between players " + fmt(spread)});
  if (!cert.search_trace.empty()) {
    cert.checks.push_back({"monotone_escalation",
                           nondecreasing(cert.search_trace),
                           "closed-form gap nondecreasing along the search"});
  }
  return {std::move(profile), std::move(cert)};
}

const char* to_string(GraphShockPattern pattern) {
  return pattern == GraphShockPattern::uniform ? "uniform" : "alternating";
}

GraphShockPattern parse_graph_shock_pattern(const std::string& name) {
  if (name == "uniform") return GraphShockPattern::uniform;
  if (name == "alternating") return GraphShockPattern::alternating;
  throw InputError("unknown shock pattern '" + name +
                   "' (expected uniform or alternating)");
}

std::vector<InteractionMatrix> graph_cycle_networks(double delta) {
  const double weak = 1.0 - delta / std::numbers::sqrt2;
  std::vector<InteractionMatrix> out;
  // Player j weakens the edge into node j of the unit cycle 0<-2, 1<-0, 2<-1.
  const int edges[3][2] = {{0, 2}, {1, 0}, {2, 1}};
  for (int j = 0; j < 3; ++j) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
    for (const auto& e : edges) p(e[0], e[1]) = 1.0;
    p(edges[j][0], edges[j][1]) = weak;
    out.emplace_back(BlockStructure::scalar(3), std::move(p));
  }
  return out;
}

namespace {

std::vector<double> graph_gaps(const std::vector<InteractionMatrix>& networks,
                               const Eigen::VectorXd& epsilon) {
  std::vector<Conjecture> conjectures;
  for (const auto& p : networks) conjectures.push_back({p, epsilon});
  std::vector<double> gaps;
  for (const auto& r :
       gap_direct_all(ConjectureProfile::general(std::move(conjectures)))) {
    gaps.push_back(r.gap_direct);
  }
  return gaps;
}

Eigen::VectorXd pattern_vector(GraphShockPattern pattern) {
  if (pattern == GraphShockPattern::uniform) return Eigen::VectorXd::Ones(3);
  return Eigen::Vector3d(1.0, -1.0, -1.0);
}

}  // namespace

Construction build_graph_cycle(double delta, double big_m,
                               std::optional<double> gamma,
                               GraphShockPattern pattern) {
  if (!(delta > 0.0 && delta < std::numbers::sqrt2)) {
    throw InputError("delta must lie in (0, sqrt(2)), got " + fmt(delta));
  }
  if (!(big_m > 0.0)) throw InputError("M must be > 0");

  const auto networks = graph_cycle_networks(delta);
  const Eigen::VectorXd unit = pattern_vector(pattern);
  const double reference_coefficient =
      2.0 * (std::numbers::sqrt2 - delta) / delta;

  Certificate cert;
  cert.construction = "graph_cycle";

  // Gaps are quadratic in γ, so the γ = 1 gaps fix the scale.
  const auto unit_gaps = graph_gaps(networks, unit);
  double g = 0.0;
  if (gamma) {
    g = *gamma;
    if (!(g > 0.0)) throw InputError("gamma must be > 0");
  } else if (min_of(unit_gaps) > 0.0) {
    g = 1.1 * std::sqrt(big_m / min_of(unit_gaps));
  } else {
    g = 1.1 * std::sqrt(big_m / reference_coefficient);
    cert.notes.push_back(
        "some player has a non-positive gap under this shock pattern for "
        "every gamma; gamma chosen from the reference player-1 formula");
  }
  cert.parameters = {{"delta", delta},
                     {"M", big_m},
                     {"gamma", g},
                     {"uniform_pattern",
                      pattern == GraphShockPattern::uniform ? 1.0 : 0.0}};

  const Eigen::VectorXd epsilon = g * unit;
  std::vector<Conjecture> conjectures;
  for (const auto& p : networks) conjectures.push_back({p, epsilon});
  auto profile = ConjectureProfile::general(std::move(conjectures));

  bool exact = true;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const double d = (networks[a].matrix() - networks[b].matrix()).norm();
      cert.pairwise_misalignment.push_back(d);
      exact = exact && std::abs(d - delta) <= 1e-12 * std::max(1.0, delta);
    }
  }
  cert.checks.push_back({"frobenius_distance_equals_delta", exact,
                         "every pair of conjectures is delta apart"});
  bool monotone = true;
  std::string lambdas;
  for (const auto& p : networks) {
    const double lambda = p.symmetric_max_eigenvalue();
    monotone = monotone && lambda < 1.0 - kMonotonicityTolerance;
    lambdas += (lambdas.empty() ? "" : ", ") + fmt(lambda);
  }
  cert.checks.push_back({"monotone", monotone, "lambda_max = " + lambdas});

  for (const auto& r : gap_direct_all(profile)) {
    cert.gaps_direct.push_back(r.gap_direct);
  }
  cert.checks.push_back({"gaps_exceed_M", min_of(cert.gaps_direct) > big_m,
                         "min simulated gap " + fmt(min_of(cert.gaps_direct)) +
                             " vs M = " + fmt(big_m)});

  // Gap growth in γ: log-log slope over γ·{10, 100, 1000}.
  {
    double worst = 0.0;
    bool any = false;
    for (int j = 0; j < 3; ++j) {
      if (!(unit_gaps[j] > 0.0)) continue;
      any = true;
      const double g1 = graph_gaps(networks, 10.0 * unit)[j];
      const double g3 = graph_gaps(networks, 1000.0 * unit)[j];
      const double slope = (std::log(g3) - std::log(g1)) / std::log(100.0);
      worst = std::max(worst, std::abs(slope - 2.0));
    }
    cert.comparisons.push_back({"max_slope_deviation_from_2", worst});
    cert.checks.push_back({"quadratic_growth", any && worst <= 0.05,
                           "log-log slope of gap vs gamma within 2 +/- 0.05"});
  }

  // Reference closed form, evaluated on the alternating shock pattern.
  const auto alternating_gaps = graph_gaps(networks, g * pattern_vector(GraphShockPattern::alternating));
  const double claim = reference_coefficient * g * g;
  cert.comparisons.push_back({"reference_gap_player1", claim});
  cert.comparisons.push_back({"simulated_gap_player1_alternating_shock", alternating_gaps[1]});
  cert.comparisons.push_back({"simulated_gap_player0_alternating_shock", alternating_gaps[0]});
  cert.comparisons.push_back({"simulated_gap_player2_alternating_shock", alternating_gaps[2]});
  const double rel = std::abs(alternating_gaps[1] - claim) / std::abs(claim);
  cert.comparisons.push_back({"reference_gap_relative_error", rel});
  if (rel > kClosedFormAgreement) {
    cert.notes.push_back("reference gap formula disagrees with simulation for "
                         "player 1 (relative error " + fmt(rel) + ")");
  }
  for (int j : {0, 2}) {
    if (std::abs(alternating_gaps[j]) <= 1e-9 * std::abs(claim)) {
      cert.notes.push_back(
          "under the alternating shock (gamma, -gamma, -gamma) player " +
          std::to_string(j) + " has zero gap; only player 1 follows the "
                              "reference formula");
    }
  }

  // Reference intermediates for player 0's conjecture.
  {
    const double weak = 1.0 - delta / std::numbers::sqrt2;
    Eigen::Matrix3d reference_l;
    reference_l << 1, weak, weak, 1, 1, weak, 1, 1, 1;
    reference_l *= std::numbers::sqrt2 / delta;
    const Eigen::MatrixXd l0 = leontief(networks[0]);
    const double l_err = (l0 - reference_l).cwiseAbs().maxCoeff();
    cert.comparisons.push_back({"reference_leontief0_max_abs_error", l_err});

    const double s = std::numbers::sqrt2 / delta;
    const Eigen::Vector3d reference_u(std::sqrt(2.0 * delta) - 1.0,
                                    delta / std::numbers::sqrt2 - 1.0, -1.0);
    const Eigen::VectorXd u0 =
        nash_equilibrium(networks[0], Eigen::Vector3d(1.0, -1.0, -1.0))
            .action.values() / s;
    const double u_err = (u0 - reference_u).cwiseAbs().maxCoeff();
    cert.comparisons.push_back({"reference_u0_max_abs_error", u_err});
    if (u_err > 1e-9) {
      cert.notes.push_back(
          "reference equilibrium of player 0 (unit gamma) differs from the "
          "direct solve: first entry is sqrt(2)*delta - 1 = " +
          fmt(u0(0)) + ", reference sqrt(2*delta) - 1 = " + fmt(reference_u(0)));
    }
  }
  return {std::move(profile), std::move(cert)};
}

}  // namespace gaplab
