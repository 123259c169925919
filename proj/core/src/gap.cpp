#include "gaplab/gap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaplab/centrality.hpp"
#include "gaplab/equilibrium.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/linalg.hpp"

namespace gaplab {

namespace {

void check_shocks(const BlockStructure& s,
                  std::span<const Eigen::VectorXd> shocks) {
  if (static_cast<int>(shocks.size()) != s.players()) {
    throw InputError("expected one shock vector per player (" +
                     std::to_string(s.players()) + "), got " +
                     std::to_string(shocks.size()));
  }
  for (std::size_t j = 0; j < shocks.size(); ++j) {
    if (shocks[j].size() != s.dim()) {
      throw InputError("shock " + std::to_string(j) + ": expected length " +
                       std::to_string(s.dim()) + ", got " +
                       std::to_string(shocks[j].size()));
    }
  }
}

void check_alphas(const InteractionMatrix& base,
                  std::span<const double> alphas) {
  const auto& s = base.structure();
  if (static_cast<int>(alphas.size()) != s.players()) {
    throw InputError("expected one alpha per player (" +
                     std::to_string(s.players()) + "), got " +
                     std::to_string(alphas.size()));
  }
  const double lambda = base.symmetric_max_eigenvalue();
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (!(alphas[j] > 0.0)) {
      throw InputError("alpha[" + std::to_string(j) + "] must be > 0");
    }
    if (!(alphas[j] * lambda < 1.0 - kMonotonicityTolerance)) {
      throw PlayerError(static_cast<int>(j),
                        "alpha * P violates monotonicity");
    }
  }
}

double max_alpha_spread(std::span<const double> alphas) {
  const auto [lo, hi] = std::minmax_element(alphas.begin(), alphas.end());
  return *hi - *lo;
}

GapReport report_from(const ConjectureProfile& profile,
                      const std::vector<JointAction>& equilibria,
                      const JointAction& realized, int player) {
  const auto& own = profile.conjecture(player);
  GapReport r;
  r.player = player;
  r.predicted_cost = cost(own.network, own.shock, player, equilibria[player]);
  r.realized_cost = cost(own.network, own.shock, player, realized);
  r.gap_direct = r.realized_cost - r.predicted_cost;
  return r;
}

// ε^(i)ᵀ 𝓑_{i,j} (ε^(i) - ε^(j)) against a precomputed Leontief matrix.
double shock_pair_term(const InteractionMatrix& p, const Eigen::MatrixXd& l,
                       std::span<const Eigen::VectorXd> shocks, int i, int j) {
  const auto b = shock_misspec_centrality(p, l, i, j);
  return shocks[i].dot(b.matrix * (shocks[i] - shocks[j]));
}

}  // namespace

const char* to_string(ClosedFormKind kind) {
  switch (kind) {
    case ClosedFormKind::shock:
      return "shock";
    case ClosedFormKind::graph:
      return "graph";
    case ClosedFormKind::combined:
      return "combined";
  }
  return "unknown";
}

GapReport gap_direct(const ConjectureProfile& profile, int player) {
  profile.structure().check_player(player);
  const auto equilibria = conjectured_equilibria(profile);
  return report_from(profile, equilibria, assemble_realized(equilibria),
                     player);
}

std::vector<GapReport> gap_direct_all(const ConjectureProfile& profile) {
  const auto equilibria = conjectured_equilibria(profile);
  const auto realized = assemble_realized(equilibria);
  std::vector<GapReport> out;
  for (int i = 0; i < profile.players(); ++i) {
    out.push_back(report_from(profile, equilibria, realized, i));
  }
  return out;
}

PairDistance max_pairwise_distance(std::span<const Eigen::VectorXd> shocks) {
  PairDistance best;
  for (std::size_t a = 0; a < shocks.size(); ++a) {
    for (std::size_t b = a + 1; b < shocks.size(); ++b) {
      const double d = (shocks[a] - shocks[b]).norm();
      if (d > best.distance) {
        best = {static_cast<int>(a), static_cast<int>(b), d};
      }
    }
  }
  return best;
}

ClosedFormGap gap_shock_closed_form(const InteractionMatrix& p,
                                    std::span<const Eigen::VectorXd> shocks,
                                    int player) {
  const auto& s = p.structure();
  s.check_player(player);
  check_shocks(s, shocks);
  const Eigen::MatrixXd l = leontief(p);
  ClosedFormGap out;
  for (int j = 0; j < s.players(); ++j) {
    if (j == player) continue;
    const double term = shock_pair_term(p, l, shocks, player, j);
    out.per_pair.push_back({j, term});
    out.value += term;
  }
  return out;
}

double gap_shock_bound(const InteractionMatrix& p,
                       std::span<const Eigen::VectorXd> shocks, int player,
                       double delta) {
  const auto& s = p.structure();
  s.check_player(player);
  check_shocks(s, shocks);
  if (!(delta >= 0.0)) throw InputError("delta must be >= 0");
  for (std::size_t a = 0; a < shocks.size(); ++a) {
    for (std::size_t b = a + 1; b < shocks.size(); ++b) {
      const double d = (shocks[a] - shocks[b]).norm();
      if (d > delta) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "shock misalignment between players " << a << " and " << b
            << " is " << d << ", exceeding delta = " << delta;
        throw InputError(msg.str());
      }
    }
  }
  double block_norms = 0.0;
  for (int j = 0; j < s.players(); ++j) {
    if (j != player) block_norms += linalg::spectral_norm(p.block(player, j));
  }
  const double sigma =
      linalg::min_singular_value(linalg::identity_minus(p.matrix()));
  return delta * shocks[player].norm() * block_norms / (sigma * sigma);
}

ClosedFormGap gap_graph_closed_form(const InteractionMatrix& base,
                                    std::span<const double> alphas,
                                    const Eigen::VectorXd& epsilon,
                                    int player) {
  const auto& s = base.structure();
  s.check_player(player);
  check_alphas(base, alphas);
  if (epsilon.size() != s.dim()) {
    throw InputError("epsilon: expected length " + std::to_string(s.dim()));
  }
  const InteractionMatrix own = base.scaled(alphas[player]);
  ClosedFormGap out;
  for (int j = 0; j < s.players(); ++j) {
    if (j == player) continue;
    const auto c = graph_misspec_centrality(own, base.scaled(alphas[j]),
                                            player, j);
    // The gap is the negated quadratic form of 𝓒_{i,j}.
    const double term = -epsilon.dot(c.matrix * epsilon);
    out.per_pair.push_back({j, term});
    out.value += term;
  }
  return out;
}

double gap_graph_bound(const InteractionMatrix& base,
                       std::span<const double> alphas,
                       const Eigen::VectorXd& epsilon, int player, double delta,
                       BoundForm form) {
  const auto& s = base.structure();
  s.check_player(player);
  check_alphas(base, alphas);
  if (epsilon.size() != s.dim()) {
    throw InputError("epsilon: expected length " + std::to_string(s.dim()));
  }
  if (!(delta >= 0.0)) throw InputError("delta must be >= 0");
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    for (std::size_t b = a + 1; b < alphas.size(); ++b) {
      const double d = std::abs(alphas[a] - alphas[b]);
      if (d > delta) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "alpha misalignment between players " << a << " and " << b
            << " is " << d << ", exceeding delta = " << delta;
        throw InputError(msg.str());
      }
    }
  }
  const double p_norm = linalg::spectral_norm(base.matrix());
  const auto sigma_at = [&](double alpha) {
    return linalg::min_singular_value(
        linalg::identity_minus(alpha * base.matrix()));
  };
  const double alpha_i = alphas[player];
  const double sigma_i = sigma_at(alpha_i);
  double total = 0.0;
  for (int j = 0; j < s.players(); ++j) {
    if (j == player) continue;
    total += delta * std::abs(alpha_i) * p_norm *
             linalg::spectral_norm(base.block(player, j)) /
             (sigma_at(alphas[j]) * sigma_i * sigma_i);
  }
  if (form == BoundForm::scaled_by_shock_norm) total *= epsilon.squaredNorm();
  return total;
}

Eigen::MatrixXd leontief_integral(const Eigen::MatrixXd& p, double a, double b,
                                  const QuadratureOptions& opts,
                                  QuadratureStats* stats) {
  auto integrand = [&p](double x) -> Eigen::MatrixXd {
    return leontief(Eigen::MatrixXd(x * p));
  };
  return adaptive_simpson(integrand, a, b, opts, stats);
}

Eigen::MatrixXd leontief_integral_candidate_form(const Eigen::MatrixXd& p,
                                                 double a, double b) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(p);
  if (p.size() == 0 || !(std::abs(lu.determinant()) > 0.0) ||
      lu.rcond() < 1e-14) {
    throw NumericalError("P is singular; the candidate antiderivative needs P⁻¹");
  }
  return lu.solve(leontief(Eigen::MatrixXd(a * p)) -
                  leontief(Eigen::MatrixXd(b * p)));
}

ClosedFormGap gap_combined_closed_form(const InteractionMatrix& base,
                                       std::span<const double> alphas,
                                       std::span<const Eigen::VectorXd> shocks,
                                       int player,
                                       const QuadratureOptions& opts) {
  const auto& s = base.structure();
  s.check_player(player);
  check_alphas(base, alphas);
  check_shocks(s, shocks);

  const int i = player;
  const double alpha_i = alphas[i];
  const InteractionMatrix own = base.scaled(alpha_i);
  const Eigen::MatrixXd l_i = leontief(own);
  const Eigen::MatrixXd& p = base.matrix();
  const auto& eps_i = shocks[i];
  const Eigen::VectorXd w_i =
      (l_i * eps_i).segment(s.offset(i), s.size(i));  // u_i^(i)
  const auto seg_j = [&s](const Eigen::VectorXd& v, int j) {
    return v.segment(s.offset(j), s.size(j));
  };

  ClosedFormGap out;
  for (int j = 0; j < s.players(); ++j) {
    if (j == i) continue;
    const double alpha_j = alphas[j];
    const double delta_alpha = alpha_j - alpha_i;
    const auto p_ij = base.block(i, j);
    const Eigen::VectorXd d = shocks[j] - eps_i;
    double term = 0.0;

    if (delta_alpha == 0.0) {
      // Pure shock misalignment for this pair.
      term = shock_pair_term(own, l_i, shocks, i, j);
    } else if (std::abs(delta_alpha) < kDegenerateAlphaGap) {
      const Eigen::MatrixXd dl = l_i * p * l_i;  // dL/dα at α_i
      const Eigen::MatrixXd mean_l = l_i + 0.5 * delta_alpha * dl;
      const Eigen::VectorXd shock_part = mean_l * (-d);
      const Eigen::VectorXd bracket = dl * (0.5 * (eps_i + shocks[j]));
      term = alpha_i * w_i.dot(p_ij * seg_j(shock_part, j)) +
             alpha_i * (-delta_alpha) * seg_j(bracket, j).dot(p_ij.transpose() * w_i);
    } else {
      const Eigen::MatrixXd mean_l =
          leontief_integral(p, alpha_i, alpha_j, opts) / delta_alpha;
      const Eigen::MatrixXd l_j = leontief(base.scaled(alpha_j));
      const Eigen::VectorXd shock_part = mean_l * (-d);
      const Eigen::VectorXd bracket =
          (l_j * shocks[j] - l_i * eps_i) / delta_alpha -
          mean_l * d / delta_alpha;
      term = alpha_i * w_i.dot(p_ij * seg_j(shock_part, j)) +
             alpha_i * (-delta_alpha) * seg_j(bracket, j).dot(p_ij.transpose() * w_i);
    }
    out.per_pair.push_back({j, term});
    out.value += term;
  }
  return out;
}

std::optional<double> relative_gap(const GapReport& report) {
  const double denom = std::abs(report.predicted_cost);
  if (!(denom >= kRelativeGapFloor)) return std::nullopt;
  return (report.realized_cost - report.predicted_cost) / denom;
}

std::vector<GapReport> analyze_gaps(const ConjectureProfile& profile,
                                    const GapOptions& options) {
  auto reports = gap_direct_all(profile);
  if (!options.closed_form && !options.bound) return reports;

  const auto shocks = profile.shocks();
  switch (profile.shape()) {
    case ProfileShape::shared_network: {
      const auto& p = profile.conjecture(0).network;
      const double delta =
          options.delta.value_or(max_pairwise_distance(shocks).distance);
      for (auto& r : reports) {
        if (options.closed_form) {
          auto cf = gap_shock_closed_form(p, shocks, r.player);
          r.gap_closed_form = cf.value;
          r.closed_form_kind = ClosedFormKind::shock;
          r.per_pair_terms = std::move(cf.per_pair);
        }
        if (options.bound) {
          r.bound = gap_shock_bound(p, shocks, r.player, delta);
          r.delta = delta;
        }
      }
      break;
    }
    case ProfileShape::scaled_network: {
      const auto& scaling = *profile.scaling();
      if (profile.shocks_identical()) {
        const double delta =
            options.delta.value_or(max_alpha_spread(scaling.alphas));
        for (auto& r : reports) {
          if (options.closed_form) {
            auto cf = gap_graph_closed_form(scaling.base, scaling.alphas,
                                            shocks.front(), r.player);
            r.gap_closed_form = cf.value;
            r.closed_form_kind = ClosedFormKind::graph;
            r.per_pair_terms = std::move(cf.per_pair);
          }
          if (options.bound) {
            r.bound = gap_graph_bound(scaling.base, scaling.alphas,
                                      shocks.front(), r.player, delta);
            r.delta = delta;
          }
        }
      } else {
        if (options.bound) {
          throw InputError(
              "no bound is available for combined network and shock "
              "misalignment");
        }
        for (auto& r : reports) {
          auto cf = gap_combined_closed_form(scaling.base, scaling.alphas,
                                             shocks, r.player,
                                             options.quadrature);
          r.gap_closed_form = cf.value;
          r.closed_form_kind = ClosedFormKind::combined;
          r.per_pair_terms = std::move(cf.per_pair);
        }
      }
      break;
    }
    case ProfileShape::general:
      throw InputError(
          "profile has heterogeneous non-scaled networks: direct only, no "
          "closed form or bound applies");
  }
  return reports;
}

}  // namespace gaplab
