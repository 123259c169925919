#include "gaplab/equilibrium.hpp"

#include <limits>
#include <sstream>

#include "gaplab/errors.hpp"
#include "gaplab/linalg.hpp"

namespace gaplab {

ValidationReport validate_network(const InteractionMatrix& p) {
  ValidationReport report;
  const auto& s = p.structure();
  report.zero_diagonal_blocks = true;
  for (int i = 0; i < s.players(); ++i) {
    if ((p.block(i, i).array() != 0.0).any()) report.zero_diagonal_blocks = false;
  }
  report.max_sym_eigenvalue = p.symmetric_max_eigenvalue();
  report.monotone = report.max_sym_eigenvalue < 1.0 - kMonotonicityTolerance;
  const Eigen::MatrixXd shifted = linalg::identity_minus(p.matrix());
  report.min_singular_value = linalg::min_singular_value(shifted);
  try {
    report.condition_estimate = linalg::ShiftedLu(p.matrix()).condition_estimate();
  } catch (const NumericalError&) {
    report.condition_estimate = std::numeric_limits<double>::infinity();
  }
  return report;
}

ValidationReport validate_game(const NetworkGame& game) {
  return validate_network(game.interaction());
}

double cost(const InteractionMatrix& p, const Eigen::VectorXd& epsilon,
            int player, const JointAction& u) {
  const auto& s = p.structure();
  if (!(u.structure() == s)) {
    throw InputError("joint action does not match the game's block structure");
  }
  if (epsilon.size() != s.dim()) {
    throw InputError("epsilon length does not match the game dimension");
  }
  const auto ui = u.view(player);
  const auto eps_i = epsilon.segment(s.offset(player), s.size(player));
  const Eigen::VectorXd drive = p.row_block(player) * u.values() + eps_i;
  return 0.5 * ui.squaredNorm() - ui.dot(drive);
}

double cost(const NetworkGame& game, int player, const JointAction& u) {
  return cost(game.interaction(), game.epsilon(), player, u);
}

Equilibrium nash_equilibrium(const InteractionMatrix& p,
                             const Eigen::VectorXd& epsilon) {
  if (epsilon.size() != p.dim()) {
    throw InputError("epsilon: expected length " + std::to_string(p.dim()) +
                     ", got " + std::to_string(epsilon.size()));
  }
  const linalg::ShiftedLu lu(p.matrix());
  Equilibrium eq{JointAction(p.structure(), lu.solve(epsilon)),
                 lu.condition_estimate(),
                 {}};
  if (eq.ill_conditioned()) {
    std::ostringstream msg;
    msg << "I - P is ill-conditioned (cond_1 estimate " << eq.condition_estimate
        << ")";
    eq.warnings.push_back(msg.str());
  }
  return eq;
}

Eigen::MatrixXd leontief(const Eigen::MatrixXd& p) {
  return linalg::ShiftedLu(p).inverse();
}

Eigen::MatrixXd leontief(const InteractionMatrix& p) {
  return leontief(p.matrix());
}

std::vector<JointAction> conjectured_equilibria(
    const ConjectureProfile& profile) {
  std::vector<JointAction> out;
  out.reserve(static_cast<std::size_t>(profile.players()));
  for (int j = 0; j < profile.players(); ++j) {
    const auto& c = profile.conjecture(j);
    try {
      out.push_back(nash_equilibrium(c.network, c.shock).action);
    } catch (const PlayerError&) {
      throw;
    } catch (const NumericalError& e) {
      throw PlayerError(j, e.what());
    }
  }
  return out;
}

JointAction assemble_realized(const std::vector<JointAction>& equilibria) {
  if (equilibria.empty()) throw InputError("no conjectured equilibria");
  JointAction realized(equilibria.front().structure(),
                       Eigen::VectorXd::Zero(equilibria.front().structure().dim()));
  for (int j = 0; j < realized.structure().players(); ++j) {
    realized.view(j) = equilibria.at(j).view(j);
  }
  return realized;
}

JointAction realized_action(const ConjectureProfile& profile) {
  return assemble_realized(conjectured_equilibria(profile));
}

}  // namespace gaplab
