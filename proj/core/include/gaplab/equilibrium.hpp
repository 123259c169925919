#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaplab/game.hpp"

namespace gaplab {

// One-norm condition estimate above which a solve carries a warning.
inline constexpr double kIllConditionedThreshold = 1e12;

struct ValidationReport {
  double max_sym_eigenvalue = 0.0;  // λ_max((P+Pᵀ)/2)
  double min_singular_value = 0.0;  // σ_min(I-P)
  double condition_estimate = 0.0;  // cond_1(I-P), +inf when singular
  bool monotone = false;
  bool zero_diagonal_blocks = false;

  bool passed() const noexcept { return monotone && zero_diagonal_blocks; }
};

// Advisory; never throws on numerical grounds.
ValidationReport validate_network(const InteractionMatrix& p);
ValidationReport validate_game(const NetworkGame& game);

// J_i(u) = ½ u_iᵀu_i - u_iᵀ(P_{i,-} u + ε_i).
double cost(const InteractionMatrix& p, const Eigen::VectorXd& epsilon,
            int player, const JointAction& u);
double cost(const NetworkGame& game, int player, const JointAction& u);

struct Equilibrium {
  JointAction action;
  double condition_estimate = 1.0;
  std::vector<std::string> warnings;

  bool ill_conditioned() const noexcept {
    return condition_estimate > kIllConditionedThreshold;
  }
};

// Solves (I - P) u = ε by LU. Throws NumericalError if I - P is singular.
Equilibrium nash_equilibrium(const InteractionMatrix& p,
                             const Eigen::VectorXd& epsilon);

// L = (I - P)⁻¹.
Eigen::MatrixXd leontief(const InteractionMatrix& p);
Eigen::MatrixXd leontief(const Eigen::MatrixXd& p);

// Each player's own block of its conjectured equilibrium,
// u° = (u_1^(1), ..., u_n^(n)). Solver failures surface as PlayerError.
JointAction realized_action(const ConjectureProfile& profile);

// Every player's conjectured equilibrium u^(j), in player order.
std::vector<JointAction> conjectured_equilibria(
    const ConjectureProfile& profile);

// Assembles u° from precomputed conjectured equilibria.
JointAction assemble_realized(const std::vector<JointAction>& equilibria);

}  // namespace gaplab
