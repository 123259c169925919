#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gaplab/block_structure.hpp"

namespace gaplab {

// Assumption: λ_max((P + Pᵀ)/2) < 1 - kMonotonicityTolerance.
inline constexpr double kMonotonicityTolerance = 1e-10;

// Block matrix P of pairwise interaction weights. Block (i, j) weights
// player j's action in player i's cost. Diagonal blocks are always zero.
class InteractionMatrix {
 public:
  using ConstBlock = Eigen::Block<const Eigen::MatrixXd>;

  // Throws InputError on a dimension mismatch or a nonzero diagonal block.
  InteractionMatrix(BlockStructure structure, Eigen::MatrixXd data);

  static InteractionMatrix zero(BlockStructure structure);
  // Clears the diagonal blocks of `data` instead of rejecting them.
  static InteractionMatrix with_zeroed_diagonal(BlockStructure structure,
                                                Eigen::MatrixXd data);

  const BlockStructure& structure() const noexcept { return structure_; }
  const Eigen::MatrixXd& matrix() const noexcept { return data_; }
  int dim() const noexcept { return structure_.dim(); }

  ConstBlock block(int i, int j) const;
  // P_{i,-}: the i-th row of blocks, m_i x m.
  ConstBlock row_block(int i) const;

  InteractionMatrix scaled(double alpha) const;

  double symmetric_max_eigenvalue() const;
  bool is_monotone(double tol = kMonotonicityTolerance) const;

  friend bool operator==(const InteractionMatrix& a,
                         const InteractionMatrix& b) {
    return a.structure_ == b.structure_ && a.data_ == b.data_;
  }

 private:
  InteractionMatrix(BlockStructure structure, Eigen::MatrixXd data, bool);

  BlockStructure structure_;
  Eigen::MatrixXd data_;
};

// Block-structured joint action u = (u_1, ..., u_n).
class JointAction {
 public:
  JointAction(BlockStructure structure, Eigen::VectorXd values);

  const BlockStructure& structure() const noexcept { return structure_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }

  Eigen::VectorBlock<const Eigen::VectorXd> view(int player) const;
  Eigen::VectorBlock<Eigen::VectorXd> view(int player);

 private:
  BlockStructure structure_;
  Eigen::VectorXd values_;
};

// Ground-truth game G = (N, {m_i}, P, ε). Monotonicity is not enforced
// here; see validate_game.
class NetworkGame {
 public:
  NetworkGame(InteractionMatrix interaction, Eigen::VectorXd epsilon);

  const BlockStructure& structure() const noexcept {
    return interaction_.structure();
  }
  const InteractionMatrix& interaction() const noexcept { return interaction_; }
  const Eigen::VectorXd& epsilon() const noexcept { return epsilon_; }
  Eigen::VectorBlock<const Eigen::VectorXd> shock(int player) const;

 private:
  InteractionMatrix interaction_;
  Eigen::VectorXd epsilon_;
};

// One player's conjectured game (P^(j), ε^(j)).
struct Conjecture {
  InteractionMatrix network;
  Eigen::VectorXd shock;
};

enum class ProfileShape {
  shared_network,  // every P^(j) identical; shocks may differ
  scaled_network,  // P^(j) = α^(j)·P_base
  general,         // arbitrary heterogeneous P^(j); direct evaluation only
};

const char* to_string(ProfileShape shape);

struct NetworkScaling {
  InteractionMatrix base;
  std::vector<double> alphas;
};

// Per-player conjectures. Every conjectured network must satisfy the
// monotonicity assumption; construction throws PlayerError otherwise.
class ConjectureProfile {
 public:
  static ConjectureProfile general(std::vector<Conjecture> conjectures);
  static ConjectureProfile shared_network(InteractionMatrix network,
                                          std::vector<Eigen::VectorXd> shocks);
  static ConjectureProfile scaled(InteractionMatrix base,
                                  std::vector<double> alphas,
                                  std::vector<Eigen::VectorXd> shocks);
  // Every player conjectures the true game.
  static ConjectureProfile homogeneous(const NetworkGame& game);

  const BlockStructure& structure() const noexcept { return structure_; }
  int players() const noexcept { return structure_.players(); }
  const Conjecture& conjecture(int player) const;
  std::span<const Conjecture> conjectures() const noexcept {
    return conjectures_;
  }
  const std::optional<NetworkScaling>& scaling() const noexcept {
    return scaling_;
  }

  ProfileShape shape() const;
  bool shocks_identical() const;
  bool networks_identical() const;
  std::vector<Eigen::VectorXd> shocks() const;

 private:
  ConjectureProfile(std::vector<Conjecture> conjectures,
                    std::optional<NetworkScaling> scaling);

  BlockStructure structure_;
  std::vector<Conjecture> conjectures_;
  std::optional<NetworkScaling> scaling_;
};

}  // namespace gaplab
