#pragma once

#include <atomic>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "gaplab/game.hpp"
#include "gaplab/linalg.hpp"

namespace gaplab {

struct CentralityProfile {
  int player = 0;
  Eigen::MatrixXd rows;      // L_{i,-}, m_i x m
  Eigen::VectorXd bonacich;  // row sums of `rows`
};

enum class PairKind { shock, graph };

struct PairCentrality {
  int i = 0;
  int j = 0;
  Eigen::MatrixXd matrix;  // m x m
  PairKind kind = PairKind::shock;
};

// Bonacich centrality of every action coordinate, grouped by player.
std::vector<CentralityProfile> bonacich(const InteractionMatrix& p);

// L_{i,-} from (I - P)ᵀ X = E_iᵀ, without forming the full inverse.
Eigen::MatrixXd leontief_block_rows(const InteractionMatrix& p, int player);

// 𝓑_{i,j} = L_{i,-}ᵀ P_{i,j} L_{j,-}.
PairCentrality shock_misspec_centrality(const InteractionMatrix& p, int i,
                                        int j);
// Same, reusing a precomputed Leontief matrix `l` of `p`.
PairCentrality shock_misspec_centrality(const InteractionMatrix& p,
                                        const Eigen::MatrixXd& l, int i, int j);

// 𝓒_{i,j} = L^(i)_{i,-}ᵀ (P^(j) - P^(i))_{i,j} (L^(i) P^(i) L^(j))_{j,-}
// for the conjectures `p_i` of player i and `p_j` of player j.
PairCentrality graph_misspec_centrality(const InteractionMatrix& p_i,
                                        const InteractionMatrix& p_j, int i,
                                        int j);

// Leontief rows of one network, solved per request until n requests have
// been made; from then on the full inverse is computed once and sliced.
class LeontiefCache {
 public:
  explicit LeontiefCache(const InteractionMatrix& p);

  LeontiefCache(const LeontiefCache&) = delete;
  LeontiefCache& operator=(const LeontiefCache&) = delete;

  Eigen::MatrixXd rows(int player) const;
  // Computes the full inverse on first use; later rows() calls slice it.
  const Eigen::MatrixXd& full() const;

  // 𝓑_{i,j} using cached rows.
  PairCentrality shock_pair(int i, int j) const;

  const InteractionMatrix& network() const noexcept { return p_; }

 private:
  InteractionMatrix p_;
  linalg::ShiftedLu lu_;
  mutable std::atomic<int> requests_{0};
  mutable std::atomic<bool> full_ready_{false};
  mutable std::once_flag full_once_;
  mutable Eigen::MatrixXd full_;
};

}  // namespace gaplab
