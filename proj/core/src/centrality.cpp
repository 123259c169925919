#include "gaplab/centrality.hpp"

#include "gaplab/equilibrium.hpp"
#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

void check_pair(const BlockStructure& s, int i, int j) {
  s.check_player(i);
  s.check_player(j);
  if (i == j) throw InputError("pair centrality requires i != j");
}

Eigen::MatrixXd selector(const BlockStructure& s, int player) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(s.dim(), s.size(player));
  e.block(s.offset(player), 0, s.size(player), s.size(player)).setIdentity();
  return e;
}

Eigen::MatrixXd rows_from_lu(const linalg::ShiftedLu& lu,
                             const BlockStructure& s, int player) {
  // (I-P)ᵀ X = E_i  =>  X = L_{i,-}ᵀ
  return lu.solve_transposed(selector(s, player)).transpose();
}

}  // namespace

Eigen::MatrixXd leontief_block_rows(const InteractionMatrix& p, int player) {
  p.structure().check_player(player);
  return rows_from_lu(linalg::ShiftedLu(p.matrix()), p.structure(), player);
}

std::vector<CentralityProfile> bonacich(const InteractionMatrix& p) {
  const auto& s = p.structure();
  const Eigen::MatrixXd l = leontief(p);
  std::vector<CentralityProfile> out;
  out.reserve(static_cast<std::size_t>(s.players()));
  for (int i = 0; i < s.players(); ++i) {
    Eigen::MatrixXd rows = l.middleRows(s.offset(i), s.size(i));
    Eigen::VectorXd sums = rows.rowwise().sum();
    out.push_back({i, std::move(rows), std::move(sums)});
  }
  return out;
}

PairCentrality shock_misspec_centrality(const InteractionMatrix& p, int i,
                                        int j) {
  check_pair(p.structure(), i, j);
  const linalg::ShiftedLu lu(p.matrix());
  const Eigen::MatrixXd li = rows_from_lu(lu, p.structure(), i);
  const Eigen::MatrixXd lj = rows_from_lu(lu, p.structure(), j);
  return {i, j, li.transpose() * p.block(i, j) * lj, PairKind::shock};
}

PairCentrality shock_misspec_centrality(const InteractionMatrix& p,
                                        const Eigen::MatrixXd& l, int i,
                                        int j) {
  const auto& s = p.structure();
  check_pair(s, i, j);
  if (l.rows() != s.dim() || l.cols() != s.dim()) {
    throw InputError("Leontief matrix does not match the network dimension");
  }
  const auto li = l.middleRows(s.offset(i), s.size(i));
  const auto lj = l.middleRows(s.offset(j), s.size(j));
  return {i, j, li.transpose() * p.block(i, j) * lj, PairKind::shock};
}

PairCentrality graph_misspec_centrality(const InteractionMatrix& p_i,
                                        const InteractionMatrix& p_j, int i,
                                        int j) {
  const auto& s = p_i.structure();
  if (!(s == p_j.structure())) {
    throw InputError("conjectured networks have different block structures");
  }
  check_pair(s, i, j);
  const linalg::ShiftedLu lu_i(p_i.matrix());
  const linalg::ShiftedLu lu_j(p_j.matrix());
  const Eigen::MatrixXd li_rows_i = rows_from_lu(lu_i, s, i);
  const Eigen::MatrixXd li_rows_j = rows_from_lu(lu_i, s, j);
  // (L^(i) P^(i) L^(j))_{j,-} = [L^(i)_{j,-} P^(i)] L^(j)
  const Eigen::MatrixXd left = li_rows_j * p_i.matrix();
  const Eigen::MatrixXd tail =
      lu_j.solve_transposed(left.transpose()).transpose();
  const Eigen::MatrixXd diff = p_j.block(i, j) - p_i.block(i, j);
  return {i, j, li_rows_i.transpose() * diff * tail, PairKind::graph};
}

LeontiefCache::LeontiefCache(const InteractionMatrix& p)
    : p_(p), lu_(p.matrix()) {}

const Eigen::MatrixXd& LeontiefCache::full() const {
  std::call_once(full_once_, [this] {
    full_ = lu_.inverse();
    full_ready_.store(true);
  });
  return full_;
}

Eigen::MatrixXd LeontiefCache::rows(int player) const {
  const auto& s = p_.structure();
  s.check_player(player);
  if (full_ready_.load() || requests_.fetch_add(1) + 1 >= s.players()) {
    return full().middleRows(s.offset(player), s.size(player));
  }
  return rows_from_lu(lu_, s, player);
}

PairCentrality LeontiefCache::shock_pair(int i, int j) const {
  check_pair(p_.structure(), i, j);
  const Eigen::MatrixXd li = rows(i);
  const Eigen::MatrixXd lj = rows(j);
  return {i, j, li.transpose() * p_.block(i, j) * lj, PairKind::shock};
}

}  // namespace gaplab
