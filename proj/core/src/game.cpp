#include "gaplab/game.hpp"

#include <string>

#include "gaplab/errors.hpp"
#include "gaplab/linalg.hpp"

namespace gaplab {

namespace {

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void check_square(const BlockStructure& s, const Eigen::MatrixXd& data) {
  if (data.rows() != s.dim() || data.cols() != s.dim()) {
    throw InputError("P: expected " + dims(s.dim(), s.dim()) +
                     " for block sizes summing to " + std::to_string(s.dim()) +
                     ", got " + dims(data.rows(), data.cols()));
  }
}

void check_shock(const BlockStructure& s, const Eigen::VectorXd& v,
                 const std::string& what) {
  if (v.size() != s.dim()) {
    throw InputError(what + ": expected length " + std::to_string(s.dim()) +
                     ", got " + std::to_string(v.size()));
  }
}

}  // namespace

InteractionMatrix::InteractionMatrix(BlockStructure structure,
                                     Eigen::MatrixXd data, bool)
    : structure_(std::move(structure)), data_(std::move(data)) {}

InteractionMatrix::InteractionMatrix(BlockStructure structure,
                                     Eigen::MatrixXd data)
    : structure_(std::move(structure)), data_(std::move(data)) {
  check_square(structure_, data_);
  for (int i = 0; i < structure_.players(); ++i) {
    const auto diag = block(i, i);
    if ((diag.array() != 0.0).any()) {
      throw InputError("P: diagonal block (" + std::to_string(i) + "," +
                       std::to_string(i) + ") must be zero");
    }
  }
}

InteractionMatrix InteractionMatrix::zero(BlockStructure structure) {
  const int m = structure.dim();
  return {std::move(structure), Eigen::MatrixXd::Zero(m, m), true};
}

InteractionMatrix InteractionMatrix::with_zeroed_diagonal(
    BlockStructure structure, Eigen::MatrixXd data) {
  check_square(structure, data);
  for (int i = 0; i < structure.players(); ++i) {
    data.block(structure.offset(i), structure.offset(i), structure.size(i),
               structure.size(i))
        .setZero();
  }
  return {std::move(structure), std::move(data), true};
}

InteractionMatrix::ConstBlock InteractionMatrix::block(int i, int j) const {
  structure_.check_player(i);
  structure_.check_player(j);
  return data_.block(structure_.offset(i), structure_.offset(j),
                     structure_.size(i), structure_.size(j));
}

InteractionMatrix::ConstBlock InteractionMatrix::row_block(int i) const {
  structure_.check_player(i);
  return data_.block(structure_.offset(i), 0, structure_.size(i), dim());
}

InteractionMatrix InteractionMatrix::scaled(double alpha) const {
  return {structure_, alpha * data_, true};
}

double InteractionMatrix::symmetric_max_eigenvalue() const {
  return linalg::symmetric_part_max_eigenvalue(data_);
}

bool InteractionMatrix::is_monotone(double tol) const {
  return symmetric_max_eigenvalue() < 1.0 - tol;
}

JointAction::JointAction(BlockStructure structure, Eigen::VectorXd values)
    : structure_(std::move(structure)), values_(std::move(values)) {
  check_shock(structure_, values_, "joint action");
}

Eigen::VectorBlock<const Eigen::VectorXd> JointAction::view(int player) const {
  structure_.check_player(player);
  return values_.segment(structure_.offset(player), structure_.size(player));
}

Eigen::VectorBlock<Eigen::VectorXd> JointAction::view(int player) {
  structure_.check_player(player);
  return values_.segment(structure_.offset(player), structure_.size(player));
}

NetworkGame::NetworkGame(InteractionMatrix interaction, Eigen::VectorXd epsilon)
    : interaction_(std::move(interaction)), epsilon_(std::move(epsilon)) {
  check_shock(interaction_.structure(), epsilon_, "epsilon");
}

Eigen::VectorBlock<const Eigen::VectorXd> NetworkGame::shock(int player) const {
  structure().check_player(player);
  return epsilon_.segment(structure().offset(player), structure().size(player));
}

const char* to_string(ProfileShape shape) {
  switch (shape) {
    case ProfileShape::shared_network:
      return "shared_network";
    case ProfileShape::scaled_network:
      return "scaled_network";
    case ProfileShape::general:
      return "general";
  }
  return "unknown";
}

ConjectureProfile::ConjectureProfile(std::vector<Conjecture> conjectures,
                                     std::optional<NetworkScaling> scaling)
    : structure_(conjectures.empty()
                     ? throw InputError("conjectures: at least one is required")
                     : conjectures.front().network.structure()),
      conjectures_(std::move(conjectures)),
      scaling_(std::move(scaling)) {
  if (static_cast<int>(conjectures_.size()) != structure_.players()) {
    throw InputError("conjectures: expected one per player (" +
                     std::to_string(structure_.players()) + "), got " +
                     std::to_string(conjectures_.size()));
  }
  for (int j = 0; j < players(); ++j) {
    const auto& c = conjectures_[j];
    if (!(c.network.structure() == structure_)) {
      throw InputError("conjecture " + std::to_string(j) +
                       ": block structure differs from player 0's");
    }
    check_shock(structure_, c.shock,
                "conjecture " + std::to_string(j) + " epsilon");
    const double lambda = c.network.symmetric_max_eigenvalue();
    if (!(lambda < 1.0 - kMonotonicityTolerance)) {
      throw PlayerError(j, "conjectured network violates monotonicity, "
                           "lambda_max((P+P^T)/2) = " +
                               std::to_string(lambda));
    }
  }
}

ConjectureProfile ConjectureProfile::general(
    std::vector<Conjecture> conjectures) {
  return {std::move(conjectures), std::nullopt};
}

ConjectureProfile ConjectureProfile::shared_network(
    InteractionMatrix network, std::vector<Eigen::VectorXd> shocks) {
  std::vector<Conjecture> conjectures;
  conjectures.reserve(shocks.size());
  for (auto& shock : shocks) {
    conjectures.push_back({network, std::move(shock)});
  }
  return {std::move(conjectures), std::nullopt};
}

ConjectureProfile ConjectureProfile::scaled(InteractionMatrix base,
                                            std::vector<double> alphas,
                                            std::vector<Eigen::VectorXd> shocks) {
  if (alphas.size() != shocks.size()) {
    throw InputError("alphas and shocks must have one entry per player");
  }
  std::vector<Conjecture> conjectures;
  conjectures.reserve(alphas.size());
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (!(alphas[j] > 0.0)) {
      throw InputError("alpha[" + std::to_string(j) + "] must be > 0");
    }
    conjectures.push_back({base.scaled(alphas[j]), std::move(shocks[j])});
  }
  return {std::move(conjectures),
          NetworkScaling{std::move(base), std::move(alphas)}};
}

ConjectureProfile ConjectureProfile::homogeneous(const NetworkGame& game) {
  std::vector<Eigen::VectorXd> shocks(
      static_cast<std::size_t>(game.structure().players()), game.epsilon());
  return shared_network(game.interaction(), std::move(shocks));
}

const Conjecture& ConjectureProfile::conjecture(int player) const {
  structure_.check_player(player);
  return conjectures_[player];
}

bool ConjectureProfile::shocks_identical() const {
  for (const auto& c : conjectures_) {
    if (c.shock != conjectures_.front().shock) return false;
  }
  return true;
}

bool ConjectureProfile::networks_identical() const {
  for (const auto& c : conjectures_) {
    if (!(c.network == conjectures_.front().network)) return false;
  }
  return true;
}

ProfileShape ConjectureProfile::shape() const {
  if (networks_identical()) return ProfileShape::shared_network;
  if (scaling_) return ProfileShape::scaled_network;
  return ProfileShape::general;
}

std::vector<Eigen::VectorXd> ConjectureProfile::shocks() const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(conjectures_.size());
  for (const auto& c : conjectures_) out.push_back(c.shock);
  return out;
}

}  // namespace gaplab
