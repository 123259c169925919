#pragma once

#include <span>
#include <vector>

namespace gaplab {

// Partition of the joint action space R^m into per-player blocks of size m_i.
class BlockStructure {
 public:
  explicit BlockStructure(std::vector<int> block_sizes);

  // n players with scalar actions.
  static BlockStructure scalar(int players);

  int players() const noexcept { return static_cast<int>(sizes_.size()); }
  int dim() const noexcept { return dim_; }
  int size(int player) const { return sizes_.at(player); }
  int offset(int player) const { return offsets_.at(player); }
  std::span<const int> sizes() const noexcept { return sizes_; }
  std::span<const int> offsets() const noexcept { return offsets_; }

  // Throws InputError when player is out of range.
  void check_player(int player) const;

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

}  // namespace gaplab
