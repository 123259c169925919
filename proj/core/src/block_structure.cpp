#include "gaplab/block_structure.hpp"

#include <string>

#include "gaplab/errors.hpp"

namespace gaplab {

BlockStructure::BlockStructure(std::vector<int> block_sizes)
    : sizes_(std::move(block_sizes)) {
  if (sizes_.empty()) {
    throw InputError("block_sizes: at least one player is required");
  }
  offsets_.reserve(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 1) {
      throw InputError("block_sizes[" + std::to_string(i) +
                       "]: block size must be >= 1, got " +
                       std::to_string(sizes_[i]));
    }
    offsets_.push_back(dim_);
    dim_ += sizes_[i];
  }
}

BlockStructure BlockStructure::scalar(int players) {
  if (players < 1) throw InputError("player count must be >= 1");
  return BlockStructure(std::vector<int>(static_cast<std::size_t>(players), 1));
}

void BlockStructure::check_player(int player) const {
  if (player < 0 || player >= players()) {
    throw InputError("player index " + std::to_string(player) +
                     " out of range [0, " + std::to_string(players()) + ")");
  }
}

}  // namespace gaplab
