#ifndef BFT_HS_FAST_HPP
#define BFT_HS_FAST_HPP

// HS numbers straight from compressed codes, without building trees.

#include "bft/core_tree.hpp"
#include "bft/permutations.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bft {

/// X_1..X_n; X_j = 1 when level j raises the HS.
using IncrementSequence = std::vector<std::uint8_t>;

IncrementSequence hs_increments(const SimpleButterflyCode& code);

/// Sum of ceil(k/2) over the maximal runs of ones in y_j = x_{j+1} xor x_j.
std::uint32_t hs_simple(const SimpleButterflyCode& code);

/// floor(n / 2)
std::uint32_t hs_support_bound(std::uint32_t n);

struct ProfileEntry {
  std::uint32_t hs_value = 0;
  // The value was taken from the off-edge child rather than produced by a
  // tie with the edge value below.
  bool escape = false;

  bool operator==(const ProfileEntry&) const = default;
};

/// Distinct HS values met along one top edge, bottom to top. Each entry also
/// determines how the edge reacts when a tree is glued beneath it: the node
/// where the value appeared compares the incoming value against hs_value for
/// an escape and hs_value - 1 otherwise.
class EdgeProfile {
 public:
  static constexpr std::size_t kCapacity = 64;  // HS of a tree is below 64

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const ProfileEntry& operator[](std::size_t i) const { return entries_[i]; }
  const ProfileEntry& top() const { return entries_[size_ - 1]; }
  std::span<const ProfileEntry> entries() const { return {entries_.data(), size_}; }
  void push(ProfileEntry e);

  bool operator==(const EdgeProfile& other) const;

 private:
  std::array<ProfileEntry, kCapacity> entries_{};
  std::size_t size_ = 0;
};

/// (leftmost-edge profile, rightmost-edge profile) read off the tree's HS labels.
std::pair<EdgeProfile, EdgeProfile> edge_profiles(const BinaryTree& tree);

struct CodeProfiles {
  std::uint32_t hs = 0;
  EdgeProfile left;
  EdgeProfile right;
};

/// Profiles of tree_from_butterfly_code(code) computed from the code alone in
/// time linear in its length.
CodeProfiles code_profiles(const ButterflyCode& code);

std::uint32_t hs_nonsimple(const ButterflyCode& code);

}  // namespace bft

#endif  // BFT_HS_FAST_HPP
