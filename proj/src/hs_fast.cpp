#include "bft/hs_fast.hpp"

#include <algorithm>
#include <stdexcept>

namespace bft {

IncrementSequence hs_increments(const SimpleButterflyCode& code) {
  const std::size_t n = code.size();
  IncrementSequence X(n, 0);
  for (std::size_t j = 1; j < n; ++j) X[j] = static_cast<std::uint8_t>((code[j] ^ code[j - 1]) & (1U - X[j - 1]));
  return X;
}

std::uint32_t hs_simple(const SimpleButterflyCode& code) {
  std::uint32_t total = 0;
  std::uint32_t run = 0;
  for (std::size_t j = 1; j < code.size(); ++j) {
    if (code[j] != code[j - 1]) {
      ++run;
    } else {
      total += (run + 1) / 2;
      run = 0;
    }
  }
  return total + (run + 1) / 2;
}

std::uint32_t hs_support_bound(std::uint32_t n) { return n / 2; }

void EdgeProfile::push(ProfileEntry e) {
  if (size_ == kCapacity) throw std::length_error("EdgeProfile capacity exceeded");
  entries_[size_++] = e;
}

bool EdgeProfile::operator==(const EdgeProfile& other) const {
  return std::equal(entries().begin(), entries().end(), other.entries().begin(), other.entries().end());
}

namespace {

constexpr std::int64_t kAbsent = -1;

// Off-edge value that the entry's node compares against.
inline std::int64_t trigger(const ProfileEntry& e) {
  return e.escape ? std::int64_t{e.hs_value} : std::int64_t{e.hs_value} - 1;
}

// Raises the edge value `u` at a node whose off-edge child has HS `a`.
inline void step(EdgeProfile& out, std::int64_t& u, std::int64_t a) {
  if (a > u) {
    out.push({static_cast<std::uint32_t>(a), true});
    u = a;
  } else if (a == u) {
    out.push({static_cast<std::uint32_t>(u + 1), false});
    u += 1;
  }
}

// Profile of `inner` continued upward by one node whose off-edge child has
// HS `a` (kAbsent when there is none).
EdgeProfile extend(const EdgeProfile& inner, std::int64_t a) {
  EdgeProfile out = inner;
  if (inner.empty()) {
    out.push(a == kAbsent ? ProfileEntry{0, false} : ProfileEntry{static_cast<std::uint32_t>(a), true});
    return out;
  }
  std::int64_t u = inner.top().hs_value;
  step(out, u, a);
  return out;
}

// `upper` is an edge that used to end above a leaf; hang `base` below it and
// replay the nodes of `upper` on top.
void replay_onto(EdgeProfile& base, const EdgeProfile& upper) {
  std::int64_t u = base.top().hs_value;
  for (const auto& e : upper.entries()) {
    const std::int64_t a = trigger(e);
    if (a >= 0) step(base, u, a);
  }
}

// Subtree summary: profiles of the root's two subtrees along their outer
// edges, plus the subtrees' HS values.
struct Summary {
  EdgeProfile left_inner;
  EdgeProfile right_inner;
  std::int64_t hs_left = kAbsent;
  std::int64_t hs_right = kAbsent;

  std::uint32_t hs() const {
    if (hs_left == kAbsent && hs_right == kAbsent) return 0;
    if (hs_left == kAbsent) return static_cast<std::uint32_t>(hs_right);
    if (hs_right == kAbsent) return static_cast<std::uint32_t>(hs_left);
    return static_cast<std::uint32_t>(hs_left == hs_right ? hs_left + 1 : std::max(hs_left, hs_right));
  }
  EdgeProfile full_left() const { return extend(left_inner, hs_right); }
  EdgeProfile full_right() const { return extend(right_inner, hs_left); }
};

// Glues `child` below the right (skew: left) edge of `parent`, in place.
void merge_into(Summary& parent, const Summary& child, bool skew) {
  EdgeProfile& inner = skew ? parent.left_inner : parent.right_inner;
  EdgeProfile edge = skew ? child.full_left() : child.full_right();
  replay_onto(edge, inner);
  inner = edge;
  (skew ? parent.hs_left : parent.hs_right) = inner.top().hs_value;
}

// Oracle: walks the edge and classifies each change of the HS label.
EdgeProfile spine_profile(const BinaryTree& tree, const HsLabeling& label, bool right_edge) {
  std::vector<NodeId> spine;
  for (NodeId v = tree.root(); v != kNoNode; v = right_edge ? tree.right(v) : tree.left(v)) spine.push_back(v);
  EdgeProfile out;
  std::int64_t u = -1;
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
    const NodeId off = right_edge ? tree.left(*it) : tree.right(*it);
    const std::int64_t w = label[*it];
    if (it == spine.rbegin()) {
      out.push({static_cast<std::uint32_t>(w), off != kNoNode});
    } else if (w > u) {
      // Either a tie with the edge value or a larger off-edge child.
      out.push({static_cast<std::uint32_t>(w), std::int64_t{label[off]} == w});
    }
    u = w;
  }
  return out;
}

}  // namespace

std::pair<EdgeProfile, EdgeProfile> edge_profiles(const BinaryTree& tree) {
  const auto label = hs_labeling(tree);
  return {spine_profile(tree, label, false), spine_profile(tree, label, true)};
}

CodeProfiles code_profiles(const ButterflyCode& code) {
  const std::size_t n = code.levels();
  if (n >= 63) throw invalid_code("butterfly code too long");
  // Leaves are processed left to right; equal-level blocks on top of the
  // stack are merged as soon as they appear, like a binary counter.
  struct Block {
    Summary summary;
    std::size_t level;
    std::size_t position;
  };
  std::vector<Block> stack;
  stack.reserve(n + 1);
  const std::size_t leaves = std::size_t{1} << n;
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    stack.push_back({Summary{}, 0, leaf});
    while (stack.size() >= 2 && stack[stack.size() - 2].level == stack.back().level) {
      Block& child = stack.back();
      Block& parent = stack[stack.size() - 2];
      const std::size_t level = parent.level + 1;
      const std::size_t position = parent.position / 2;
      const std::size_t heap_index = (std::size_t{1} << (n - level)) + position;
      merge_into(parent.summary, child.summary, code.at(heap_index) == 1);
      parent.level = level;
      parent.position = position;
      stack.pop_back();
    }
  }
  const Summary& root = stack.back().summary;
  return {root.hs(), root.full_left(), root.full_right()};
}

std::uint32_t hs_nonsimple(const ButterflyCode& code) { return code_profiles(code).hs; }

}  // namespace bft
