#ifndef BFT_CORE_TREE_HPP
#define BFT_CORE_TREE_HPP

// Rooted binary trees stored as an index arena, plus the traversal oracles
// (HS number, height) and the gluing operators used by every other module.

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bft {

class Permutation;
namespace detail {
struct TreeAccess;
}

using NodeId = std::uint32_t;
using Key = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

class invalid_tree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class invalid_permutation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable rooted binary tree.
///
/// Nodes live in parallel arrays indexed by NodeId. The root is always node 0
/// and every parent precedes its children, so bottom-up passes are a reverse
/// sweep and top-down passes a forward sweep; no traversal recurses.
/// Keys are either present on every node (a BST labelling) or absent.
class BinaryTree {
 public:
  /// A single node, optionally carrying key 1.
  static BinaryTree single(bool keyed = false);

  /// Builds from arbitrary link arrays: validates that the links form one
  /// tree rooted at `root` (and the BST order if keys are given), then
  /// renumbers the nodes in preorder.
  static BinaryTree from_links(NodeId root, std::span<const NodeId> left,
                               std::span<const NodeId> right, std::span<const Key> keys = {});

  /// New root whose subtrees are copies of `left` and `right` (either may be
  /// null). The result is keyless.
  static BinaryTree join(const BinaryTree* left, const BinaryTree* right);

  std::size_t size() const { return left_.size(); }
  NodeId root() const { return 0; }
  NodeId left(NodeId v) const { return left_[v]; }
  NodeId right(NodeId v) const { return right_[v]; }
  bool is_leaf(NodeId v) const { return left_[v] == kNoNode && right_[v] == kNoNode; }

  bool has_keys() const { return !keys_.empty(); }
  Key key(NodeId v) const { return keys_.at(v); }
  std::span<const Key> keys() const { return keys_; }

  /// Re-checks every structural invariant; throws invalid_tree on failure.
  void validate() const;

  /// Tree with the same shape and no keys.
  BinaryTree without_keys() const;

  /// Node at the end of the root's leftmost / rightmost path.
  NodeId leftmost() const;
  NodeId rightmost() const;

 private:
  BinaryTree() = default;

  std::vector<NodeId> left_;
  std::vector<NodeId> right_;
  std::vector<Key> keys_;

  friend struct detail::TreeAccess;
  friend class TreeBuilder;
};

/// Low-level constructor used by samplers: nodes must be appended so that a
/// parent is added before its children.
class TreeBuilder {
 public:
  explicit TreeBuilder(std::size_t reserve = 0);
  NodeId add_node();
  void set_left(NodeId parent, NodeId child);
  void set_right(NodeId parent, NodeId child);
  BinaryTree build() &&;

 private:
  BinaryTree tree_;
};

/// Per-node HS values aligned with node ids.
using HsLabeling = std::vector<std::uint32_t>;

/// BST obtained by inserting the keys of `perm` from left to right.
/// Runs in linear time via the Cartesian-tree characterisation: the node
/// inserted at step i is node id i.
BinaryTree bst_from_permutation(const Permutation& perm);

std::uint32_t hs(const BinaryTree& tree);
HsLabeling hs_labeling(const BinaryTree& tree);
/// Maximal depth of a node; the root has depth 0.
std::uint32_t height(const BinaryTree& tree);

enum class GlueMode {
  kKeys,       // keep the result a valid BST (shift keys)
  kShapeOnly,  // drop keys
};

/// `child`'s root becomes the right child of the end of `parent`'s rightmost
/// path. With keys, child keys are shifted up by parent.size().
BinaryTree glue_plus(const BinaryTree& parent, const BinaryTree& child, GlueMode mode = GlueMode::kKeys);
/// Mirror of glue_plus on the leftmost path; parent keys shift up by child.size().
BinaryTree glue_minus(const BinaryTree& parent, const BinaryTree& child, GlueMode mode = GlueMode::kKeys);

/// Swaps children everywhere; keys map k -> m + 1 - k.
BinaryTree reflect(const BinaryTree& tree);

/// Largest HS attainable by an m-node binary tree, floor(log2(m + 1)) - 1
/// with the leaf = 0 convention.
std::uint32_t max_hs_for_size(std::uint64_t m);

bool same_shape(const BinaryTree& a, const BinaryTree& b);

/// "(L,R)" recursively with "." for an empty subtree; one node is "(.,.)".
std::string to_shape_string(const BinaryTree& tree);
BinaryTree parse_shape_string(std::string_view text);

/// Edge list with columns node_id,parent_id,side,key,hs_label. The root row
/// has empty parent_id and side; key is empty for keyless trees.
std::string to_edge_csv(const BinaryTree& tree);

/// All C_m shapes with m nodes, in a fixed enumeration order.
std::vector<BinaryTree> all_shapes(std::size_t m);

}  // namespace bft

#endif  // BFT_CORE_TREE_HPP
