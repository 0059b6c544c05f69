#include "bft/core_tree.hpp"

#include "bft/permutations.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

namespace bft {

namespace detail {

struct TreeAccess {
  static BinaryTree make() { return BinaryTree(); }
  static std::vector<NodeId>& left(BinaryTree& t) { return t.left_; }
  static std::vector<NodeId>& right(BinaryTree& t) { return t.right_; }
  static std::vector<Key>& keys(BinaryTree& t) { return t.keys_; }
  static const std::vector<NodeId>& left(const BinaryTree& t) { return t.left_; }
  static const std::vector<NodeId>& right(const BinaryTree& t) { return t.right_; }
};

}  // namespace detail

namespace {

using detail::TreeAccess;

inline std::uint32_t combine(std::uint32_t a, std::uint32_t b) { return a == b ? a + 1 : std::max(a, b); }

// Appends `src` with indices shifted by `offset`.
void append_shifted(std::vector<NodeId>& dst, const std::vector<NodeId>& src, NodeId offset) {
  dst.reserve(dst.size() + src.size());
  for (NodeId c : src) dst.push_back(c == kNoNode ? kNoNode : c + offset);
}

BinaryTree glue(const BinaryTree& parent, const BinaryTree& child, bool on_right, GlueMode mode) {
  if (parent.size() == 0 || child.size() == 0) throw invalid_tree("glue: empty operand");
  BinaryTree out = TreeAccess::make();
  auto& L = TreeAccess::left(out);
  auto& R = TreeAccess::right(out);
  const auto offset = static_cast<NodeId>(parent.size());
  L = TreeAccess::left(parent);
  R = TreeAccess::right(parent);
  append_shifted(L, TreeAccess::left(child), offset);
  append_shifted(R, TreeAccess::right(child), offset);
  if (on_right) {
    R[parent.rightmost()] = offset;
  } else {
    L[parent.leftmost()] = offset;
  }
  if (mode == GlueMode::kKeys && parent.has_keys() && child.has_keys()) {
    auto& K = TreeAccess::keys(out);
    K.reserve(out.size());
    const Key parent_shift = on_right ? 0 : static_cast<Key>(child.size());
    const Key child_shift = on_right ? static_cast<Key>(parent.size()) : 0;
    for (Key k : parent.keys()) K.push_back(k + parent_shift);
    for (Key k : child.keys()) K.push_back(k + child_shift);
  }
  return out;
}

std::vector<NodeId> parents_of(const BinaryTree& t) {
  std::vector<NodeId> parent(t.size(), kNoNode);
  for (NodeId v = 0; v < t.size(); ++v) {
    if (t.left(v) != kNoNode) parent[t.left(v)] = v;
    if (t.right(v) != kNoNode) parent[t.right(v)] = v;
  }
  return parent;
}

}  // namespace

BinaryTree BinaryTree::single(bool keyed) {
  BinaryTree t;
  t.left_.push_back(kNoNode);
  t.right_.push_back(kNoNode);
  if (keyed) t.keys_.push_back(1);
  return t;
}

BinaryTree BinaryTree::from_links(NodeId root, std::span<const NodeId> left, std::span<const NodeId> right,
                                  std::span<const Key> keys) {
  const std::size_t n = left.size();
  if (n == 0) throw invalid_tree("tree must have at least one node");
  if (right.size() != n) throw invalid_tree("left/right arrays differ in length");
  if (!keys.empty() && keys.size() != n) throw invalid_tree("key array length mismatch");
  if (root >= n) throw invalid_tree("root index out of range");
  std::vector<std::uint8_t> has_parent(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (NodeId c : {left[v], right[v]}) {
      if (c == kNoNode) continue;
      if (c >= n) throw invalid_tree("child index out of range");
      if (c == root) throw invalid_tree("root has a parent");
      if (has_parent[c]++) throw invalid_tree("node with two parents");
    }
  }
  // Preorder renumbering; a node count short of n means a cycle or a
  // disconnected record.
  BinaryTree t;
  std::vector<NodeId> new_id(n, kNoNode);
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (new_id[v] != kNoNode) throw invalid_tree("cycle in links");
    new_id[v] = static_cast<NodeId>(order.size());
    order.push_back(v);
    if (right[v] != kNoNode) stack.push_back(right[v]);
    if (left[v] != kNoNode) stack.push_back(left[v]);
  }
  if (order.size() != n) throw invalid_tree("links do not form a single tree");
  t.left_.resize(n);
  t.right_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = order[i];
    t.left_[i] = left[v] == kNoNode ? kNoNode : new_id[left[v]];
    t.right_[i] = right[v] == kNoNode ? kNoNode : new_id[right[v]];
  }
  if (!keys.empty()) {
    t.keys_.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.keys_[i] = keys[order[i]];
  }
  t.validate();
  return t;
}

BinaryTree BinaryTree::join(const BinaryTree* left, const BinaryTree* right) {
  BinaryTree t;
  t.left_.push_back(kNoNode);
  t.right_.push_back(kNoNode);
  NodeId offset = 1;
  if (left != nullptr && left->size() > 0) {
    t.left_[0] = offset;
    append_shifted(t.left_, left->left_, offset);
    append_shifted(t.right_, left->right_, offset);
    offset += static_cast<NodeId>(left->size());
  }
  if (right != nullptr && right->size() > 0) {
    t.right_[0] = offset;
    append_shifted(t.left_, right->left_, offset);
    append_shifted(t.right_, right->right_, offset);
  }
  return t;
}

void BinaryTree::validate() const {
  const std::size_t n = size();
  if (n == 0) throw invalid_tree("empty tree");
  if (right_.size() != n || (!keys_.empty() && keys_.size() != n)) throw invalid_tree("array length mismatch");
  std::vector<std::uint8_t> has_parent(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId c : {left_[v], right_[v]}) {
      if (c == kNoNode) continue;
      if (c >= n || c <= v) throw invalid_tree("child must follow its parent");
      if (has_parent[c]++) throw invalid_tree("node with two parents");
    }
  }
  for (NodeId v = 1; v < n; ++v) {
    if (!has_parent[v]) throw invalid_tree("unreachable node");
  }
  if (keys_.empty()) return;
  // BST order holds iff the in-order key sequence is strictly increasing.
  std::vector<NodeId> stack;
  NodeId cur = 0;
  bool have_prev = false;
  Key prev = 0;
  while (cur != kNoNode || !stack.empty()) {
    while (cur != kNoNode) {
      stack.push_back(cur);
      cur = left_[cur];
    }
    cur = stack.back();
    stack.pop_back();
    if (have_prev && keys_[cur] <= prev) throw invalid_tree("keys violate BST order");
    prev = keys_[cur];
    have_prev = true;
    cur = right_[cur];
  }
}

BinaryTree BinaryTree::without_keys() const {
  BinaryTree t = *this;
  t.keys_.clear();
  return t;
}

NodeId BinaryTree::leftmost() const {
  NodeId v = 0;
  while (left_[v] != kNoNode) v = left_[v];
  return v;
}

NodeId BinaryTree::rightmost() const {
  NodeId v = 0;
  while (right_[v] != kNoNode) v = right_[v];
  return v;
}

TreeBuilder::TreeBuilder(std::size_t reserve) : tree_(TreeAccess::make()) {
  TreeAccess::left(tree_).reserve(reserve);
  TreeAccess::right(tree_).reserve(reserve);
}

NodeId TreeBuilder::add_node() {
  TreeAccess::left(tree_).push_back(kNoNode);
  TreeAccess::right(tree_).push_back(kNoNode);
  return static_cast<NodeId>(tree_.size() - 1);
}

void TreeBuilder::set_left(NodeId parent, NodeId child) {
  if (child <= parent || child >= tree_.size()) throw invalid_tree("TreeBuilder: child must follow parent");
  TreeAccess::left(tree_)[parent] = child;
}

void TreeBuilder::set_right(NodeId parent, NodeId child) {
  if (child <= parent || child >= tree_.size()) throw invalid_tree("TreeBuilder: child must follow parent");
  TreeAccess::right(tree_)[parent] = child;
}

BinaryTree TreeBuilder::build() && {
  tree_.validate();
  return std::move(tree_);
}

BinaryTree bst_from_permutation(const Permutation& perm) {
  const std::size_t m = perm.size();
  if (m == 0) throw invalid_permutation("empty permutation");
  // pos[k] = insertion step of key k; a node's BST parent is inserted
  // before it, so using the step as node id keeps parents first.
  std::vector<NodeId> pos(m + 1);
  for (std::size_t i = 0; i < m; ++i) pos[perm[i]] = static_cast<NodeId>(i);
  BinaryTree t = TreeAccess::make();
  auto& L = TreeAccess::left(t);
  auto& R = TreeAccess::right(t);
  auto& K = TreeAccess::keys(t);
  L.assign(m, kNoNode);
  R.assign(m, kNoNode);
  K.assign(perm.values().begin(), perm.values().end());
  std::vector<NodeId> stack;
  stack.reserve(m);
  for (std::size_t k = 1; k <= m; ++k) {
    NodeId id = pos[k];
    NodeId last = kNoNode;
    while (!stack.empty() && stack.back() > id) {
      last = stack.back();
      stack.pop_back();
    }
    L[id] = last;
    if (!stack.empty()) R[stack.back()] = id;
    stack.push_back(id);
  }
  return t;
}

HsLabeling hs_labeling(const BinaryTree& tree) {
  if (tree.size() == 0) throw invalid_tree("hs of empty tree");
  HsLabeling label(tree.size(), 0);
  for (NodeId v = static_cast<NodeId>(tree.size()); v-- > 0;) {
    const NodeId l = tree.left(v);
    const NodeId r = tree.right(v);
    if (l != kNoNode && r != kNoNode) {
      label[v] = combine(label[l], label[r]);
    } else if (l != kNoNode) {
      label[v] = label[l];
    } else if (r != kNoNode) {
      label[v] = label[r];
    }
  }
  return label;
}

std::uint32_t hs(const BinaryTree& tree) { return hs_labeling(tree)[tree.root()]; }

std::uint32_t height(const BinaryTree& tree) {
  if (tree.size() == 0) throw invalid_tree("height of empty tree");
  std::vector<std::uint32_t> depth(tree.size(), 0);
  std::uint32_t best = 0;
  for (NodeId v = 0; v < tree.size(); ++v) {
    best = std::max(best, depth[v]);
    if (tree.left(v) != kNoNode) depth[tree.left(v)] = depth[v] + 1;
    if (tree.right(v) != kNoNode) depth[tree.right(v)] = depth[v] + 1;
  }
  return best;
}

BinaryTree glue_plus(const BinaryTree& parent, const BinaryTree& child, GlueMode mode) {
  return glue(parent, child, true, mode);
}

BinaryTree glue_minus(const BinaryTree& parent, const BinaryTree& child, GlueMode mode) {
  return glue(parent, child, false, mode);
}

BinaryTree reflect(const BinaryTree& tree) {
  BinaryTree out = tree;
  std::swap(TreeAccess::left(out), TreeAccess::right(out));
  const auto m = static_cast<Key>(tree.size());
  for (Key& k : TreeAccess::keys(out)) k = m + 1 - k;
  return out;
}

std::uint32_t max_hs_for_size(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("max_hs_for_size: m must be positive");
  return static_cast<std::uint32_t>(std::bit_width(m + 1)) - 2;
}

bool same_shape(const BinaryTree& a, const BinaryTree& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::pair<NodeId, NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    auto [u, v] = stack.back();
    stack.pop_back();
    const bool al = a.left(u) != kNoNode, bl = b.left(v) != kNoNode;
    const bool ar = a.right(u) != kNoNode, br = b.right(v) != kNoNode;
    if (al != bl || ar != br) return false;
    if (al) stack.emplace_back(a.left(u), b.left(v));
    if (ar) stack.emplace_back(a.right(u), b.right(v));
  }
  return true;
}

std::string to_shape_string(const BinaryTree& tree) {
  constexpr std::int64_t kClose = -1, kComma = -2, kEmpty = -3;
  std::string out;
  out.reserve(tree.size() * 6);
  std::vector<std::int64_t> stack{static_cast<std::int64_t>(tree.root())};
  while (!stack.empty()) {
    const std::int64_t item = stack.back();
    stack.pop_back();
    if (item == kClose) {
      out += ')';
    } else if (item == kComma) {
      out += ',';
    } else if (item == kEmpty) {
      out += '.';
    } else {
      const auto v = static_cast<NodeId>(item);
      out += '(';
      stack.push_back(kClose);
      stack.push_back(tree.right(v) == kNoNode ? kEmpty : static_cast<std::int64_t>(tree.right(v)));
      stack.push_back(kComma);
      stack.push_back(tree.left(v) == kNoNode ? kEmpty : static_cast<std::int64_t>(tree.left(v)));
    }
  }
  return out;
}

BinaryTree parse_shape_string(std::string_view text) {
  struct Frame {
    NodeId node;
    bool on_right;
  };
  TreeBuilder builder;
  std::vector<Frame> stack;
  bool expect_value = true;
  bool done = false;
  auto fail = [&](const char* why) { return invalid_tree(std::string("bad shape string: ") + why); };
  for (char c : text) {
    if (done) throw fail("trailing characters");
    switch (c) {
      case '(': {
        if (!expect_value) throw fail("unexpected '('");
        NodeId v = builder.add_node();
        if (!stack.empty()) {
          stack.back().on_right ? builder.set_right(stack.back().node, v) : builder.set_left(stack.back().node, v);
        }
        stack.push_back({v, false});
        break;
      }
      case '.':
        if (!expect_value || stack.empty()) throw fail("unexpected '.'");
        expect_value = false;
        break;
      case ',':
        if (expect_value || stack.empty() || stack.back().on_right) throw fail("unexpected ','");
        stack.back().on_right = true;
        expect_value = true;
        break;
      case ')':
        if (expect_value || stack.empty() || !stack.back().on_right) throw fail("unexpected ')'");
        stack.pop_back();
        expect_value = false;
        done = stack.empty();
        break;
      default:
        throw fail("unknown character");
    }
  }
  if (!done) throw fail("incomplete");
  return std::move(builder).build();
}

std::string to_edge_csv(const BinaryTree& tree) {
  const auto label = hs_labeling(tree);
  const auto parent = parents_of(tree);
  std::ostringstream out;
  out << "node_id,parent_id,side,key,hs_label\n";
  for (NodeId v = 0; v < tree.size(); ++v) {
    out << v << ',';
    if (parent[v] != kNoNode) out << parent[v] << ',' << (tree.left(parent[v]) == v ? 'L' : 'R');
    else out << ',';
    out << ',';
    if (tree.has_keys()) out << tree.key(v);
    out << ',' << label[v] << '\n';
  }
  return out.str();
}

std::vector<BinaryTree> all_shapes(std::size_t m) {
  // by_size[s] holds every shape with s nodes; size 0 is the empty subtree.
  std::vector<std::vector<BinaryTree>> by_size(m + 1);
  for (std::size_t s = 1; s <= m; ++s) {
    auto& out = by_size[s];
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t j = s - 1 - i;
      const std::size_t nl = i == 0 ? 1 : by_size[i].size();
      const std::size_t nr = j == 0 ? 1 : by_size[j].size();
      for (std::size_t a = 0; a < nl; ++a) {
        for (std::size_t b = 0; b < nr; ++b) {
          out.push_back(BinaryTree::join(i == 0 ? nullptr : &by_size[i][a], j == 0 ? nullptr : &by_size[j][b]));
        }
      }
    }
  }
  return m == 0 ? std::vector<BinaryTree>{} : std::move(by_size[m]);
}

}  // namespace bft
