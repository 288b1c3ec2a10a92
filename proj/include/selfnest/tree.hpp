#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace selfnest {

using NodeId = std::uint32_t;

constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct EditOp;

// Unordered rooted tree backed by a node arena. Child order is stored for
// deterministic traversal but carries no meaning; structural comparisons go
// through the canonical bracket form. Ids stay valid across copy-and-edit;
// ids of deleted nodes are never reused within a value.
class Tree {
 public:
  struct Node {
    NodeId parent = kNoNode;
    std::vector<NodeId> children;
    int height = 0;
    bool alive = false;
  };

  Tree() = default;

  static Tree leaf() {
    Tree t;
    t.nodes_.push_back(Node{kNoNode, {}, 0, true});
    t.root_ = 0;
    t.alive_ = 1;
    return t;
  }

  NodeId root() const { return root_; }
  std::size_t size() const { return alive_; }
  bool empty() const { return alive_ == 0; }

  // Arena extent, for id-indexed scratch arrays. Includes dead slots.
  std::size_t slot_count() const { return nodes_.size(); }

  bool is_alive(NodeId v) const { return v < nodes_.size() && nodes_[v].alive; }

  NodeId parent(NodeId v) const { return at(v).parent; }
  const std::vector<NodeId>& children(NodeId v) const { return at(v).children; }
  int height(NodeId v) const { return at(v).height; }
  int height() const { return at(root_).height; }

  // Alive nodes, depth-first preorder, children in stored order.
  std::vector<NodeId> preorder() const {
    std::vector<NodeId> out;
    out.reserve(alive_);
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      out.push_back(v);
      const auto& ch = nodes_[v].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

 private:
  const Node& at(NodeId v) const {
    if (!is_alive(v)) throw std::out_of_range("unknown node id " + std::to_string(v));
    return nodes_[v];
  }

  std::vector<Node> nodes_;
  NodeId root_ = kNoNode;
  std::size_t alive_ = 0;

  friend class TreeBuilder;
  friend Tree apply(const Tree& t, const EditOp& op);
};

// Assembles a Tree top-down; heights are computed once at build().
class TreeBuilder {
 public:
  NodeId add_root() {
    if (root_ != kNoNode) throw std::logic_error("root already set");
    root_ = add_node(kNoNode);
    return root_;
  }

  NodeId add_child(NodeId parent) {
    if (parent >= nodes_.size()) throw std::out_of_range("unknown parent id");
    NodeId v = add_node(parent);
    nodes_[parent].children.push_back(v);
    return v;
  }

  std::size_t size() const { return nodes_.size(); }

  Tree build() {
    if (root_ == kNoNode) throw std::logic_error("empty tree");
    Tree t;
    t.nodes_ = std::move(nodes_);
    t.root_ = root_;
    t.alive_ = t.nodes_.size();
    compute_heights(t);
    nodes_.clear();
    root_ = kNoNode;
    return t;
  }

 private:
  NodeId add_node(NodeId parent) {
    NodeId v = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Tree::Node{parent, {}, 0, true});
    return v;
  }

  static void compute_heights(Tree& t) {
    std::vector<NodeId> order = t.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto& n = t.nodes_[*it];
      int h = 0;
      for (NodeId c : n.children) h = std::max(h, t.nodes_[c].height + 1);
      n.height = h;
    }
  }

  std::vector<Tree::Node> nodes_;
  NodeId root_ = kNoNode;
};

struct parse_error : std::invalid_argument {
  parse_error(const std::string& what, std::size_t byte)
      : std::invalid_argument("byte " + std::to_string(byte) + ": " + what), offset(byte) {}
  std::size_t offset;
};

// Grammar: tree := '(' tree* ')'. Whitespace between tokens is ignored;
// anything else is a syntax error reported with its byte offset.
inline Tree parse_tree(std::string_view text) {
  TreeBuilder b;
  std::vector<NodeId> stack;
  bool done = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') continue;
    if (ch == '(') {
      if (done) throw parse_error("trailing input after complete tree", i);
      if (stack.empty()) {
        stack.push_back(b.add_root());
      } else {
        stack.push_back(b.add_child(stack.back()));
      }
    } else if (ch == ')') {
      if (stack.empty()) throw parse_error("unmatched ')'", i);
      stack.pop_back();
      if (stack.empty()) done = true;
    } else {
      throw parse_error(std::string("unexpected character '") + ch + "'", i);
    }
  }
  if (!stack.empty()) throw parse_error("unclosed '('", text.size());
  if (!done) throw parse_error("empty input", text.size());
  return b.build();
}

// Canonical form: children's canonical strings sorted ascending, concatenated,
// wrapped in one pair of brackets. Two trees are isomorphic as unordered trees
// exactly when their canonical strings are byte-equal.
inline std::string serialize_canonical(const Tree& t) {
  std::vector<NodeId> order = t.preorder();
  std::vector<std::string> canon(t.slot_count());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId v = *it;
    const auto& ch = t.children(v);
    std::vector<std::string> parts;
    parts.reserve(ch.size());
    for (NodeId c : ch) parts.push_back(std::move(canon[c]));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    s += ')';
    canon[v] = std::move(s);
  }
  return std::move(canon[t.root()]);
}

inline int height(const Tree& t) { return t.height(); }

// Largest number of children over all nodes.
inline int outdegree(const Tree& t) {
  std::size_t d = 0;
  for (NodeId v : t.preorder()) d = std::max(d, t.children(v).size());
  return static_cast<int>(d);
}

inline bool is_isomorphic(const Tree& a, const Tree& b) {
  if (a.size() != b.size() || a.height() != b.height()) return false;
  return serialize_canonical(a) == serialize_canonical(b);
}

}  // namespace selfnest
