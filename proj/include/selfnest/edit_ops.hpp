#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfnest/tree.hpp"

namespace selfnest {

enum class EditKind { AddInternal, AddSubtree, DeleteInternal, DeleteSubtree };

// One height-preserving edit. anchor is v in the rules below; child names the
// existing child the op acts through (AddInternal: the child pushed down,
// DeleteSubtree: the subtree root). AddSubtree carries the inserted tree.
struct EditOp {
  EditKind kind = EditKind::AddInternal;
  NodeId anchor = kNoNode;
  NodeId child = kNoNode;
  std::optional<Tree> payload;

  static EditOp add_internal(NodeId v, NodeId c) { return {EditKind::AddInternal, v, c, std::nullopt}; }
  static EditOp add_subtree(NodeId v, Tree t) { return {EditKind::AddSubtree, v, kNoNode, std::move(t)}; }
  static EditOp delete_internal(NodeId v) { return {EditKind::DeleteInternal, v, kNoNode, std::nullopt}; }
  static EditOp delete_subtree(NodeId v, NodeId w) { return {EditKind::DeleteSubtree, v, w, std::nullopt}; }
};

struct Legality {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline Legality can_apply(const Tree& t, const EditOp& op) {
  auto fail = [](std::string why) { return Legality{false, std::move(why)}; };
  auto require_alive = [&t](NodeId v) {
    if (!t.is_alive(v)) throw std::out_of_range("unknown node id " + std::to_string(v));
  };
  require_alive(op.anchor);
  if (op.kind == EditKind::AddInternal || op.kind == EditKind::DeleteSubtree) require_alive(op.child);
  switch (op.kind) {
    case EditKind::AddInternal: {
      const auto& ch = t.children(op.anchor);
      if (std::find(ch.begin(), ch.end(), op.child) == ch.end()) return fail("child is not a child of anchor");
      if (t.height(op.child) + 1 >= t.height(op.anchor)) return fail("H(child)+1 must be < H(anchor)");
      return {true, {}};
    }
    case EditKind::AddSubtree: {
      if (!op.payload || op.payload->empty()) return fail("missing payload");
      if (op.payload->height() + 1 > t.height(op.anchor)) return fail("H(payload)+1 must be <= H(anchor)");
      return {true, {}};
    }
    case EditKind::DeleteInternal: {
      NodeId u = t.parent(op.anchor);
      if (u == kNoNode) return fail("cannot delete the root");
      if (t.children(op.anchor).size() != 1) return fail("target must have exactly one child");
      for (NodeId s : t.children(u))
        if (s != op.anchor && t.height(s) >= t.height(op.anchor)) return {true, {}};
      return fail("no sibling at least as high");
    }
    case EditKind::DeleteSubtree: {
      const auto& ch = t.children(op.anchor);
      if (std::find(ch.begin(), ch.end(), op.child) == ch.end()) return fail("child is not a child of anchor");
      for (NodeId s : ch)
        if (s != op.child && t.height(s) + 1 == t.height(op.anchor)) return {true, {}};
      return fail("no sibling realizing the anchor height");
    }
  }
  return fail("unknown op kind");
}

inline Tree apply(const Tree& t, const EditOp& op) {
  Legality leg = can_apply(t, op);
  if (!leg) throw std::invalid_argument("illegal edit: " + leg.reason);
  Tree out = t;
  switch (op.kind) {
    case EditKind::AddInternal: {
      NodeId w = static_cast<NodeId>(out.nodes_.size());
      out.nodes_.push_back(Tree::Node{op.anchor, {op.child}, t.height(op.child) + 1, true});
      auto& ch = out.nodes_[op.anchor].children;
      *std::find(ch.begin(), ch.end(), op.child) = w;
      out.nodes_[op.child].parent = w;
      ++out.alive_;
      break;
    }
    case EditKind::AddSubtree: {
      const Tree& payload = *op.payload;
      std::vector<NodeId> remap(payload.slot_count(), kNoNode);
      for (NodeId v : payload.preorder()) {
        NodeId nv = static_cast<NodeId>(out.nodes_.size());
        remap[v] = nv;
        NodeId p = payload.parent(v) == kNoNode ? op.anchor : remap[payload.parent(v)];
        out.nodes_.push_back(Tree::Node{p, {}, payload.height(v), true});
        if (v == payload.root()) {
          out.nodes_[op.anchor].children.push_back(nv);
        } else {
          out.nodes_[p].children.push_back(nv);
        }
        ++out.alive_;
      }
      break;
    }
    case EditKind::DeleteInternal: {
      NodeId u = t.parent(op.anchor);
      NodeId c = t.children(op.anchor).front();
      auto& ch = out.nodes_[u].children;
      *std::find(ch.begin(), ch.end(), op.anchor) = c;
      out.nodes_[c].parent = u;
      out.nodes_[op.anchor].alive = false;
      out.nodes_[op.anchor].children.clear();
      --out.alive_;
      break;
    }
    case EditKind::DeleteSubtree: {
      auto& ch = out.nodes_[op.anchor].children;
      ch.erase(std::find(ch.begin(), ch.end(), op.child));
      std::vector<NodeId> stack{op.child};
      while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        out.nodes_[v].alive = false;
        for (NodeId c : out.nodes_[v].children) stack.push_back(c);
        out.nodes_[v].children.clear();
        --out.alive_;
      }
      break;
    }
  }
  return out;
}

// Zhang's constrained mappings only admit child subsets that are empty, a
// singleton, or all children.
inline bool is_zhang_valid_insertion(std::size_t child_subset_size, std::size_t total_children) {
  return child_subset_size == 0 || child_subset_size == 1 || child_subset_size == total_children;
}

}  // namespace selfnest
