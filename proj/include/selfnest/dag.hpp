#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selfnest/tree.hpp"

namespace selfnest {

// One isomorphism class of subtrees. Edges point to the classes of the
// children of any representative, with multiplicities.
struct DagClass {
  int height = 0;
  std::string canonical;
  std::vector<std::pair<std::size_t, std::uint64_t>> edges;  // (class, multiplicity)
};

// Quotient of a tree by subtree isomorphism. Classes are ordered by
// (height, canonical string) so identifiers and exports are stable.
class DagReduction {
 public:
  std::size_t class_count() const { return classes_.size(); }
  const DagClass& at(std::size_t i) const {
    if (i >= classes_.size()) throw std::out_of_range("class " + std::to_string(i));
    return classes_[i];
  }
  std::size_t root_class() const { return root_; }
  int height() const { return classes_[root_].height; }

 private:
  std::vector<DagClass> classes_;
  std::size_t root_ = 0;

  friend DagReduction reduce(const Tree& t);
};

inline DagReduction reduce(const Tree& t) {
  std::vector<NodeId> order = t.preorder();
  std::vector<std::string> canon(t.slot_count());
  std::vector<std::size_t> cls(t.slot_count());
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<DagClass> classes;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId v = *it;
    std::vector<std::string> parts;
    parts.reserve(t.children(v).size());
    for (NodeId c : t.children(v)) parts.push_back(canon[c]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    s += ')';
    auto [pos, fresh] = ids.try_emplace(s, classes.size());
    cls[v] = pos->second;
    if (fresh) {
      DagClass dc;
      dc.height = t.height(v);
      dc.canonical = s;
      std::map<std::size_t, std::uint64_t> mult;
      for (NodeId c : t.children(v)) ++mult[cls[c]];
      dc.edges.assign(mult.begin(), mult.end());
      classes.push_back(std::move(dc));
    }
    canon[v] = std::move(s);
  }

  std::vector<std::size_t> by_order(classes.size());
  for (std::size_t i = 0; i < by_order.size(); ++i) by_order[i] = i;
  std::sort(by_order.begin(), by_order.end(), [&](std::size_t a, std::size_t b) {
    if (classes[a].height != classes[b].height) return classes[a].height < classes[b].height;
    return classes[a].canonical < classes[b].canonical;
  });
  std::vector<std::size_t> rank(classes.size());
  for (std::size_t i = 0; i < by_order.size(); ++i) rank[by_order[i]] = i;

  DagReduction d;
  d.classes_.resize(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    DagClass dc = std::move(classes[i]);
    for (auto& e : dc.edges) e.first = rank[e.first];
    std::sort(dc.edges.begin(), dc.edges.end());
    d.classes_[rank[i]] = std::move(dc);
  }
  d.root_ = rank[cls[t.root()]];
  return d;
}

// A reduction is linear when a single path covers it: one class per height.
inline bool is_linear(const DagReduction& d) {
  std::vector<int> per_height(static_cast<std::size_t>(d.height()) + 1, 0);
  for (std::size_t i = 0; i < d.class_count(); ++i) ++per_height[static_cast<std::size_t>(d.at(i).height)];
  for (int c : per_height)
    if (c != 1) return false;
  return true;
}

// Nodes of the tree each class unfolds to: m(C) = 1 + sum mult * m(child).
// Classes are height-sorted, so one ascending pass suffices.
inline std::vector<std::uint64_t> class_node_counts(const DagReduction& d) {
  std::vector<std::uint64_t> m(d.class_count());
  for (std::size_t i = 0; i < d.class_count(); ++i) {
    std::uint64_t total = 1;
    for (auto [child, mult] : d.at(i).edges) {
      std::uint64_t term = 0;
      if (__builtin_mul_overflow(mult, m[child], &term) || __builtin_add_overflow(total, term, &total))
        throw std::overflow_error("node count exceeds 64 bits");
    }
    m[i] = total;
  }
  return m;
}

inline std::uint64_t node_count(const DagReduction& d) { return class_node_counts(d)[d.root_class()]; }

inline Tree expand(const DagReduction& d) {
  TreeBuilder b;
  struct Frame {
    NodeId node;
    std::size_t cls;
  };
  std::vector<Frame> stack{{b.add_root(), d.root_class()}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    for (auto [child, mult] : d.at(f.cls).edges)
      for (std::uint64_t i = 0; i < mult; ++i) stack.push_back({b.add_child(f.node), child});
  }
  return b.build();
}

inline std::string to_dot(const DagReduction& d) {
  std::vector<std::uint64_t> m = class_node_counts(d);
  std::string out = "digraph dag {\n";
  for (std::size_t i = 0; i < d.class_count(); ++i)
    out += "  c" + std::to_string(i) + " [label=\"h=" + std::to_string(d.at(i).height) + ",n=" + std::to_string(m[i]) + "\"];\n";
  for (std::size_t i = 0; i < d.class_count(); ++i)
    for (auto [child, mult] : d.at(i).edges)
      out += "  c" + std::to_string(i) + " -> c" + std::to_string(child) + " [label=\"" + std::to_string(mult) + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace selfnest
