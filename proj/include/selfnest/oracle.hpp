#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "selfnest/edit_ops.hpp"
#include "selfnest/height_profile.hpp"
#include "selfnest/tree.hpp"

// Brute-force ground truth. Everything here trades speed for an argument
// that it cannot be wrong in the same way as the fast transforms.

namespace selfnest {

enum class SlotAssign { Matching, Greedy };

// Memo for the embedding decision, keyed by subtree shape and the height of
// the slot the subtree is placed into.
struct EmbedMemo {
  std::map<std::pair<std::string, int>, bool> cache;
};

namespace oracle_detail {

struct EmbedContext {
  const Tree* t = nullptr;
  const ScalarProfile* s = nullptr;
  SlotAssign mode = SlotAssign::Matching;
  std::vector<std::string> canon;  // canonical form per node
  EmbedMemo memo;
};

inline std::vector<std::string> canonical_per_node(const Tree& t) {
  std::vector<NodeId> order = t.preorder();
  std::vector<std::string> canon(t.slot_count());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<std::string> parts;
    for (NodeId c : t.children(*it)) parts.push_back(canon[c]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    s += ')';
    canon[*it] = std::move(s);
  }
  return canon;
}

// Can each child be given its own slot unit, where a child of height g may
// occupy any slot of height >= g whose subtree it embeds into? Slots of one
// height are interchangeable, so a unit per (height, copy) suffices; copies
// beyond the number of children can never all be used.
inline bool assign_children(const std::vector<int>& child_heights, const std::vector<std::vector<char>>& eligible,
                            const std::vector<std::int64_t>& capacity, SlotAssign mode) {
  std::size_t m = child_heights.size();
  if (m == 0) return true;
  std::vector<int> unit_height;
  for (std::size_t j = 0; j < capacity.size(); ++j) {
    std::int64_t copies = std::min<std::int64_t>(capacity[j], static_cast<std::int64_t>(m));
    for (std::int64_t c = 0; c < copies; ++c) unit_height.push_back(static_cast<int>(j));
  }
  if (mode == SlotAssign::Greedy) {
    // Tallest children first, each takes the lowest still-free eligible unit.
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return child_heights[a] > child_heights[b]; });
    std::vector<char> used(unit_height.size(), 0);
    for (std::size_t i : order) {
      std::size_t pick = unit_height.size();
      for (std::size_t u = 0; u < unit_height.size(); ++u) {
        if (used[u] || !eligible[i][static_cast<std::size_t>(unit_height[u])]) continue;
        if (pick == unit_height.size() || unit_height[u] < unit_height[pick]) pick = u;
      }
      if (pick == unit_height.size()) return false;
      used[pick] = 1;
    }
    return true;
  }
  // Kuhn's augmenting paths, children matched to slot units.
  std::vector<int> unit_owner(unit_height.size(), -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t u = 0; u < unit_height.size(); ++u) {
      if (seen[u] || !eligible[i][static_cast<std::size_t>(unit_height[u])]) continue;
      seen[u] = 1;
      if (unit_owner[u] < 0 || self(self, static_cast<std::size_t>(unit_owner[u]))) {
        unit_owner[u] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < m; ++i) {
    seen.assign(unit_height.size(), 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

inline bool embeds_node(EmbedContext& ctx, NodeId v, int target_height);

// v sits exactly at its own height: its children must fit the slot layout.
inline bool embeds_in_place(EmbedContext& ctx, NodeId v) {
  int g = ctx.t->height(v);
  if (g == 0) return true;
  std::vector<NodeId> kids(ctx.t->children(v).begin(), ctx.t->children(v).end());
  std::vector<int> child_heights;
  std::vector<std::vector<char>> eligible;
  std::vector<std::int64_t> capacity(static_cast<std::size_t>(g), 0);
  for (int j = 0; j < g; ++j) capacity[static_cast<std::size_t>(j)] = ctx.s->at(g, j);
  for (NodeId c : kids) {
    int gc = ctx.t->height(c);
    child_heights.push_back(gc);
    std::vector<char> row(static_cast<std::size_t>(g), 0);
    for (int j = gc; j < g; ++j)
      if (capacity[static_cast<std::size_t>(j)] > 0 && embeds_node(ctx, c, j)) row[static_cast<std::size_t>(j)] = 1;
    eligible.push_back(std::move(row));
  }
  return assign_children(child_heights, eligible, capacity, ctx.mode);
}

inline bool embeds_node(EmbedContext& ctx, NodeId v, int target_height) {
  auto key = std::make_pair(ctx.canon[v], target_height);
  auto it = ctx.memo.cache.find(key);
  if (it != ctx.memo.cache.end()) return it->second;
  int g = ctx.t->height(v);
  bool ok = target_height > g ? embeds_node(ctx, v, target_height - 1) : embeds_in_place(ctx, v);
  ctx.memo.cache.emplace(std::move(key), ok);
  return ok;
}

}  // namespace oracle_detail

// True iff t can be turned into the self-nested tree described by s using
// only height-preserving insertions. A node may be promoted into a slot
// above its own height through chains of unary hosts; at its resting height
// its children must fit the slot capacities, children of lower height being
// allowed to ride up into taller slots.
inline bool embeds_into_sn(const Tree& t, const ScalarProfile& s, SlotAssign mode = SlotAssign::Matching) {
  if (t.height() != s.dim()) throw std::invalid_argument("height mismatch");
  require_realizable(s);
  oracle_detail::EmbedContext ctx;
  ctx.t = &t;
  ctx.s = &s;
  ctx.mode = mode;
  ctx.canon = oracle_detail::canonical_per_node(t);
  return oracle_detail::embeds_node(ctx, t.root(), s.dim());
}

// All realizable scalar profiles of the given dimension whose tree has at
// most node_budget nodes, visited in a deterministic order.
namespace oracle_detail {

template <typename Fn>
inline void for_each_profile(int dim, std::uint64_t node_budget, Fn&& fn) {
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(dim));
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(dim) + 1, 0);
  counts[0] = 1;
  auto rec = [&](auto&& self, int h1) -> void {
    if (h1 > dim) {
      fn(ScalarProfile::from_rows(rows));
      return;
    }
    auto& row = rows[static_cast<std::size_t>(h1) - 1];
    row.assign(static_cast<std::size_t>(h1), 0);
    // Cheapest completion above h1 adds one node per remaining height.
    if (node_budget < static_cast<std::uint64_t>(dim - h1)) return;
    std::uint64_t slack = node_budget - static_cast<std::uint64_t>(dim - h1);
    auto fill = [&](auto&& fself, int h2, std::uint64_t partial) -> void {
      if (h2 < 0) {
        counts[static_cast<std::size_t>(h1)] = partial;
        self(self, h1 + 1);
        return;
      }
      std::int64_t lo = h2 == h1 - 1 ? 1 : 0;
      for (std::int64_t v = lo; partial + static_cast<std::uint64_t>(v) * counts[static_cast<std::size_t>(h2)] <= slack; ++v) {
        row[static_cast<std::size_t>(h2)] = v;
        fself(fself, h2 - 1, partial + static_cast<std::uint64_t>(v) * counts[static_cast<std::size_t>(h2)]);
      }
      row[static_cast<std::size_t>(h2)] = 0;
    };
    fill(fill, h1 - 1, 1);
  };
  rec(rec, 1);
}

}  // namespace oracle_detail

// Exhaustive minimal self-nested host: tries every realizable profile of the
// input's height within the node budget and keeps the smallest one the input
// embeds into. The optimum is known to be unique; a tie trips an assertion.
inline Tree brute_nest(const Tree& t, std::uint64_t node_budget) {
  int dim = t.height();
  std::uint64_t best = 0;
  std::vector<ScalarProfile> argmin;
  oracle_detail::for_each_profile(dim, node_budget, [&](const ScalarProfile& s) {
    std::uint64_t n = sn_node_count(s);
    if (!argmin.empty() && n > best) return;
    if (!embeds_into_sn(t, s)) return;
    if (argmin.empty() || n < best) {
      best = n;
      argmin.assign(1, s);
    } else if (n == best) {
      argmin.push_back(s);
    }
  });
  if (argmin.empty()) throw std::runtime_error("node budget exhausted");
  if (argmin.size() != 1) throw std::logic_error("minimal host is not unique");
  return sn_tree_from_profile(argmin.front());
}

// Canonical forms of every tree reachable from t by legal deletions,
// including t itself.
inline std::set<std::string> deletion_closure(const Tree& t) {
  std::set<std::string> seen;
  std::queue<Tree> queue;
  seen.insert(serialize_canonical(t));
  queue.push(t);
  while (!queue.empty()) {
    Tree cur = std::move(queue.front());
    queue.pop();
    std::vector<EditOp> ops;
    for (NodeId v : cur.preorder()) {
      if (v == cur.root()) continue;
      if (cur.children(v).size() == 1) ops.push_back(EditOp::delete_internal(v));
      ops.push_back(EditOp::delete_subtree(cur.parent(v), v));
    }
    for (const EditOp& op : ops) {
      if (!can_apply(cur, op)) continue;
      Tree next = apply(cur, op);
      if (seen.insert(serialize_canonical(next)).second) queue.push(next);
    }
  }
  return seen;
}

namespace oracle_detail {

// Self-nestedness straight from the definition: all subtrees of the same
// height are isomorphic. Deliberately avoids the profile machinery.
inline bool self_nested_by_definition(const Tree& t) {
  std::vector<std::string> canon = canonical_per_node(t);
  std::map<int, std::set<std::string>> by_height;
  for (NodeId v : t.preorder()) by_height[t.height(v)].insert(canon[v]);
  for (const auto& [h, forms] : by_height)
    if (forms.size() > 1) return false;
  return true;
}

}  // namespace oracle_detail

// Exhaustive maximal embedded self-nested trees: breadth-first closure under
// legal deletions, keep the largest self-nested members. The optimum is not
// always a single tree: deleting the root of a tall unary subtree reclassifies
// its child one height down, a move outside the per-height shrinking model,
// and it can tie or even beat that model. Smallest witnesses, frozen in the
// tests: "((()())(()))" has two 5-node optima, and "(((()))((())(())))" has a
// unique 8-node optimum while the fast transform stops at 7.
inline std::vector<Tree> brute_nest_embedded_all(const Tree& t) {
  std::set<std::string> closure = deletion_closure(t);
  std::size_t best = 0;
  std::vector<std::string> argmax;
  for (const std::string& form : closure) {
    Tree candidate = parse_tree(form);
    if (!oracle_detail::self_nested_by_definition(candidate)) continue;
    std::size_t n = candidate.size();
    if (argmax.empty() || n > best) {
      best = n;
      argmax.assign(1, form);
    } else if (n == best) {
      argmax.push_back(form);
    }
  }
  if (argmax.empty()) throw std::logic_error("deletion closure lost every self-nested tree");
  std::vector<Tree> out;
  out.reserve(argmax.size());
  for (const std::string& form : argmax) out.push_back(parse_tree(form));
  return out;
}

// The single maximal embedded self-nested tree, when there is one.
inline Tree brute_nest_embedded(const Tree& t) {
  std::vector<Tree> all = brute_nest_embedded_all(t);
  if (all.size() != 1) throw std::logic_error("maximal embedded tree is not unique");
  return std::move(all.front());
}

// Every unordered rooted tree with exactly n nodes, one representative per
// isomorphism class, in canonical order.
inline std::vector<Tree> enumerate_trees(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("node count must be in [1, 12]");
  // forms[k] lists canonical forms with k nodes; children of a new root are
  // chosen as a multiset, encoded by a non-decreasing index sequence.
  std::vector<std::vector<std::string>> forms(static_cast<std::size_t>(n) + 1);
  forms[1] = {"()"};
  for (int k = 2; k <= n; ++k) {
    std::vector<std::pair<int, std::string>> pool;  // (size, form), sizes < k
    for (int s = 1; s < k; ++s)
      for (const auto& f : forms[static_cast<std::size_t>(s)]) pool.emplace_back(s, f);
    std::set<std::string> built;
    std::vector<std::string> parts;
    auto rec = [&](auto&& self, std::size_t min_idx, int remaining) -> void {
      if (remaining == 0) {
        std::vector<std::string> sorted = parts;
        std::sort(sorted.begin(), sorted.end());
        std::string form = "(";
        for (const auto& p : sorted) form += p;
        form += ')';
        built.insert(std::move(form));
        return;
      }
      for (std::size_t i = min_idx; i < pool.size(); ++i) {
        if (pool[i].first > remaining) continue;
        parts.push_back(pool[i].second);
        self(self, i, remaining - pool[i].first);
        parts.pop_back();
      }
    };
    rec(rec, 0, k - 1);
    forms[static_cast<std::size_t>(k)].assign(built.begin(), built.end());
  }
  std::vector<Tree> out;
  out.reserve(forms[static_cast<std::size_t>(n)].size());
  for (const auto& f : forms[static_cast<std::size_t>(n)]) out.push_back(parse_tree(f));
  return out;
}

}  // namespace selfnest
