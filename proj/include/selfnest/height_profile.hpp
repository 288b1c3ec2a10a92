#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfnest/tree.hpp"

namespace selfnest {

// Height profile of a tree. Row h1 (1 <= h1 <= dim) describes the nodes whose
// subtree height is exactly h1, in preorder: column h2 < h1 holds, per such
// node, the number of its children with subtree height h2. Columns of one row
// are aligned by the same preorder position, so entry k of every column talks
// about the same node.
class HeightProfile {
 public:
  struct Row {
    std::size_t count = 0;                        // number of height-h1 nodes
    std::vector<std::vector<std::int64_t>> cols;  // cols[h2][k]
  };

  HeightProfile() = default;

  static HeightProfile from_rows(std::vector<Row> rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      if (r.cols.size() != i + 1) throw std::invalid_argument("row " + std::to_string(i + 1) + " must have h1 columns");
      for (const auto& col : r.cols)
        if (col.size() != r.count) throw std::invalid_argument("misaligned column in row " + std::to_string(i + 1));
    }
    HeightProfile p;
    p.rows_ = std::move(rows);
    return p;
  }

  int dim() const { return static_cast<int>(rows_.size()); }

  const Row& row(int h1) const {
    if (h1 < 1 || h1 > dim()) throw std::out_of_range("row " + std::to_string(h1));
    return rows_[static_cast<std::size_t>(h1) - 1];
  }

  const std::vector<std::int64_t>& entries(int h1, int h2) const {
    const Row& r = row(h1);
    if (h2 < 0 || h2 >= h1) throw std::out_of_range("column " + std::to_string(h2));
    return r.cols[static_cast<std::size_t>(h2)];
  }

  // Instrumentation: elementary steps spent building this profile.
  std::uint64_t ops() const { return ops_; }

 private:
  std::vector<Row> rows_;
  std::uint64_t ops_ = 0;

  friend HeightProfile compute_profile(const Tree& t);
  friend HeightProfile restrict_to(const HeightProfile& p, int h);
};

inline HeightProfile compute_profile(const Tree& t) {
  HeightProfile p;
  int H = t.height();
  p.rows_.resize(static_cast<std::size_t>(H));
  std::vector<NodeId> order = t.preorder();
  for (NodeId v : order) {
    int h = t.height(v);
    if (h >= 1) ++p.rows_[h - 1].count;
  }
  for (int h1 = 1; h1 <= H; ++h1) {
    auto& r = p.rows_[h1 - 1];
    r.cols.assign(static_cast<std::size_t>(h1), std::vector<std::int64_t>(r.count, 0));
  }
  std::vector<std::size_t> next(static_cast<std::size_t>(H) + 1, 0);
  for (NodeId v : order) {
    ++p.ops_;
    int h1 = t.height(v);
    if (h1 == 0) continue;
    std::size_t k = next[h1]++;
    auto& r = p.rows_[h1 - 1];
    for (NodeId c : t.children(v)) {
      ++p.ops_;
      ++r.cols[static_cast<std::size_t>(t.height(c))][k];
    }
  }
  return p;
}

// Keeps rows 1..h, drops the rest.
inline HeightProfile restrict_to(const HeightProfile& p, int h) {
  if (h < 0) throw std::invalid_argument("negative restriction height");
  HeightProfile q = p;
  if (h < q.dim()) q.rows_.resize(static_cast<std::size_t>(h));
  return q;
}

// Row-wise permutation equivalence: for every row, the multisets of per-node
// column tuples must coincide. This is what survives isomorphism.
inline bool profiles_equivalent(const HeightProfile& a, const HeightProfile& b) {
  if (a.dim() != b.dim()) return false;
  for (int h1 = 1; h1 <= a.dim(); ++h1) {
    const auto& ra = a.row(h1);
    const auto& rb = b.row(h1);
    if (ra.count != rb.count) return false;
    auto tuples = [h1](const HeightProfile::Row& r) {
      std::vector<std::vector<std::int64_t>> out(r.count);
      for (std::size_t k = 0; k < r.count; ++k) {
        out[k].reserve(static_cast<std::size_t>(h1));
        for (int h2 = 0; h2 < h1; ++h2) out[k].push_back(r.cols[static_cast<std::size_t>(h2)][k]);
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    if (tuples(ra) != tuples(rb)) return false;
  }
  return true;
}

inline bool is_self_nested(const HeightProfile& p) {
  for (int h1 = 1; h1 <= p.dim(); ++h1) {
    for (int h2 = 0; h2 < h1; ++h2) {
      const auto& col = p.entries(h1, h2);
      for (std::int64_t x : col)
        if (x != col.front()) return false;
    }
  }
  return true;
}

// Profile of a self-nested tree: one number per (h1, h2) cell.
class ScalarProfile {
 public:
  ScalarProfile() = default;

  static ScalarProfile from_rows(std::vector<std::vector<std::int64_t>> rows) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].size() != i + 1) throw std::invalid_argument("row " + std::to_string(i + 1) + " must have h1 entries");
    ScalarProfile s;
    s.rows_ = std::move(rows);
    return s;
  }

  int dim() const { return static_cast<int>(rows_.size()); }

  std::int64_t at(int h1, int h2) const {
    if (h1 < 1 || h1 > dim() || h2 < 0 || h2 >= h1) throw std::out_of_range("entry (" + std::to_string(h1) + "," + std::to_string(h2) + ")");
    return rows_[static_cast<std::size_t>(h1) - 1][static_cast<std::size_t>(h2)];
  }

  // A height-h1 node needs at least one height-(h1-1) child, in every row.
  bool realizable() const {
    for (int h1 = 1; h1 <= dim(); ++h1) {
      for (int h2 = 0; h2 < h1; ++h2)
        if (at(h1, h2) < 0) return false;
      if (at(h1, h1 - 1) < 1) return false;
    }
    return true;
  }

  bool operator==(const ScalarProfile&) const = default;

 private:
  std::vector<std::vector<std::int64_t>> rows_;
};

inline ScalarProfile restrict_to(const ScalarProfile& s, int h) {
  if (h < 0) throw std::invalid_argument("negative restriction height");
  std::vector<std::vector<std::int64_t>> rows;
  for (int h1 = 1; h1 <= std::min(h, s.dim()); ++h1) {
    std::vector<std::int64_t> row;
    for (int h2 = 0; h2 < h1; ++h2) row.push_back(s.at(h1, h2));
    rows.push_back(std::move(row));
  }
  return ScalarProfile::from_rows(std::move(rows));
}

inline ScalarProfile to_scalar(const HeightProfile& p) {
  if (!is_self_nested(p)) throw std::invalid_argument("profile is not constant per cell");
  std::vector<std::vector<std::int64_t>> rows;
  for (int h1 = 1; h1 <= p.dim(); ++h1) {
    std::vector<std::int64_t> row;
    for (int h2 = 0; h2 < h1; ++h2) {
      const auto& col = p.entries(h1, h2);
      row.push_back(col.empty() ? 0 : col.front());
    }
    rows.push_back(std::move(row));
  }
  return ScalarProfile::from_rows(std::move(rows));
}

inline void require_realizable(const ScalarProfile& s) {
  for (int h1 = 1; h1 <= s.dim(); ++h1) {
    for (int h2 = 0; h2 < h1; ++h2)
      if (s.at(h1, h2) < 0)
        throw std::invalid_argument("entry (" + std::to_string(h1) + "," + std::to_string(h2) + ") is negative");
    if (s.at(h1, h1 - 1) < 1)
      throw std::invalid_argument("entry (" + std::to_string(h1) + "," + std::to_string(h1 - 1) + ") must be >= 1");
  }
}

// Number of nodes of the tree a scalar profile describes:
// N(0) = 1, N(h) = 1 + sum over h2 < h of s(h,h2) * N(h2).
inline std::uint64_t sn_node_count(const ScalarProfile& s) {
  require_realizable(s);
  std::vector<std::uint64_t> n(static_cast<std::size_t>(s.dim()) + 1);
  n[0] = 1;
  for (int h1 = 1; h1 <= s.dim(); ++h1) {
    std::uint64_t total = 1;
    for (int h2 = 0; h2 < h1; ++h2) {
      std::uint64_t term = 0;
      if (__builtin_mul_overflow(static_cast<std::uint64_t>(s.at(h1, h2)), n[static_cast<std::size_t>(h2)], &term) ||
          __builtin_add_overflow(total, term, &total))
        throw std::overflow_error("node count exceeds 64 bits");
    }
    n[static_cast<std::size_t>(h1)] = total;
  }
  return n[static_cast<std::size_t>(s.dim())];
}

// The unique tree with this profile: a height-h node gets s(h,h2) children of
// height h2 for every h2 < h.
inline Tree sn_tree_from_profile(const ScalarProfile& s) {
  require_realizable(s);
  TreeBuilder b;
  NodeId root = b.add_root();
  struct Frame {
    NodeId node;
    int h;
  };
  std::vector<Frame> stack{{root, s.dim()}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    for (int h2 = 0; h2 < f.h; ++h2) {
      std::int64_t copies = s.at(f.h, h2);
      for (std::int64_t i = 0; i < copies; ++i) stack.push_back({b.add_child(f.node), h2});
    }
  }
  return b.build();
}

// Matrix layout, one line per row, vectors in parentheses, h2 ascending.
inline std::string render_profile(const HeightProfile& p) {
  std::string out = "dim=" + std::to_string(p.dim()) + "\n";
  for (int h1 = 1; h1 <= p.dim(); ++h1) {
    out += "h1=" + std::to_string(h1) + ":";
    for (int h2 = 0; h2 < h1; ++h2) {
      const auto& col = p.entries(h1, h2);
      out += " (";
      for (std::size_t k = 0; k < col.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(col[k]);
      }
      out += ')';
    }
    out += '\n';
  }
  return out;
}

}  // namespace selfnest
