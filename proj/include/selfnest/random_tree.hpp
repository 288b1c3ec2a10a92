#pragma once

#include <cstdint>
#include <stdexcept>

#include "selfnest/tree.hpp"

namespace selfnest {

// splitmix64: state advances by the golden-ratio increment, outputs are the
// finalized state. Fixed here by algorithm, not by platform, so seeds and
// golden files mean the same thing everywhere.
constexpr std::uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kSplitmixGamma;
  return splitmix64_mix(state);
}

// k-th output of the stream seeded at master. Counter-based, so seeds can be
// drawn in any order and in parallel.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
  return splitmix64_mix(master + (k + 1) * kSplitmixGamma);
}

enum class GenModel { UniformAttachment };

struct GenSpec {
  std::size_t n_nodes = 1;
  std::uint64_t seed = 0;
  GenModel model = GenModel::UniformAttachment;
};

// Uniform attachment: node i (ids run 0..n-1, 0 is the root) picks its parent
// as splitmix64_next(state) % i among the nodes already present.
inline Tree random_tree(const GenSpec& spec) {
  if (spec.n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
  TreeBuilder b;
  b.add_root();
  std::uint64_t state = spec.seed;
  for (std::size_t i = 1; i < spec.n_nodes; ++i)
    b.add_child(static_cast<NodeId>(splitmix64_next(state) % i));
  return b.build();
}

}  // namespace selfnest
