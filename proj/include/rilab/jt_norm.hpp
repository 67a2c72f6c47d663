#pragma once

// Exact James tree norm: the maximum over families of pairwise disjoint
// segments of the sum of squared segment sums.

#include "rilab/spaces.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace rilab {

/// A chain of nodes, each an immediate successor of the previous one.
using Segment = std::vector<DyadicNode>;
using SegmentFamily = std::vector<Segment>;

inline constexpr std::size_t kBruteForceSupportCap = 14;
inline constexpr std::uint32_t kDpLevelCap = 24;

/// Chains whose endpoints lie on root paths of support nodes and that meet the
/// support, ordered by (top, bottom).
std::vector<Segment> enumerate_segments(const std::set<DyadicNode>& support, std::uint32_t max_level);

Rational segment_sum(const SparseVector& v, const Segment& s);
bool is_valid_segment(const Segment& s);

struct JtOptimum {
  NormValue norm;
  SegmentFamily witness;
};

/// Exhaustive search over disjoint families; support at most 14 nodes.
JtOptimum jt_norm_bruteforce_witness(const SparseVector& v);
NormValue jt_norm_bruteforce(const SparseVector& v);

struct JtDpOptions {
  bool prune = true;
};

/// Bottom-up DP over the union of root paths of the support; levels at most 24.
NormValue jt_norm_dp(const SparseVector& v, JtDpOptions options = {});

// ---------------------------------------------------------------------------
// Constrained selection. Every node carries a fixed base value and may add at
// most one optional choice. Choices belong to groups, and each group owns a
// small set of slots: a slot may be taken by at most one node of its group.
// Groups must be nondecreasing along the in-order of the tree (the order of
// the points (2k-1)/2^{n+1}); the tree is then cut so that each subtree only
// shares its first and last group with the rest.

struct JtSelectChoice {
  DyadicNode node;
  Rational value;
  std::uint32_t group = 0;
  std::uint8_t slots = 1;
};

struct JtSelectStats {
  std::size_t tree_nodes = 0;
  std::size_t max_states = 0;
};

/// Maximum squared JT norm over all admissible selections, or nullopt when the
/// groups are not ordered along the tree.
std::optional<Rational> jt_select_max_square(const std::map<DyadicNode, Rational>& base,
                                             const std::vector<JtSelectChoice>& choices,
                                             JtDpOptions options = {}, JtSelectStats* stats = nullptr);

}  // namespace rilab
