#pragma once

#include <optional>
#include <string>
#include <vector>

#include "postman/graph.hpp"
#include "postman/treedepth.hpp"

namespace postman {

// First violation found when a selection fails to be properly balanced.
struct PbsViolation {
  enum Kind { Unbalanced, DoubleArcBroken, ForbiddenPairUsed } kind;
  VertexId vertex = -1;  // Unbalanced
  ArcId arc_a = -1, arc_b = -1;
  std::string to_string() const;
};

bool check_properly_balanced(const PbsInstance& p, const ArcSelection& s,
                             PbsViolation* violation = nullptr);

long long selection_weight(const PbsInstance& p, const ArcSelection& s);

// Per-vertex imbalance (out-degree minus in-degree) of a selection.
std::vector<long long> imbalance_vector(const PbsInstance& p, const ArcSelection& s);

// Exhaustive search for a properly balanced selection of negative weight.
// With max_arcs set, only selections of at most that many arcs are tried.
// Throws SearchLimitError when the subset space exceeds ~2^24.
std::optional<ArcSelection> brute_force_negative_pbs(
    const PbsInstance& p, std::optional<int> max_arcs = std::nullopt);

// Constructive decomposition of a properly balanced selection into pairwise
// arc-disjoint properly balanced parts, each with at most
// min(2^(2^k), |h|) arcs for an embedding of depth k: block split, root-child
// contraction, recursion, then zero-sum regrouping of the per-part imbalances
// at the contracted root (chain built from a minimum-|t| seed, steering the
// partial sum toward zero, ties to the lowest part index).
std::vector<ArcSelection> decompose_balanced_subgraph(const PbsInstance& p,
                                                      const ArcSelection& h,
                                                      const TreeEmbedding& emb);

// 2^(2^k), saturating well above any realistic arc count.
long long pattern_size_bound(int tree_depth);

}  // namespace postman
