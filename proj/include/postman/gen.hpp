#pragma once

#include <cstdint>
#include <random>

#include "postman/graph.hpp"
#include "postman/treedepth.hpp"

namespace postman {

// Deterministic instance generators (std::mt19937_64 seeded as given).

// Strongly connected mixed graph with n vertices and m elements, weights 1.
// Rejection-sampled; throws when the parameters cannot produce one.
MixedGraph gen_random_mixed(int n, int m, uint64_t seed);

// Colored graph with k classes of the given size; each cross-class vertex
// pair becomes an edge with probability edge_prob_percent / 100.
ColoredGraph gen_random_colored(int k, int class_size, int edge_prob_percent, uint64_t seed);

// Theorem-2 output form: `zero_arcs` weight-0 arcs, `double_pairs` weight-0
// double pairs, one weight -1 arc, no forbidden pairs.
PbsInstance gen_random_pbs_theorem2(int n, int zero_arcs, int double_pairs, uint64_t seed);

// Restricted-weight form: +-1 unpaired arcs, weight-0 double pairs,
// weight -1 forbidden pairs.
PbsInstance gen_random_pbs_restricted(int n, int neg_arcs, int pos_arcs, int double_pairs,
                                      int forbidden_pairs, uint64_t seed);

// Host instance of tree-depth <= depth together with a properly balanced
// selection (an arc-disjoint union of cycles along embedding chains); pair
// declarations are chosen consistently with the selection.
struct BalancedSample {
  PbsInstance instance;
  ArcSelection selection;
  TreeEmbedding embedding;
};
BalancedSample gen_balanced_subgraph_sample(int depth, int cycles, uint64_t seed);

}  // namespace postman
