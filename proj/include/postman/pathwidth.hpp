#pragma once

#include <string>
#include <vector>

#include "postman/graph.hpp"
#include "postman/treedepth.hpp"

namespace postman {

// A path decomposition: a sequence of bags. Width = max bag size - 1.
struct PathDecomposition {
  std::vector<std::vector<VertexId>> bags;

  int width() const;
};

bool validate_path_decomposition(const SimpleGraph& g, const PathDecomposition& pd,
                                 std::string* why = nullptr);

// Upper bound via a certifying decomposition. Exact (vertex-ordering DP) for
// graphs up to `exact_limit` vertices; otherwise derived from a tree-depth
// embedding when one is computable, else from a BFS ordering. Never fails:
// the trivial single-bag decomposition always exists.
PathDecomposition pathwidth_upper_bound(const SimpleGraph& g, int exact_limit = 12);

// Width-(depth-1) decomposition read off an embedding: one bag per leaf,
// holding its root path, in DFS order.
PathDecomposition decomposition_from_embedding(const SimpleGraph& g, const TreeEmbedding& emb);

// The join-lemma construction: splice `insert` into `base` at the bag of
// smallest size containing all of `anchor`, replicating that bag around the
// inserted run and adding its contents to every inserted bag.
void splice_decomposition(PathDecomposition& base, const std::vector<VertexId>& anchor,
                          const PathDecomposition& insert);

}  // namespace postman
