#pragma once

#include <string>
#include <utility>
#include <vector>

#include "postman/graph.hpp"

namespace postman {

// Rooted forest over exactly the graph's vertices; parent[v] == -1 marks a
// component root. Valid when every graph edge joins an ancestor/descendant
// pair. depth = number of vertices on the longest root-to-leaf path.
struct TreeEmbedding {
  std::vector<VertexId> parent;
  int depth = 0;
};

// Exact tree-depth with a witness embedding attaining it. Components larger
// than `component_cap` vertices raise SearchLimitError.
std::pair<int, TreeEmbedding> tree_depth_exact(const SimpleGraph& g, int component_cap = 20);

// Checks structure, the ancestor/descendant property for every edge, and the
// stored depth. On failure, *why (if given) names the first violation.
bool verify_tree_embedding(const SimpleGraph& g, const TreeEmbedding& emb,
                           std::string* why = nullptr);

}  // namespace postman
