#pragma once

#include <array>
#include <climits>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "postman/graph.hpp"
#include "postman/pbs.hpp"

namespace postman {

// Arc labels of the restricted-weight PBS form: unpaired arcs are Negative
// (weight -1) or Positive (weight 1), double-pair arcs are Double (weight 0),
// forbidden-pair arcs are Forbidden (weight -1).
enum class ArcLabel : uint8_t { Negative = 0, Positive = 1, Double = 2, Forbidden = 3 };

constexpr int kLabelCount = 4;

struct PatternPair {
  uint8_t tail = 0, head = 0;
  std::array<uint16_t, kLabelCount> c{};  // arc multiplicities per label
};

// A small balanced labeled directed multigraph, the unit of the FPT search.
// Vertices are 0..num_vertices-1 with no isolated vertex. Double arcs come in
// same-direction same-endpoint pairs (even count per ordered pair); at most
// one Forbidden arc per unordered vertex pair.
struct LabeledPattern {
  int num_vertices = 0;
  std::vector<PatternPair> pairs;  // sorted by (tail, head), no all-zero entries

  int arc_count() const;
  std::array<int, kLabelCount> label_totals() const;
  // weight under the restricted form: -(neg + forb) + pos
  long long weight() const;
  bool is_balanced() const;
  bool is_connected() const;
  // pair invariants (Double even per ordered pair, <=1 Forbidden per
  // unordered pair)
  bool is_valid() const;

  void add_arc(int tail, int head, ArcLabel label, int count = 1);
  int count(int tail, int head, ArcLabel label) const;
};

// Canonical relabeling (lex-max adjacency blocks over vertex orders) and the
// corresponding dedup key.
LabeledPattern canonicalize_pattern(const LabeledPattern& p, std::string* key = nullptr);
std::string pattern_key(const LabeledPattern& p);

struct PatternBudgets {
  int max_arcs = 4;
  int max_vertices = 64;
  std::array<int, kLabelCount> max_label_total{INT_MAX / 2, INT_MAX / 2, INT_MAX / 2,
                                               INT_MAX / 2};
  std::array<int, kLabelCount> max_per_pair{INT_MAX / 2, INT_MAX / 2, INT_MAX / 2,
                                            INT_MAX / 2};
  int max_out_degree = INT_MAX / 2;
  int max_in_degree = INT_MAX / 2;
  bool connected_only = false;
  // Prune states that can never reach count(Neg)+count(Forb) > count(Pos).
  bool require_negative_reachable = false;
};

// Streams every isomorphism class of balanced labeled directed multigraph
// with 1..max_arcs arcs within the budgets, in (arc count, canonical key)
// order, without duplicates. Return false from the sink to stop.
void enumerate_balanced_patterns(const PatternBudgets& budgets,
                                 const std::function<bool(const LabeledPattern&)>& sink);
std::vector<LabeledPattern> enumerate_balanced_patterns(int max_arcs);

// Label-respecting embedding of the pattern into a restricted-form instance.
// Double pattern pairs map onto whole declared double pairs. Returns a
// selection passing check_properly_balanced, or nullopt.
std::optional<ArcSelection> embed_labeled_pattern(const LabeledPattern& pat,
                                                  const PbsInstance& p);

// Throws InstanceError unless: double-pair arcs weigh 0, forbidden-pair arcs
// weigh -1, all other arcs weigh +1 or -1.
void check_restricted_weights(const PbsInstance& p);

struct FptOptions {
  std::optional<int> tree_depth;  // computed exactly when absent
  std::optional<int> arc_cap;     // default 12
  int jobs = 1;                   // >1 enables the OpenMP search path
};

struct FptResult {
  std::optional<ArcSelection> selection;
  bool complete = true;   // false when the arc cap (not f(k)) cut the search
  long long bound = 0;    // pattern-size bound actually used
  int tree_depth = 0;
  long long patterns_tried = 0;
};

// Theorem-5 style search: enumerate balanced labeled patterns up to
// min(2^(2^td), arc_cap, |arcs|) and embed; first success in canonical
// pattern order wins (identical result for serial and parallel paths).
FptResult fpt_negative_pbs(const PbsInstance& p, const FptOptions& options = {});

}  // namespace postman
