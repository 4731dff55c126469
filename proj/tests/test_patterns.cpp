#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "postman/gen.hpp"
#include "postman/patterns.hpp"

using namespace postman;

namespace {

PatternBudgets budgets_all(int max_arcs) {
  PatternBudgets b;
  b.max_arcs = max_arcs;
  b.max_vertices = std::max(2, max_arcs);
  return b;
}

PatternBudgets budgets_single_label(int max_arcs, ArcLabel keep) {
  PatternBudgets b = budgets_all(max_arcs);
  for (int l = 0; l < kLabelCount; ++l)
    if (l != static_cast<int>(keep)) b.max_label_total[l] = 0;
  return b;
}

std::vector<LabeledPattern> collect(const PatternBudgets& b) {
  std::vector<LabeledPattern> out;
  enumerate_balanced_patterns(b, [&](const LabeledPattern& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

// Independent canonical form: lexicographically minimal dense count matrix
// over all vertex permutations (usable for <= 5 vertices).
std::string naive_canonical(int k, const std::map<std::tuple<int, int, int>, int>& counts) {
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  std::string best;
  do {
    std::string s;
    s.push_back(static_cast<char>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        if (a == b) continue;
        for (int l = 0; l < kLabelCount; ++l) {
          auto it = counts.find({perm[a], perm[b], l});
          s.push_back(static_cast<char>(it == counts.end() ? 0 : it->second));
        }
      }
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Independent generate-and-canonicalize enumeration: all arc multisets over k
// vertices for k = 1..max_arcs, filtered to balanced + valid + no isolated
// vertex, deduplicated by the permutation-minimal form.
std::set<std::string> naive_enumerate(int max_arcs, const std::array<int, 4>& label_cap) {
  std::set<std::string> classes;
  for (int k = 1; k <= max_arcs; ++k) {
    struct Option {
      int t, h, l;
    };
    std::vector<Option> options;
    for (int t = 0; t < k; ++t)
      for (int h = 0; h < k; ++h)
        if (t != h)
          for (int l = 0; l < 4; ++l) options.push_back({t, h, l});
    std::vector<int> pick;
    auto consider = [&]() {
      std::map<std::tuple<int, int, int>, int> counts;
      std::vector<int> bal(k, 0), touched(k, 0);
      std::array<int, 4> totals{};
      for (int idx : pick) {
        const Option& o = options[idx];
        counts[{o.t, o.h, o.l}] += 1;
        bal[o.t] += 1;
        bal[o.h] -= 1;
        touched[o.t] = touched[o.h] = 1;
        totals[o.l] += 1;
      }
      for (int l = 0; l < 4; ++l)
        if (totals[l] > label_cap[l]) return;
      for (int v = 0; v < k; ++v)
        if (bal[v] != 0 || !touched[v]) return;
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          auto get = [&](int t, int h, int l) {
            auto it = counts.find({t, h, l});
            return it == counts.end() ? 0 : it->second;
          };
          if (get(a, b, 2) % 2 || get(b, a, 2) % 2) return;
          if (get(a, b, 3) + get(b, a, 3) > 1) return;
        }
      classes.insert(naive_canonical(k, counts));
    };
    auto rec = [&](auto&& self, int from, int left) -> void {
      if (static_cast<int>(pick.size()) >= k) consider();
      if (left == 0) return;
      for (int i = from; i < static_cast<int>(options.size()); ++i) {
        pick.push_back(i);
        self(self, i, left - 1);
        pick.pop_back();
      }
    };
    rec(rec, 0, max_arcs);
  }
  return classes;
}

LabeledPattern cycle2(ArcLabel a01, ArcLabel a10) {
  LabeledPattern p;
  p.add_arc(0, 1, a01);
  p.add_arc(1, 0, a10);
  return p;
}

}  // namespace

TEST_CASE("two-arc positive-only enumeration yields exactly the 2-cycle") {
  auto pats = collect(budgets_single_label(2, ArcLabel::Positive));
  REQUIRE(pats.size() == 1);
  CHECK(pats[0].num_vertices == 2);
  CHECK(pats[0].arc_count() == 2);
  CHECK(pats[0].count(0, 1, ArcLabel::Positive) == 1);
  CHECK(pats[0].count(1, 0, ArcLabel::Positive) == 1);
}

TEST_CASE("three-arc single-label enumeration: 2-cycle and 3-cycle") {
  auto pats = collect(budgets_single_label(3, ArcLabel::Positive));
  REQUIRE(pats.size() == 2);
  CHECK(pats[0].arc_count() == 2);
  CHECK(pats[1].arc_count() == 3);
  CHECK(pats[1].num_vertices == 3);
}

TEST_CASE("zero-arc enumeration is empty") {
  CHECK(collect(budgets_all(0)).empty());
  CHECK(enumerate_balanced_patterns(0).empty());
}

TEST_CASE("enumeration matches naive generate-and-canonicalize up to 4 arcs") {
  for (int max_arcs = 2; max_arcs <= 4; ++max_arcs) {
    CAPTURE(max_arcs);
    auto stream = collect(budgets_all(max_arcs));
    std::set<std::string> keys;
    for (const auto& p : stream) {
      CHECK(p.is_balanced());
      CHECK(p.is_valid());
      keys.insert(pattern_key(p));
    }
    CHECK(keys.size() == stream.size());  // no duplicates up to isomorphism
    auto naive = naive_enumerate(max_arcs, {99, 99, 99, 99});
    CHECK(stream.size() == naive.size());
  }
  auto stream_np = collect(budgets_single_label(4, ArcLabel::Negative));
  auto naive_np = naive_enumerate(4, {99, 0, 0, 0});
  CHECK(stream_np.size() == naive_np.size());
}

TEST_CASE("enumeration includes disconnected patterns") {
  // two disjoint positive 2-cycles: 4 arcs, 4 vertices
  auto pats = collect(budgets_single_label(4, ArcLabel::Positive));
  bool found = false;
  for (const auto& p : pats)
    if (p.arc_count() == 4 && p.num_vertices == 4 && !p.is_connected()) found = true;
  CHECK(found);
}

TEST_CASE("embed the (Negative, Positive) 2-cycle") {
  PbsInstance p(2);
  p.add_arc(0, 1, -1);
  p.add_arc(1, 0, 1);
  auto sel = embed_labeled_pattern(cycle2(ArcLabel::Negative, ArcLabel::Positive), p);
  REQUIRE(sel.has_value());
  CHECK(sel->ids == std::vector<ArcId>{0, 1});
  CHECK(check_properly_balanced(p, *sel));
}

TEST_CASE("embedding an invalid all-Forbidden 2-cycle returns none") {
  PbsInstance p(2);
  ArcId a = p.add_arc(0, 1, -1);
  ArcId b = p.add_arc(1, 0, -1);
  p.add_forbidden_pair(a, b);
  LabeledPattern pat = cycle2(ArcLabel::Forbidden, ArcLabel::Forbidden);
  CHECK(!pat.is_valid());
  CHECK(!embed_labeled_pattern(pat, p).has_value());
}

TEST_CASE("a 3-cycle cannot embed into a 2-vertex instance") {
  PbsInstance p(2);
  p.add_arc(0, 1, -1);
  p.add_arc(1, 0, 1);
  LabeledPattern tri;
  tri.add_arc(0, 1, ArcLabel::Positive);
  tri.add_arc(1, 2, ArcLabel::Positive);
  tri.add_arc(2, 0, ArcLabel::Positive);
  CHECK(!embed_labeled_pattern(tri, p).has_value());
}

TEST_CASE("embedding maps Double pattern pairs onto declared double pairs") {
  PbsInstance p(2);
  ArcId a = p.add_arc(0, 1, 0);
  ArcId b = p.add_arc(0, 1, 0);
  p.add_double_pair(a, b);
  p.add_arc(1, 0, 1);
  p.add_arc(1, 0, 1);
  LabeledPattern pat;
  pat.add_arc(0, 1, ArcLabel::Double, 2);
  pat.add_arc(1, 0, ArcLabel::Positive, 2);
  auto sel = embed_labeled_pattern(pat, p);
  REQUIRE(sel.has_value());
  CHECK(sel->contains(a));
  CHECK(sel->contains(b));
  CHECK(check_properly_balanced(p, *sel));

  // two parallel undeclared arcs must not satisfy a Double pattern pair
  PbsInstance q(2);
  q.add_arc(0, 1, 1);
  q.add_arc(0, 1, 1);
  q.add_arc(1, 0, 1);
  q.add_arc(1, 0, 1);
  CHECK(!embed_labeled_pattern(pat, q).has_value());
}

TEST_CASE("restricted-weight precondition") {
  PbsInstance p(2);
  p.add_arc(0, 1, 2);
  p.add_arc(1, 0, 1);
  CHECK_THROWS_AS(fpt_negative_pbs(p), InstanceError);
}

TEST_CASE("fpt on tiny 2-cycles") {
  PbsInstance none_inst(2);
  none_inst.add_arc(0, 1, -1);
  none_inst.add_arc(1, 0, 1);
  FptResult r1 = fpt_negative_pbs(none_inst);
  CHECK(!r1.selection.has_value());
  CHECK(r1.complete);

  PbsInstance yes_inst(2);
  yes_inst.add_arc(0, 1, -1);
  yes_inst.add_arc(1, 0, -1);
  FptResult r2 = fpt_negative_pbs(yes_inst);
  REQUIRE(r2.selection.has_value());
  CHECK(check_properly_balanced(yes_inst, *r2.selection));
  CHECK(selection_weight(yes_inst, *r2.selection) == -2);
}

TEST_CASE("fpt agrees with brute force on random restricted instances") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    PbsInstance p = gen_random_pbs_restricted(
        3 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 3),
        1 + static_cast<int>((seed / 2) % 3), static_cast<int>(seed % 2),
        static_cast<int>((seed / 3) % 2), seed * 977);
    CAPTURE(seed);
    auto brute = brute_force_negative_pbs(p);
    FptResult fpt = fpt_negative_pbs(p);
    CHECK(fpt.complete);
    CHECK(brute.has_value() == fpt.selection.has_value());
    if (fpt.selection) {
      CHECK(check_properly_balanced(p, *fpt.selection));
      CHECK(selection_weight(p, *fpt.selection) < 0);
    }
  }
}

TEST_CASE("serial and parallel fpt paths agree") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    PbsInstance p = gen_random_pbs_restricted(4, 2, 2, 1, 1, seed * 31);
    FptOptions serial;
    serial.jobs = 1;
    FptOptions parallel;
    parallel.jobs = 4;
    FptResult a = fpt_negative_pbs(p, serial);
    FptResult b = fpt_negative_pbs(p, parallel);
    CHECK(a.selection.has_value() == b.selection.has_value());
    if (a.selection && b.selection) {
      CHECK(selection_weight(p, *a.selection) == selection_weight(p, *b.selection));
      CHECK(a.selection->ids == b.selection->ids);  // canonical-order determinism
    }
  }
}

TEST_CASE("arc cap reports incompleteness") {
  PbsInstance p(3);
  p.add_arc(0, 1, -1);
  p.add_arc(1, 2, -1);
  p.add_arc(2, 0, -1);
  FptOptions opt;
  opt.arc_cap = 2;
  FptResult r = fpt_negative_pbs(p, opt);
  CHECK(!r.selection.has_value());
  CHECK(!r.complete);
  opt.arc_cap = 3;
  FptResult r2 = fpt_negative_pbs(p, opt);
  CHECK(r2.selection.has_value());
}
