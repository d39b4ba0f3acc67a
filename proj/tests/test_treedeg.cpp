#include <doctest.h>

#include "oracles.hpp"
#include "sqdeg/builder.hpp"
#include "sqdeg/treedeg.hpp"

using namespace sqdeg;

TEST_CASE("diagonal families cannot split") {
  TreeFamily diag = canned_diagonal(3);
  CHECK(degsq_pair(diag, root_entry(0)) == DegValue::of(-1));
  CHECK(degsq_family(diag) == DegValue::of(0));
}

TEST_CASE("full families split all the way down") {
  for (int depth = 1; depth <= 4; ++depth) {
    TreeFamily full = canned_full(depth);
    CHECK(degsq_pair(full, root_entry(0)) == DegValue::of(depth - 1));
    CHECK(degsq_family(full) == DegValue::of(depth));
  }
  CHECK(degsq_family(canned_full(3, 2)) == DegValue::of(3));
}

TEST_CASE("entries outside their trees are bottom") {
  TreeFamily diag = canned_diagonal(2);
  PfapEntry offtree;
  offtree.u = {"00", "01"};
  offtree.g = {{0, 0}, {0, 0}};
  CHECK(degsq_pair(diag, offtree).is_bottom);
  CHECK(degsq_pair(diag, root_entry(7)).is_bottom);  // no such tree
}

TEST_CASE("families with no root pair have the empty supremum") {
  TreeFamily f;
  f.depth = 2;
  f.trees.resize(3);
  CHECK(degsq_family(f) == DegValue::of(0));
}

TEST_CASE("engine agrees with the reference recursion on every depth-1 tree") {
  // exhaustive over the single-tree depth-1 families
  for (std::uint32_t pairs = 0; pairs < 16; ++pairs) {
    TreeFamily f;
    f.depth = 1;
    f.trees.resize(1);
    f.trees[0].insert({"", ""});
    const char* bits = "01";
    int idx = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b, ++idx)
        if (pairs & (1u << idx))
          f.trees[0].insert({std::string(1, bits[a]), std::string(1, bits[b])});
    PfapEntry e = root_entry(0);
    DegValue got = degsq_pair(f, e);
    int want = oracle::degsq_entry_value(f, e);
    CHECK(got == (want == -2 ? DegValue::bottom() : DegValue::of(want)));
  }
}

TEST_CASE("engine agrees with the reference recursion") {
  rng64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    TreeFamily f = oracle::random_family(rng, 3, 2, 0.65);
    for (int t = 0; t < static_cast<int>(f.trees.size()); ++t) {
      PfapEntry e = root_entry(t);
      DegValue got = degsq_pair(f, e);
      int want = oracle::degsq_entry_value(f, e);
      CHECK(got == (want == -2 ? DegValue::bottom() : DegValue::of(want)));
    }
    // a couple of deeper entries per family
    for (const std::string& node : {std::string("0"), std::string("1")}) {
      PfapEntry e;
      e.u = {node};
      e.g = {{0}};
      DegValue got = degsq_pair(f, e);
      int want = oracle::degsq_entry_value(f, e);
      CHECK(got == (want == -2 ? DegValue::bottom() : DegValue::of(want)));
    }
    PfapEntry pair;
    pair.u = {"0", "1"};
    pair.g = {{0, 0}, {0, 0}};
    DegValue got = degsq_pair(f, pair);
    int want = oracle::degsq_entry_value(f, pair);
    CHECK(got == (want == -2 ? DegValue::bottom() : DegValue::of(want)));
  }
}

TEST_CASE("truncation can only lower degrees") {
  rng64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    TreeFamily f = oracle::random_family(rng, 4, 3);
    DegValue prev = DegValue::of(0);
    for (int k = 0; k <= 4; ++k) {
      DegValue v = degsq_family(restrict_family(f, k));
      if (k > 0) CHECK(v >= prev);
      prev = v;
    }
    CHECK(degsq_family(restrict_family(f, 2)) <= degsq_family(f));
  }
}

TEST_CASE("child-swap automorphisms preserve degrees") {
  rng64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    TreeFamily f = oracle::random_family(rng, 4, 2);
    TreeAutomorphism a = random_automorphism(4, rng);
    TreeFamily g = apply(a, f);
    CHECK(degsq_pair(f, root_entry(0)) == degsq_pair(g, root_entry(0)));
    CHECK(degsq_family(f) == degsq_family(g));
  }
}

TEST_CASE("the family supremum dominates every sampled entry") {
  rng64 rng(24);
  for (int trial = 0; trial < 12; ++trial) {
    TreeFamily f = oracle::random_family(rng, 3, 2);
    DegValue fam = degsq_family(f);
    DegValue root = degsq_pair(f, root_entry(0));
    if (!root.is_bottom) CHECK(fam >= DegValue::of(root.fin + 1));
    for (const std::string& node : all_strings(2, 1)) {
      PfapEntry e;
      e.u = {node};
      e.g = {{static_cast<int>(rng.below(f.trees.size()))}};
      DegValue v = degsq_pair(f, e);
      if (!v.is_bottom) CHECK(fam >= DegValue::of(v.fin + 1));
    }
  }
}

TEST_CASE("souslin degrees") {
  SUBCASE("diagonal-labeled tree cannot split") {
    SouslinFamily f;
    f.depth = 3;
    f.kappa = 2;
    for (int l = 0; l <= 3; ++l)
      for (const std::string& s : all_strings(2, l))
        f.tree.insert({s, s, std::string(s.size(), '0')});
    CHECK(degsq_souslin_family(f) == DegValue::of(-1));
  }
  SUBCASE("full tree with a single label behaves like the full family") {
    SouslinFamily f;
    f.depth = 3;
    f.kappa = 1;
    for (int l = 0; l <= 3; ++l)
      for (const std::string& a : all_strings(2, l))
        for (const std::string& b : all_strings(2, l))
          f.tree.insert({a, b, std::string(a.size(), '0')});
    CHECK(degsq_souslin_family(f) == DegValue::of(2));
  }
  SUBCASE("entries outside the tree are bottom") {
    SouslinFamily f;
    f.depth = 2;
    f.kappa = 2;
    f.tree.insert({"", "", ""});
    SouslinEntry e = souslin_root_entry();
    CHECK_FALSE(degsq_souslin(f, e).is_bottom);
    SouslinFamily empty;
    empty.depth = 2;
    empty.kappa = 2;
    CHECK(degsq_souslin(empty, e).is_bottom);
  }
  SUBCASE("two-letter label alphabet enumerates label extensions") {
    SouslinFamily f;
    f.depth = 2;
    f.kappa = 2;
    for (int l = 0; l <= 2; ++l)
      for (const std::string& a : all_strings(2, l))
        for (const std::string& b : all_strings(2, l)) {
          f.tree.insert({a, b, std::string(a.size(), '0')});
          f.tree.insert({a, b, std::string(a.size(), '1')});
        }
    CHECK(degsq_souslin_family(f) == DegValue::of(1));
  }
}

TEST_CASE("rectangle degrees") {
  RectTree full;
  full.depth = 3;
  full.branching = 2;
  for (int l = 0; l <= 3; ++l)
    for (const std::string& a : all_strings(2, l))
      for (const std::string& b : all_strings(2, l)) full.pairs.insert({a, b});

  SUBCASE("full tree at the roots") { CHECK(degrc(full, {""}, {""}) == DegValue::of(2)); }

  SUBCASE("spine tree blocks the first split") {
    RectTree spine;
    spine.depth = 3;
    spine.branching = 2;
    for (int l = 0; l <= 3; ++l)
      spine.pairs.insert({std::string(l, '0'), std::string(l, '0')});
    CHECK(degrc(spine, {""}, {""}) == DegValue::of(-1));
  }

  SUBCASE("missing cross pairs are bottom") {
    RectTree t;
    t.depth = 2;
    t.branching = 2;
    t.pairs.insert({"", ""});
    t.pairs.insert({"0", "0"});
    CHECK(degrc(t, {"0"}, {"1"}).is_bottom);
  }

  SUBCASE("transposition swaps the sides") {
    rng64 rng(25);
    for (int trial = 0; trial < 10; ++trial) {
      RectTree t = oracle::random_rect_tree(rng, 3);
      RectTree tt = transpose(t);
      CHECK(degrc(t, {""}, {""}) == degrc(tt, {""}, {""}));
      DegValue a = degrc(t, {"0"}, {"1"});
      DegValue b = degrc(tt, {"1"}, {"0"});
      CHECK(a == b);
    }
  }

  SUBCASE("matches the reference recursion") {
    rng64 rng(26);
    for (int trial = 0; trial < 12; ++trial) {
      RectTree t = oracle::random_rect_tree(rng, 3);
      DegValue got = degrc(t, {""}, {""});
      int want = oracle::degrc_value(t, {""}, {""});
      CHECK(got == (want == -2 ? DegValue::bottom() : DegValue::of(want)));
      got = degrc(t, {"0"}, {"0", "1"});
      want = oracle::degrc_value(t, {"0"}, {"0", "1"});
      CHECK(got == (want == -2 ? DegValue::bottom() : DegValue::of(want)));
    }
  }

  SUBCASE("the permissive reading can only help") {
    rng64 rng(27);
    for (int trial = 0; trial < 10; ++trial) {
      RectTree t = oracle::random_rect_tree(rng, 3);
      DegValue strict = degrc(t, {"0", "1"}, {"0"});
      DegValue loose = degrc(t, {"0", "1"}, {"0"}, DegrcOptions{true});
      if (!strict.is_bottom) CHECK(loose >= strict);
    }
  }
}

TEST_CASE("growth classifier") {
  GrowthReport full = classify_growth(canned_full(4), 4);
  CHECK(full.flagged);
  for (int k = 0; k <= 4; ++k) CHECK(full.by_depth[static_cast<std::size_t>(k)] == DegValue::of(k));

  GrowthReport diag = classify_growth(canned_diagonal(4), 4);
  CHECK_FALSE(diag.flagged);
  for (const DegValue& v : diag.by_depth) CHECK(v == DegValue::of(0));

  BuildResult b = build_family(2, 1000);
  GrowthReport g = classify_growth(b.family, b.produced_depth);
  CHECK_FALSE(g.flagged);
  CHECK(g.by_depth.back() == DegValue::of(2));
}

TEST_CASE("entry validation") {
  TreeFamily f = canned_full(2);
  PfapEntry unsorted;
  unsorted.u = {"1", "0"};
  unsorted.g = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(degsq_pair(f, unsorted), input_error);
  PfapEntry ragged;
  ragged.u = {"0", "1"};
  ragged.g = {{0}, {0, 0}};
  CHECK_THROWS_AS(degsq_pair(f, ragged), input_error);
  PfapEntry deep;
  deep.u = {"000"};
  deep.g = {{0}};
  CHECK_THROWS_AS(degsq_pair(f, deep), input_error);
}
