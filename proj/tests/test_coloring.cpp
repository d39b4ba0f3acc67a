#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sqdeg/coloring.hpp"
#include "sqdeg/encode.hpp"

using namespace sqdeg;

TEST_CASE("embedding basics") {
  PairColoring mixed{4, {0, 1, 0, 1, 0, 1}};
  for (int s = 1; s <= 4; ++s) CHECK(embeds_patterns(mixed, mixed, s).embeds);

  PairColoring c5{5, std::vector<int>(10, 0)};
  PairColoring c3{3, {0, 0, 0}};
  CHECK(embeds_patterns(c5, c3, 3).embeds);

  EmbedResult r = embeds_patterns(c3, c5, 4);
  CHECK_FALSE(r.embeds);
  CHECK(r.failing_tuple.size() == 4);
}

TEST_CASE("pattern counts respect canonicalization") {
  // two colors on 3 elements: the canonical size-2 patterns are exactly the
  // colors that appear
  PairColoring c{3, {0, 1, 0}};
  EmbedResult r = embeds_patterns(c, c, 2);
  REQUIRE(r.embeds);
  CHECK(r.per_size_counts[2] == 2);
}

TEST_CASE("restrictions") {
  PairColoring c{4, {0, 1, 2, 3, 4, 5}};
  PairColoring whole = restrict_coloring(c, {0, 1, 2, 3});
  CHECK(whole.colors == c.colors);
  PairColoring pair = restrict_coloring(c, {0, 2});
  CHECK(pair.size == 2);
  CHECK(pair.colors == std::vector<int>{1});
  CHECK_THROWS_AS(restrict_coloring(c, {0, 9}), input_error);
}

TEST_CASE("embedding laws on a sample") {
  rng64 rng(61);
  std::vector<PairColoring> pool;
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    PairColoring c;
    c.size = n;
    for (int i = 0; i < n * (n - 1) / 2; ++i)
      c.colors.push_back(static_cast<int>(rng.below(3)));
    pool.push_back(std::move(c));
  }
  for (const PairColoring& a : pool) {
    CHECK(embeds_patterns(a, a, a.size).embeds);
    for (const PairColoring& b : pool) {
      int s = std::min(a.size, b.size);
      bool ab = embeds_patterns(a, b, s).embeds;
      // monotone in the pattern bound
      if (ab)
        for (int s2 = 1; s2 < s; ++s2) CHECK(embeds_patterns(a, b, s2).embeds);
      // restriction monotonicity
      if (ab && b.size >= 2) {
        std::vector<int> sub;
        for (int x = 0; x < b.size; ++x)
          if (rng.chance(0.6)) sub.push_back(x);
        if (!sub.empty()) {
          PairColoring rb = restrict_coloring(b, sub);
          CHECK(embeds_patterns(a, rb, std::min(s, rb.size)).embeds);
        }
      }
      // transitivity over the pool
      for (const PairColoring& c : pool) {
        int s3 = std::min({a.size, b.size, c.size});
        if (embeds_patterns(a, b, s3).embeds && embeds_patterns(b, c, s3).embeds)
          CHECK(embeds_patterns(a, c, s3).embeds);
      }
    }
  }
}

TEST_CASE("coloring ranks ride the rank oracle") {
  RankParams p;
  CHECK(rank_of_coloring(PairColoring{1, {}}, p) == 0);

  PairColoring constant{4, {0, 0, 0, 0, 0, 0}};
  FiniteModel cm = coloring_to_model(constant);
  oracle::RankOracle oc(cm, p);
  CHECK(rank_of_coloring(constant, p) == oc.model_rank());

  PairColoring rainbow{3, {0, 1, 2}};
  FiniteModel rm = coloring_to_model(rainbow);
  oracle::RankOracle orb(rm, p);
  CHECK(rank_of_coloring(rainbow, p) == orb.model_rank());
}

TEST_CASE("coloring validation") {
  PairColoring short_list{3, {0, 0}};
  CHECK_THROWS_AS(validate_coloring(short_list), input_error);
  PairColoring negative{2, {-1}};
  CHECK_THROWS_AS(validate_coloring(negative), input_error);
  PairColoring c{3, {0, 0, 0}};
  CHECK_THROWS_AS(embeds_patterns(c, c, 9), input_error);
}
