#include <doctest.h>

#include <algorithm>
#include <bit>

#include "oracles.hpp"
#include "sqdeg/rectrank.hpp"

using namespace sqdeg;

namespace {

// sorts {0..s1-1} and {s1..s1+s2-1} with a color matrix
TwoSortedModel make_two_sorted(int s1, int s2, const std::vector<std::vector<int>>& colors) {
  TwoSortedModel m;
  m.base = empty_vocabulary_model(s1 + s2);
  for (int i = 0; i < s1; ++i) m.sort1.push_back(i);
  for (int j = 0; j < s2; ++j) m.sort2.push_back(s1 + j);
  m.colors = colors;
  return m;
}

TwoSortedModel constant_model(int s1, int s2, int color = 0) {
  return make_two_sorted(
      s1, s2,
      std::vector<std::vector<int>>(static_cast<std::size_t>(s1),
                                    std::vector<int>(static_cast<std::size_t>(s2), color)));
}

}  // namespace

TEST_CASE("one-by-one sorts have no room to move") {
  TwoSortedModel m = constant_model(1, 1);
  CHECK(rkrc_of_pair(m, {{0}, {1}}, rank_variant::l0, 2) == -1);
}

TEST_CASE("small pairs outrank large pairs under a constant coloring") {
  TwoSortedModel m = constant_model(3, 3);
  int small = rkrc_of_pair(m, {{0}, {3}}, rank_variant::l0, 2);
  int large = rkrc_of_pair(m, {{0, 1}, {3, 4}}, rank_variant::l0, 2);
  CHECK(small > large);
}

TEST_CASE("non-constant pairs fall outside the domain") {
  TwoSortedModel m = make_two_sorted(2, 2, {{0, 1}, {1, 0}});
  CHECK(rkrc_of_pair(m, {{0, 1}, {2, 3}}, rank_variant::l0, 2) == rkrc_bottom);
  CHECK(rkrc_of_pair(m, {{0}, {2}}, rank_variant::l0, 2) != rkrc_bottom);
}

TEST_CASE("model value at a color") {
  TwoSortedModel m = constant_model(2, 2);
  SUBCASE("unattained color has the empty supremum") {
    TwoSortedModel mixed = make_two_sorted(2, 2, {{0, 0}, {0, 2}});
    CHECK(rkrc_model_at(mixed, 1, rank_variant::l0, 2) == 0);
    CHECK_THROWS_AS(rkrc_model_at(mixed, 9, rank_variant::l0, 2), input_error);
  }
  SUBCASE("constant model attains max pair value plus one") {
    RectRankTable t = rkrc_table(m, rank_variant::l0, 2);
    int best = -2;
    for (std::uint32_t a = 1; a < 4; ++a)
      for (std::uint32_t b = 1; b < 4; ++b) best = std::max(best, t.at(a, b));
    CHECK(rkrc_model_at(m, 0, rank_variant::l0, 2) == best + 1);
  }
}

TEST_CASE("prrd checks") {
  CHECK(prrd_check(constant_model(2, 3), 0, rank_variant::l0, 2));

  TwoSortedModel tiny = constant_model(1, 1);
  bool pair_nonneg = rkrc_of_pair(tiny, {{0}, {1}}, rank_variant::l0, 2) >= 0;
  CHECK(prrd_check(tiny, 1, rank_variant::l0, 2) == pair_nonneg);

  // all-constants base: every element definable, every pair capped at -1
  TwoSortedModel cm = constant_model(2, 2);
  cm.base = all_constants_model(4);
  CHECK_FALSE(prrd_check(cm, 1, rank_variant::l0, 2));
}

TEST_CASE("aux predicate sharpens the closure") {
  // a designated singleton pins its element the way a constant would
  TwoSortedModel m = constant_model(2, 2);
  TwoSortedModel with_aux = m;
  with_aux.aux_pred = {0};
  RectRankTable plain = rkrc_table(m, rank_variant::l0, 2);
  RectRankTable aux = rkrc_table(with_aux, rank_variant::l0, 2);
  for (std::uint32_t a = 1; a < 4; ++a)
    for (std::uint32_t b = 1; b < 4; ++b)
      if (plain.at(a, b) != rkrc_bottom) CHECK(aux.at(a, b) <= plain.at(a, b));
  CHECK(aux.at(1, 1) == -1);  // {0} x {2}: 0 is definable
}

TEST_CASE("anti-monotonicity in both coordinates") {
  rng64 rng(42);
  for (int trial = 0; trial < 9; ++trial) {
    int s1 = trial == 8 ? 4 : 2 + static_cast<int>(rng.below(2));
    int s2 = trial == 8 ? 4 : 2 + static_cast<int>(rng.below(2));
    std::vector<std::vector<int>> colors(static_cast<std::size_t>(s1),
                                         std::vector<int>(static_cast<std::size_t>(s2)));
    for (auto& row : colors)
      for (int& c : row) c = static_cast<int>(rng.below(2));
    TwoSortedModel m = make_two_sorted(s1, s2, colors);
    RectRankTable t = rkrc_table(m, rank_variant::l0, 2);
    for (std::uint32_t a1 = 1; a1 < (1u << s1); ++a1)
      for (std::uint32_t a2 = 1; a2 < (1u << s2); ++a2)
        for (std::uint32_t b1 = 1; b1 < (1u << s1); ++b1)
          for (std::uint32_t b2 = 1; b2 < (1u << s2); ++b2) {
            if ((a1 & b1) != a1 || (a2 & b2) != a2) continue;
            if (t.at(a1, a2) == rkrc_bottom || t.at(b1, b2) == rkrc_bottom) continue;
            CHECK(t.at(a1, a2) >= t.at(b1, b2));
          }
  }
}

TEST_CASE("variant l0 bounded by l1 and the size bound holds") {
  rng64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    int s1 = 2, s2 = 2 + static_cast<int>(rng.below(2));
    std::vector<std::vector<int>> colors(static_cast<std::size_t>(s1),
                                         std::vector<int>(static_cast<std::size_t>(s2)));
    for (auto& row : colors)
      for (int& c : row) c = static_cast<int>(rng.below(2));
    TwoSortedModel m = make_two_sorted(s1, s2, colors);
    RectRankTable t0 = rkrc_table(m, rank_variant::l0, 2);
    RectRankTable t1 = rkrc_table(m, rank_variant::l1, 2);
    for (std::uint32_t a = 1; a < (1u << s1); ++a)
      for (std::uint32_t b = 1; b < (1u << s2); ++b) {
        if (t0.at(a, b) == rkrc_bottom) continue;
        CHECK(t0.at(a, b) <= t1.at(a, b));
        CHECK(t0.at(a, b) <= s1 + s2 - std::popcount(a) - std::popcount(b) + 1);
      }
  }
}

TEST_CASE("table agrees with the reference recursion") {
  rng64 rng(44);
  for (int trial = 0; trial < 6; ++trial) {
    int s1 = 1 + static_cast<int>(rng.below(3));
    int s2 = 1 + static_cast<int>(rng.below(3));
    std::vector<std::vector<int>> colors(static_cast<std::size_t>(s1),
                                         std::vector<int>(static_cast<std::size_t>(s2)));
    for (auto& row : colors)
      for (int& c : row) c = static_cast<int>(rng.below(2));
    TwoSortedModel m = make_two_sorted(s1, s2, colors);
    if (trial % 2) {
      Relation extra{"e", 1, {}};
      for (int x = 0; x < m.base.universe; ++x)
        if (rng.chance(0.5)) extra.tuples.insert({x});
      m.base.relations.push_back(extra);
    }
    for (rank_variant v : {rank_variant::l0, rank_variant::l1}) {
      RectRankTable t = rkrc_table(m, v, 2);
      for (std::uint32_t a = 1; a < (1u << s1); ++a)
        for (std::uint32_t b = 1; b < (1u << s2); ++b) {
          std::vector<int> w1, w2;
          for (int i = 0; i < s1; ++i)
            if (a & (1u << i)) w1.push_back(m.sort1[static_cast<std::size_t>(i)]);
          for (int j = 0; j < s2; ++j)
            if (b & (1u << j)) w2.push_back(m.sort2[static_cast<std::size_t>(j)]);
          CHECK(t.at(a, b) == oracle::rkrc_value(m, w1, w2, v, 2));
        }
    }
  }
}

TEST_CASE("two-sorted validation") {
  TwoSortedModel m = constant_model(2, 2);
  m.sort2 = {1, 2};  // overlaps sort1
  CHECK_THROWS_AS(validate_two_sorted(m), input_error);
  TwoSortedModel ragged = constant_model(2, 2);
  ragged.colors.pop_back();
  CHECK_THROWS_AS(validate_two_sorted(ragged), input_error);
  CHECK_THROWS_AS(rkrc_of_pair(constant_model(2, 2), {{}, {2}}, rank_variant::l0, 2),
                  input_error);
  CHECK_THROWS_AS(rkrc_of_pair(constant_model(2, 2), {{2}, {0}}, rank_variant::l0, 2),
                  input_error);
}
