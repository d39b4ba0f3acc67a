#pragma once

#include <cstdint>
#include <vector>

#include "sqdeg/model.hpp"
#include "sqdeg/rank.hpp"

namespace sqdeg {

// Two-sorted structure: a base model plus disjoint sorts and a total color map
// on sort1 x sort2. Colors are kept outside the base vocabulary; the rank
// engine enforces color preservation directly.
struct TwoSortedModel {
  FiniteModel base;
  std::vector<int> sort1;  // ascending
  std::vector<int> sort2;  // ascending
  std::vector<std::vector<int>> colors;  // colors[i][j] for sort1[i], sort2[j]
  std::vector<int> aux_pred;             // optional designated subset

  int color_at(int a, int b) const;  // a in sort1, b in sort2 (model elements)
};

void validate_two_sorted(const TwoSortedModel& m);

// colors actually attained plus any declared through the matrix, ascending
std::vector<int> used_colors(const TwoSortedModel& m);

constexpr int rkrc_bottom = -2;  // pair is not in [M]^x (F not constant on it)

struct RectPair {
  std::vector<int> w1;  // nonempty subset of sort1
  std::vector<int> w2;  // nonempty subset of sort2
};

// Table of rkrc values for every pair of nonempty subsets, indexed by
// (mask over sort1 positions, mask over sort2 positions).
struct RectRankTable {
  int s1 = 0, s2 = 0;
  std::vector<int> value;  // (m1 << s2bits) | m2 -> value, -2 = bottom

  int at(std::uint32_t m1, std::uint32_t m2) const {
    return value[(m1 << s2) | m2];
  }
};

// variant: l0 or l1 only
RectRankTable rkrc_table(const TwoSortedModel& m, rank_variant variant, int closure);

int rkrc_of_pair(const TwoSortedModel& m, const RectPair& pair, rank_variant variant,
                 int closure);
int rkrc_model_at(const TwoSortedModel& m, int color, rank_variant variant, int closure);
bool prrd_check(const TwoSortedModel& m, int alpha, rank_variant variant, int closure);

// base model extended with sort unaries and one binary relation per used
// color; this is the structure the closure condition reads
FiniteModel closure_structure(const TwoSortedModel& m);

}  // namespace sqdeg
