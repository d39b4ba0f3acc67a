#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqdeg/model.hpp"

namespace sqdeg {

// Rank variants. l0/l1 split one position into two copies (l0 keeps the
// original tuple as the first copy); l2/l3 demand witness_count pairwise
// splittable copies; partition is the experimental variant quantifying over
// partitions of the witness columns into fewer than `classes` cells: the rank
// descends along some same-cell pair for every such partition.
enum class rank_variant { l0, l1, l2, l3, partition };

rank_variant parse_variant(const std::string& s);
std::string variant_name(rank_variant v);

struct RankParams {
  rank_variant variant = rank_variant::l0;
  int closure = 2;    // k >= 2
  int witnesses = 2;  // t >= 2 (l2, l3, partition)
  int classes = 2;    // s >= 2 (partition only)
  int jobs = 1;
};

void validate_params(const RankParams& p);

struct RankTable {
  int universe = 0;
  std::vector<int> value;  // indexed by subset bitmask; value[0] unused
  int model_rank = 0;

  int value_of(std::uint32_t mask) const { return value[mask]; }
  int value_of(const std::vector<int>& w) const;
};

// Exact rank of every nonempty subset, bottom-up over subset size: every
// witness condition references sets with exactly one more element, so the
// table at size s+1 determines size s.
RankTable rank_table(const FiniteModel& m, const RankParams& p);

int rank_of_set(const FiniteModel& m, const std::vector<int>& w, const RankParams& p);
int model_rank(const FiniteModel& m, const RankParams& p);
bool pr_check(const FiniteModel& m, const RankParams& p, int alpha);

// Expansion that caps the split-happy variant: adds, for every arity n and
// rank value b, the relation of injective tuples whose set has rank b, and for
// every realized complete type and position k the subrelation of tuples with
// no rank-preserving split at k. Guarantees rk^l1(w, M+) <= rk^l0(w, M).
// Throws input_error when a needed arity exceeds the model's max_arity.
FiniteModel expand_witness_model(const FiniteModel& m, const RankParams& p);

}  // namespace sqdeg
