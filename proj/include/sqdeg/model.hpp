#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sqdeg/util.hpp"

namespace sqdeg {

constexpr int default_max_arity = 4;

struct Relation {
  std::string name;
  int arity = 1;
  std::set<std::vector<int>> tuples;
};

// Finite relational structure on {0..universe-1}. Constants are singleton
// unary relations, functions are encoded by their graphs.
struct FiniteModel {
  int universe = 0;
  std::vector<Relation> relations;
  int max_arity = default_max_arity;

  bool holds(int rel_index, const std::vector<int>& tuple) const {
    return relations[static_cast<std::size_t>(rel_index)].tuples.count(tuple) != 0;
  }
};

// throws input_error on any violated invariant (ranges, duplicate names,
// arity bounds, tuple shapes)
void validate_model(const FiniteModel& m);

// all-constants fixture: N singleton unary relations c0..c{N-1}
FiniteModel all_constants_model(int n);
FiniteModel empty_vocabulary_model(int n);

// Complete quantifier-free type of a tuple: equality pattern plus one bit per
// (relation, position map). Equal types compare equal bitwise; a tuple and its
// permutation have types related by the same permutation of position maps.
struct AtomicType {
  int length = 0;
  std::vector<int> eq_class;            // eq_class[i] = min j with t[j] == t[i]
  std::vector<std::uint64_t> facts;     // packed, fixed enumeration order

  friend bool operator==(const AtomicType&, const AtomicType&) = default;
  friend auto operator<=>(const AtomicType&, const AtomicType&) = default;
};

AtomicType atomic_type(const FiniteModel& m, std::span<const int> tuple);

// number of x sharing a's complete type over the fixed (ascending) enumeration
// of B; in_closure(a,B,k) <=> orbit_size(a,B) < k
int orbit_size(const FiniteModel& m, int a, const std::vector<int>& B);
bool in_closure(const FiniteModel& m, int a, const std::vector<int>& B, int threshold_k);

// Typing helper with per-model caches. pair_profile packs, for every relation,
// the facts whose position map uses at most the two given slots; for a
// vocabulary of arity <= 2 these profiles determine the complete type.
class TypeOracle {
 public:
  explicit TypeOracle(const FiniteModel& m);

  const FiniteModel& model() const { return *model_; }
  AtomicType type(std::span<const int> tuple) const;
  bool binary_vocabulary() const { return binary_only_; }

  const std::vector<std::uint64_t>& pair_profile(int x, int y) const {
    return pair_profiles_[static_cast<std::size_t>(x * model_->universe + y)];
  }

 private:
  const FiniteModel* model_;
  bool binary_only_;
  std::vector<std::vector<std::uint64_t>> pair_profiles_;
};

}  // namespace sqdeg
