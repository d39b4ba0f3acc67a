#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqdeg/encode.hpp"
#include "sqdeg/trees.hpp"

namespace sqdeg {

struct SquareSearchResult {
  SquareWitness witness;
  int size = 0;
  bool partial = false;  // stopped at the size cap
};

// Maximum point set A with A x A inside the family (every ordered pair in some
// tree at full depth), by lexicographic branch and bound; the returned optimum
// is the lexicographically least one. size_cap = 0 means unbounded.
SquareSearchResult find_max_square(const TreeFamily& f, int size_cap = 0);

struct RectangleSearchResult {
  RectWitness witness;
  std::vector<std::vector<int>> pairing;  // tree index per cross pair
  int left_size = 0;
  int right_size = 0;
  bool partial = false;
};

// Maximum rectangle A x B inside the union of the trees, maximizing
// min(|A|,|B|) then |A|+|B|; deterministic lexicographic optimum.
RectangleSearchResult find_max_rectangle(const std::vector<RectTree>& trees,
                                         int left_cap = 0, int right_cap = 0);

// Chain of refinements extracted from a witness: entry i holds 2^i nodes, each
// refinement doubles the split structure and must be certified by enough
// distinct witness points.
struct ChainEntry {
  int level = 0;
  std::vector<std::string> u;
  std::vector<std::vector<int>> h;  // tree indices over u x u
};

struct ApproxChain {
  std::vector<ChainEntry> entries;
};

enum class extract_mode { witness, rank };

struct ExtractResult {
  bool ok = false;
  ApproxChain chain;
  std::string blocking_node;  // first non-refinable node on failure
  int blocked_depth = 0;
};

// quota: every node of each refined entry needs at least `quota` distinct
// certifying points; rank mode additionally demands certificates whose index
// set keeps rank at least the number of refinements still owed.
ExtractResult extract_square_chain(const TreeFamily& f, const SquareWitness& w,
                                   int target_depth, int quota = 2,
                                   extract_mode mode = extract_mode::witness);

// Full binary square pattern of the given depth, with leaf addresses mapped to
// full-depth strings and the tree index realizing every ordered leaf pair.
struct SquarePattern {
  int depth = 0;
  std::vector<std::string> leaves;        // indexed by leaf address value
  std::vector<std::vector<int>> pairing;
  std::vector<int> split_levels;
};

struct BoostResult {
  bool ok = false;
  SquarePattern pattern;
  std::string blocking_node;
  int blocked_round = 0;
};

// Iterated refinement inside a single closed-set tree: each round splits every
// current node at the least workable level, demanding `threshold` companion
// points per child while further rounds remain.
BoostResult closed_set_boost(const RectTree& tree, const std::vector<std::string>& points,
                             int rounds, int threshold = 2);

struct FreeFunction {
  int arity = 1;
  std::vector<int> table;  // row-major over [0,N)^arity
};

struct FreeSetResult {
  bool ok = false;
  std::vector<int> set;
};

// Lexicographically least m-element set avoiding every function value on
// injective argument tuples drawn from the set.
FreeSetResult find_free_set(int universe, const std::vector<FreeFunction>& functions,
                            int target);

bool is_free_set(int universe, const std::vector<FreeFunction>& functions,
                 const std::vector<int>& candidate);

}  // namespace sqdeg
