#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqdeg/model.hpp"
#include "sqdeg/rank.hpp"

namespace sqdeg {

// Symmetric coloring of the unordered pairs of [0, size); stored as the flat
// upper triangle (0,1),(0,2),...,(0,n-1),(1,2),...
struct PairColoring {
  int size = 0;
  std::vector<int> colors;

  int at(int a, int b) const;
};

void validate_coloring(const PairColoring& c);
PairColoring restrict_coloring(const PairColoring& c, const std::vector<int>& subset);

// A pattern of size p is the color matrix of p pairwise-distinct elements,
// canonicalized over position permutations (colors are literal and never
// renamed). Patterns of the diagonal are excluded.
struct EmbedResult {
  bool embeds = true;
  std::vector<int> per_size_counts;        // distinct canonical patterns checked
  std::vector<int> failing_tuple;          // a source tuple realizing the failure
  std::vector<int> failing_pattern;        // its upper-triangle colors
};

// true iff every pattern of at most max_pattern source elements is realized
// in the target by pairwise-distinct elements
EmbedResult embeds_patterns(const PairColoring& target, const PairColoring& source,
                            int max_pattern);

int rank_of_coloring(const PairColoring& c, const RankParams& p);

}  // namespace sqdeg
