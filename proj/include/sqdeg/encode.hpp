#pragma once

#include <string>
#include <vector>

#include "sqdeg/coloring.hpp"
#include "sqdeg/model.hpp"
#include "sqdeg/rectrank.hpp"
#include "sqdeg/trees.hpp"

namespace sqdeg {

// Point set certified against a tree family: every ordered pair of points
// (diagonal included) lies in its paired tree at every level.
struct SquareWitness {
  std::vector<std::string> points;          // distinct, full depth
  std::vector<std::vector<int>> pairing;    // tree index per ordered point pair
};

void validate_square_witness(const TreeFamily& f, const SquareWitness& w);

// Witness for a Souslin tree: full-depth label strings per ordered pair.
struct SouslinWitness {
  std::vector<std::string> points;
  std::vector<std::vector<std::string>> labels;
};

void validate_souslin_witness(const SouslinFamily& f, const SouslinWitness& w);

struct RectWitness {
  std::vector<std::string> left;
  std::vector<std::string> right;
};

// Model on the point indices with one relation per pfap entry realized by the
// witness: a tuple is in the relation when its points properly extend the
// entry's nodes and their pairing matches the entry's map. Entry levels stay
// strictly below the witness depth.
FiniteModel induced_model_from_square(const TreeFamily& f, const SquareWitness& w);

// Souslin variant: unary predicates for diagonal label prefixes, binary for
// cross label prefixes.
FiniteModel induced_model_souslin(const SouslinFamily& f, const SouslinWitness& w);

// Two-sorted model for a list of pair trees: sorts are the left/right indices,
// the color of (i,j) is the least tree containing the cross pair at every
// level, and prefix data below the leaf level enters as unary/binary
// relations.
TwoSortedModel induced_twosorted_from_rectangle(const std::vector<RectTree>& trees,
                                                const RectWitness& w);

FiniteModel coloring_to_model(const PairColoring& c);

}  // namespace sqdeg
