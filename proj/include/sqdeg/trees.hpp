#pragma once

#include <array>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sqdeg/util.hpp"

namespace sqdeg {

// Strings are over digit alphabets ('0'..'9'); bitstrings use "01". The empty
// string is the root. Levels are string lengths.
bool is_digit_string(const std::string& s, int alphabet);
bool is_prefix(const std::string& p, const std::string& s);
// strings of exactly the given length
std::vector<std::string> all_strings(int alphabet, int length);

// Depth-truncated sequence of (2,2)-trees: sets of equal-length bitstring
// pairs closed under simultaneous initial segments.
struct TreeFamily {
  int depth = 1;
  std::vector<std::set<std::pair<std::string, std::string>>> trees;

  bool pair_in(int t, const std::string& a, const std::string& b) const {
    return t >= 0 && t < static_cast<int>(trees.size()) &&
           trees[static_cast<std::size_t>(t)].count({a, b}) != 0;
  }
};

void validate_family(const TreeFamily& f);
TreeFamily restrict_family(const TreeFamily& f, int depth);

// Single depth-truncated (2,2,kappa)-tree: triples (eta, nu, label), labels
// over [0, kappa).
struct SouslinFamily {
  int depth = 1;
  int kappa = 1;
  std::set<std::array<std::string, 3>> tree;
};

void validate_souslin(const SouslinFamily& f);

// Depth-truncated pair tree over a finite branching alphabet; also serves as
// the closed-set input of the boost operation.
struct RectTree {
  int depth = 1;
  int branching = 2;
  std::set<std::pair<std::string, std::string>> pairs;

  bool pair_in(const std::string& a, const std::string& b) const {
    return pairs.count({a, b}) != 0;
  }
};

void validate_rect_tree(const RectTree& t);
RectTree transpose(const RectTree& t);

// Degree lattice: Bottom < Fin(-1) < Fin(0) < Fin(1) < ...
struct DegValue {
  bool is_bottom = true;
  int fin = -1;

  static DegValue bottom() { return DegValue{}; }
  static DegValue of(int v) { return DegValue{false, v}; }

  friend bool operator==(const DegValue&, const DegValue&) = default;
  friend auto operator<=>(const DegValue& a, const DegValue& b) {
    if (a.is_bottom != b.is_bottom)
      return a.is_bottom ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.fin <=> b.fin;
  }
  std::string str() const { return is_bottom ? "bottom" : std::to_string(fin); }
};

// Level-preserving automorphism of the full binary tree, generated by
// per-node child swaps.
struct TreeAutomorphism {
  std::set<std::string> swaps;  // nodes whose children are exchanged

  std::string apply(const std::string& s) const;
};

TreeAutomorphism random_automorphism(int depth, rng64& rng, double swap_prob = 0.5);
TreeFamily apply(const TreeAutomorphism& a, const TreeFamily& f);

}  // namespace sqdeg
