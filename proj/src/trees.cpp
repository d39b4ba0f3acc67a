#include "sqdeg/trees.hpp"

#include <algorithm>

namespace sqdeg {

bool is_digit_string(const std::string& s, int alphabet) {
  for (char c : s)
    if (c < '0' || c >= static_cast<char>('0' + alphabet)) return false;
  return true;
}

bool is_prefix(const std::string& p, const std::string& s) {
  return p.size() <= s.size() && std::equal(p.begin(), p.end(), s.begin());
}

std::vector<std::string> all_strings(int alphabet, int length) {
  std::vector<std::string> out{""};
  for (int l = 0; l < length; ++l) {
    std::vector<std::string> next;
    next.reserve(out.size() * static_cast<std::size_t>(alphabet));
    for (const std::string& s : out)
      for (int d = 0; d < alphabet; ++d) next.push_back(s + static_cast<char>('0' + d));
    out = std::move(next);
  }
  return out;
}

void validate_family(const TreeFamily& f) {
  if (f.depth < 0) throw input_error("family depth must be >= 0");
  for (std::size_t t = 0; t < f.trees.size(); ++t) {
    for (const auto& [a, b] : f.trees[t]) {
      if (a.size() != b.size())
        throw input_error("tree " + std::to_string(t) + " holds a pair of unequal lengths");
      if (static_cast<int>(a.size()) > f.depth)
        throw input_error("tree " + std::to_string(t) + " holds a pair beyond the depth");
      if (!is_digit_string(a, 2) || !is_digit_string(b, 2))
        throw input_error("tree " + std::to_string(t) + " holds a non-binary string");
      if (!a.empty() &&
          !f.trees[t].count({a.substr(0, a.size() - 1), b.substr(0, b.size() - 1)}))
        throw input_error("tree " + std::to_string(t) +
                          " is not closed under initial segments at (" + a + "," + b + ")");
    }
  }
}

TreeFamily restrict_family(const TreeFamily& f, int depth) {
  if (depth < 0) throw input_error("depth must be >= 0");
  TreeFamily out;
  out.depth = std::min(depth, f.depth);
  out.trees.resize(f.trees.size());
  for (std::size_t t = 0; t < f.trees.size(); ++t)
    for (const auto& p : f.trees[t])
      if (static_cast<int>(p.first.size()) <= out.depth)
        out.trees[t].insert(p);
  return out;
}

void validate_souslin(const SouslinFamily& f) {
  if (f.depth < 0) throw input_error("souslin depth must be >= 0");
  if (f.kappa < 1 || f.kappa > 10) throw input_error("kappa must be in [1,10]");
  for (const auto& tr : f.tree) {
    if (tr[0].size() != tr[1].size() || tr[0].size() != tr[2].size())
      throw input_error("souslin triple with unequal lengths");
    if (static_cast<int>(tr[0].size()) > f.depth)
      throw input_error("souslin triple beyond the depth");
    if (!is_digit_string(tr[0], 2) || !is_digit_string(tr[1], 2) ||
        !is_digit_string(tr[2], f.kappa))
      throw input_error("souslin triple with out-of-alphabet digits");
    if (!tr[0].empty()) {
      std::array<std::string, 3> parent{tr[0].substr(0, tr[0].size() - 1),
                                        tr[1].substr(0, tr[1].size() - 1),
                                        tr[2].substr(0, tr[2].size() - 1)};
      if (!f.tree.count(parent))
        throw input_error("souslin tree not closed under initial segments");
    }
  }
}

void validate_rect_tree(const RectTree& t) {
  if (t.depth < 0) throw input_error("tree depth must be >= 0");
  if (t.branching < 1 || t.branching > 10) throw input_error("branching must be in [1,10]");
  for (const auto& [a, b] : t.pairs) {
    if (a.size() != b.size()) throw input_error("pair of unequal lengths");
    if (static_cast<int>(a.size()) > t.depth) throw input_error("pair beyond the depth");
    if (!is_digit_string(a, t.branching) || !is_digit_string(b, t.branching))
      throw input_error("pair with out-of-alphabet digits");
    if (!a.empty() &&
        !t.pairs.count({a.substr(0, a.size() - 1), b.substr(0, b.size() - 1)}))
      throw input_error("tree not closed under initial segments at (" + a + "," + b + ")");
  }
}

RectTree transpose(const RectTree& t) {
  RectTree out;
  out.depth = t.depth;
  out.branching = t.branching;
  for (const auto& [a, b] : t.pairs) out.pairs.insert({b, a});
  return out;
}

std::string TreeAutomorphism::apply(const std::string& s) const {
  std::string out;
  out.reserve(s.size());
  std::string prefix;
  for (char c : s) {
    bool flip = swaps.count(prefix) != 0;
    out.push_back(flip ? (c == '0' ? '1' : '0') : c);
    prefix.push_back(c);
  }
  return out;
}

TreeAutomorphism random_automorphism(int depth, rng64& rng, double swap_prob) {
  TreeAutomorphism a;
  for (int l = 0; l < depth; ++l)
    for (const std::string& node : all_strings(2, l))
      if (rng.chance(swap_prob)) a.swaps.insert(node);
  return a;
}

TreeFamily apply(const TreeAutomorphism& a, const TreeFamily& f) {
  TreeFamily out;
  out.depth = f.depth;
  out.trees.resize(f.trees.size());
  for (std::size_t t = 0; t < f.trees.size(); ++t)
    for (const auto& [x, y] : f.trees[t]) out.trees[t].insert({a.apply(x), a.apply(y)});
  return out;
}

}  // namespace sqdeg
