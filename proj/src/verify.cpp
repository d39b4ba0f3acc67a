#include "sqdeg/verify.hpp"

#include <algorithm>

namespace sqdeg {

namespace {

bool raw_pair_in(const std::set<std::pair<std::string, std::string>>& tree,
                 const std::string& a, const std::string& b) {
  return tree.find({a, b}) != tree.end();
}

VerifyOutcome fail(std::string why) { return {false, std::move(why)}; }

}  // namespace

VerifyOutcome verify_chain(const TreeFamily& f, const ApproxChain& chain) {
  if (chain.entries.empty()) return fail("empty chain");
  const ChainEntry& first = chain.entries.front();
  if (first.u.size() != 1 || !first.u[0].empty())
    return fail("chain must start at the root approximation");

  for (std::size_t idx = 0; idx < chain.entries.size(); ++idx) {
    const ChainEntry& e = chain.entries[idx];
    const std::size_t k = e.u.size();
    if (e.u.size() != (std::size_t{1} << idx)) return fail("entry sizes must double");
    if (e.h.size() != k) return fail("index map must be square");
    for (const auto& row : e.h)
      if (row.size() != k) return fail("index map must be square");
    for (const auto& s : e.u) {
      if (static_cast<int>(s.size()) != e.level) return fail("node off its level");
      if (!is_digit_string(s, 2)) return fail("node is not a bitstring");
    }
    // membership of every pair, walked prefix by prefix
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        int t = e.h[a][b];
        if (t < 0 || t >= static_cast<int>(f.trees.size()))
          return fail("index map leaves the family");
        for (int l = 0; l <= e.level; ++l)
          if (!raw_pair_in(f.trees[static_cast<std::size_t>(t)],
                           e.u[a].substr(0, static_cast<std::size_t>(l)),
                           e.u[b].substr(0, static_cast<std::size_t>(l))))
            return fail("pair (" + e.u[a] + "," + e.u[b] + ") not in tree " +
                        std::to_string(t) + " at level " + std::to_string(l));
      }
    if (idx == 0) continue;

    const ChainEntry& prev = chain.entries[idx - 1];
    if (e.level <= prev.level) return fail("levels must strictly increase");
    // each previous node has exactly two extensions here
    for (const auto& pnode : prev.u) {
      int count = 0;
      for (const auto& s : e.u)
        if (is_prefix(pnode, s)) ++count;
      if (count != 2) return fail("node " + pnode + " does not split in two");
    }
    for (const auto& s : e.u) {
      bool rooted = false;
      for (const auto& pnode : prev.u)
        if (is_prefix(pnode, s)) rooted = true;
      if (!rooted) return fail("node " + s + " has no parent in the previous entry");
    }
    // inherited values agree except on the fresh sibling pairs
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        std::string pa, pb;
        for (const auto& pnode : prev.u) {
          if (is_prefix(pnode, e.u[a])) pa = pnode;
          if (is_prefix(pnode, e.u[b])) pb = pnode;
        }
        if (pa == pb && a != b) continue;  // sibling pair, free
        std::size_t ia = 0, ib = 0;
        for (std::size_t q = 0; q < prev.u.size(); ++q) {
          if (prev.u[q] == pa) ia = q;
          if (prev.u[q] == pb) ib = q;
        }
        if (e.h[a][b] != prev.h[ia][ib])
          return fail("pair (" + e.u[a] + "," + e.u[b] + ") forgets its inherited index");
      }
  }
  return {};
}

namespace {

VerifyOutcome check_pattern_shape(const SquarePattern& p) {
  if (p.depth < 0) return fail("negative depth");
  if (p.leaves.size() != (std::size_t{1} << p.depth)) return fail("leaf count mismatch");
  for (std::size_t i = 0; i < p.leaves.size(); ++i)
    for (std::size_t j = i + 1; j < p.leaves.size(); ++j)
      if (p.leaves[i] == p.leaves[j]) return fail("repeated leaf");
  if (p.pairing.size() != p.leaves.size()) return fail("pairing shape mismatch");
  for (const auto& row : p.pairing)
    if (row.size() != p.leaves.size()) return fail("pairing shape mismatch");
  return {};
}

}  // namespace

VerifyOutcome verify_pattern(const RectTree& tree, const SquarePattern& p) {
  VerifyOutcome sh = check_pattern_shape(p);
  if (!sh.ok) return sh;
  for (std::size_t i = 0; i < p.leaves.size(); ++i)
    for (std::size_t j = 0; j < p.leaves.size(); ++j)
      for (std::size_t l = 0; l <= p.leaves[i].size(); ++l)
        if (!tree.pairs.count({p.leaves[i].substr(0, l), p.leaves[j].substr(0, l)}))
          return fail("pair (" + p.leaves[i] + "," + p.leaves[j] + ") uncertified at level " +
                      std::to_string(l));
  return {};
}

VerifyOutcome verify_pattern(const TreeFamily& f, const SquarePattern& p) {
  VerifyOutcome sh = check_pattern_shape(p);
  if (!sh.ok) return sh;
  for (std::size_t i = 0; i < p.leaves.size(); ++i)
    for (std::size_t j = 0; j < p.leaves.size(); ++j) {
      int t = p.pairing[i][j];
      if (t < 0 || t >= static_cast<int>(f.trees.size()))
        return fail("pairing leaves the family");
      for (std::size_t l = 0; l <= p.leaves[i].size(); ++l)
        if (!raw_pair_in(f.trees[static_cast<std::size_t>(t)], p.leaves[i].substr(0, l),
                         p.leaves[j].substr(0, l)))
          return fail("pair (" + p.leaves[i] + "," + p.leaves[j] + ") uncertified at level " +
                      std::to_string(l));
    }
  return {};
}

VerifyOutcome verify_free_set(int universe, const std::vector<FreeFunction>& functions,
                              const std::vector<int>& set) {
  for (int x : set)
    if (x < 0 || x >= universe) return fail("element out of range");
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j]) return fail("repeated element");
  // plain loops over injective argument tuples, last slot checked against the
  // function value
  for (std::size_t fi = 0; fi < functions.size(); ++fi) {
    const FreeFunction& f = functions[fi];
    const int n = f.arity;
    if (static_cast<int>(set.size()) < n + 1) continue;
    std::vector<int> tup(static_cast<std::size_t>(n) + 1);
    auto rec = [&](auto&& self, int pos) -> VerifyOutcome {
      if (pos == n + 1) {
        std::size_t idx = 0;
        for (int q = 0; q < n; ++q)
          idx = idx * static_cast<std::size_t>(universe) +
                static_cast<std::size_t>(tup[static_cast<std::size_t>(q)]);
        if (tup[static_cast<std::size_t>(n)] == f.table[idx])
          return fail("function " + std::to_string(fi) + " traps the set");
        return {};
      }
      for (int x : set) {
        bool dup = false;
        for (int q = 0; q < pos; ++q)
          if (tup[static_cast<std::size_t>(q)] == x) dup = true;
        if (dup) continue;
        tup[static_cast<std::size_t>(pos)] = x;
        VerifyOutcome r = self(self, pos + 1);
        if (!r.ok) return r;
      }
      return {};
    };
    VerifyOutcome r = rec(rec, 0);
    if (!r.ok) return r;
  }
  return {};
}

}  // namespace sqdeg
