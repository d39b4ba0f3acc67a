#include "sqdeg/search.hpp"

#include <algorithm>
#include <map>

#include "sqdeg/rank.hpp"

namespace sqdeg {

namespace {

// least tree containing the full-depth pair, -1 if none; downward closure
// makes the full-depth check sufficient
int min_tree_of(const TreeFamily& f, const std::string& a, const std::string& b) {
  for (int t = 0; t < static_cast<int>(f.trees.size()); ++t)
    if (f.pair_in(t, a, b)) return t;
  return -1;
}

int min_tree_of(const std::vector<RectTree>& trees, const std::string& a,
                const std::string& b) {
  for (int t = 0; t < static_cast<int>(trees.size()); ++t)
    if (trees[static_cast<std::size_t>(t)].pair_in(a, b)) return t;
  return -1;
}

}  // namespace

SquareSearchResult find_max_square(const TreeFamily& f, int size_cap) {
  validate_family(f);
  if (f.depth > 12) throw input_error("find_max_square refuses depths above 12");
  if (size_cap < 0) throw input_error("size cap must be >= 0");

  std::vector<std::string> leaves = all_strings(2, f.depth);
  std::vector<std::string> verts;
  for (const std::string& s : leaves)
    if (min_tree_of(f, s, s) >= 0) verts.push_back(s);
  const int nv = static_cast<int>(verts.size());
  std::vector<std::vector<bool>> ok(static_cast<std::size_t>(nv),
                                    std::vector<bool>(static_cast<std::size_t>(nv)));
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      ok[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          min_tree_of(f, verts[static_cast<std::size_t>(i)],
                      verts[static_cast<std::size_t>(j)]) >= 0;

  std::vector<int> best, cur;
  bool capped = false;
  auto rec = [&](auto&& self, int start) -> void {
    if (capped) return;
    if (cur.size() > best.size()) {
      best = cur;
      if (size_cap > 0 && static_cast<int>(best.size()) >= size_cap) {
        capped = true;
        return;
      }
    }
    for (int v = start; v < nv; ++v) {
      if (cur.size() + static_cast<std::size_t>(nv - v) <= best.size()) break;
      bool fits = true;
      for (int u : cur)
        if (!ok[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] ||
            !ok[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) {
          fits = false;
          break;
        }
      if (!fits) continue;
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
      if (capped) return;
    }
  };
  rec(rec, 0);

  SquareSearchResult res;
  res.partial = capped;
  res.size = static_cast<int>(best.size());
  for (int v : best) res.witness.points.push_back(verts[static_cast<std::size_t>(v)]);
  res.witness.pairing.assign(best.size(), std::vector<int>(best.size()));
  for (std::size_t i = 0; i < best.size(); ++i)
    for (std::size_t j = 0; j < best.size(); ++j)
      res.witness.pairing[i][j] =
          min_tree_of(f, res.witness.points[i], res.witness.points[j]);
  return res;
}

RectangleSearchResult find_max_rectangle(const std::vector<RectTree>& trees, int left_cap,
                                         int right_cap) {
  if (trees.empty()) throw input_error("at least one tree is required");
  for (const RectTree& t : trees) validate_rect_tree(t);
  const int depth = trees[0].depth;
  const int branching = trees[0].branching;
  for (const RectTree& t : trees)
    if (t.depth != depth || t.branching != branching)
      throw input_error("all trees must share depth and branching");
  long long leaf_count = 1;
  for (int i = 0; i < depth; ++i) {
    leaf_count *= branching;
    if (leaf_count > 4096) throw input_error("find_max_rectangle refuses this search space");
  }

  std::vector<std::string> leaves = all_strings(branching, depth);
  const int nl = static_cast<int>(leaves.size());
  // right candidates per left leaf
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(nl));
  std::vector<bool> left_used(static_cast<std::size_t>(nl), false);
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nl; ++j)
      if (min_tree_of(trees, leaves[static_cast<std::size_t>(i)],
                      leaves[static_cast<std::size_t>(j)]) >= 0) {
        nbr[static_cast<std::size_t>(i)].push_back(j);
        left_used[static_cast<std::size_t>(i)] = true;
      }

  std::vector<int> lefts;
  for (int i = 0; i < nl; ++i)
    if (left_used[static_cast<std::size_t>(i)]) lefts.push_back(i);

  std::vector<int> best_a, best_b, cur_a;
  auto better = [&](int amin, int asum, int bmin, int bsum) {
    return amin > bmin || (amin == bmin && asum > bsum);
  };
  bool capped = false;
  auto rec = [&](auto&& self, std::size_t start, std::vector<int> common) -> void {
    if (!cur_a.empty() && !common.empty()) {
      std::vector<int> b = common;
      if (right_cap > 0 && static_cast<int>(b.size()) > right_cap) {
        b.resize(static_cast<std::size_t>(right_cap));
        capped = true;
      }
      int amin = std::min(static_cast<int>(cur_a.size()), static_cast<int>(b.size()));
      int asum = static_cast<int>(cur_a.size()) + static_cast<int>(b.size());
      int bmin = std::min(static_cast<int>(best_a.size()), static_cast<int>(best_b.size()));
      int bsum = static_cast<int>(best_a.size()) + static_cast<int>(best_b.size());
      if (better(amin, asum, bmin, bsum)) {
        best_a = cur_a;
        best_b = b;
      }
    }
    if (left_cap > 0 && static_cast<int>(cur_a.size()) >= left_cap) {
      capped = true;
      return;
    }
    for (std::size_t k = start; k < lefts.size(); ++k) {
      int v = lefts[k];
      // the common neighborhood only shrinks, the left side can still grow
      std::vector<int> next;
      if (cur_a.empty()) {
        next = nbr[static_cast<std::size_t>(v)];
      } else {
        std::set_intersection(common.begin(), common.end(),
                              nbr[static_cast<std::size_t>(v)].begin(),
                              nbr[static_cast<std::size_t>(v)].end(),
                              std::back_inserter(next));
      }
      if (next.empty()) continue;
      int grow = static_cast<int>(cur_a.size()) + 1 + static_cast<int>(lefts.size() - k - 1);
      int bound_min = std::min(grow, static_cast<int>(next.size()));
      int bound_sum = grow + static_cast<int>(next.size());
      int bmin = std::min(static_cast<int>(best_a.size()), static_cast<int>(best_b.size()));
      int bsum = static_cast<int>(best_a.size()) + static_cast<int>(best_b.size());
      if (!better(bound_min, bound_sum, bmin, bsum)) continue;
      cur_a.push_back(v);
      self(self, k + 1, std::move(next));
      cur_a.pop_back();
    }
  };
  rec(rec, 0, {});

  RectangleSearchResult res;
  res.partial = capped;
  for (int v : best_a) res.witness.left.push_back(leaves[static_cast<std::size_t>(v)]);
  for (int v : best_b) res.witness.right.push_back(leaves[static_cast<std::size_t>(v)]);
  res.left_size = static_cast<int>(best_a.size());
  res.right_size = static_cast<int>(best_b.size());
  res.pairing.assign(best_a.size(), std::vector<int>(best_b.size()));
  for (std::size_t i = 0; i < best_a.size(); ++i)
    for (std::size_t j = 0; j < best_b.size(); ++j)
      res.pairing[i][j] = min_tree_of(trees, res.witness.left[i], res.witness.right[j]);
  return res;
}

// ---------------------------------------------------------------------------
// chain extraction

namespace {

struct Extractor {
  const TreeFamily& fam;
  const SquareWitness& w;
  int depth;  // target refinement count
  int quota;
  extract_mode mode;
  RankTable rank_tab;  // induced-model ranks, rank mode only

  std::string block_node;
  int block_depth = 0;

  void note_block(int at, const std::string& node) {
    if (at >= block_depth) {
      block_depth = at;
      block_node = node.empty() ? "<root>" : node;
    }
  }

  int rank_of_indices(const std::vector<int>& idx) {
    std::uint32_t mask = 0;
    for (int i : idx) mask |= 1u << i;
    return rank_tab.value[mask];
  }

  // all pairing-compatible assignments of points to the entry's nodes;
  // sibling pairs (present only in `free_pairs`) are unconstrained
  void certificates(const ChainEntry& e,
                    const std::set<std::pair<int, int>>& free_pairs,
                    std::vector<std::vector<int>>& out) {
    const int k = static_cast<int>(e.u.size());
    std::vector<std::vector<int>> cand(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a)
      for (int i = 0; i < static_cast<int>(w.points.size()); ++i)
        if (is_prefix(e.u[static_cast<std::size_t>(a)], w.points[static_cast<std::size_t>(i)]))
          cand[static_cast<std::size_t>(a)].push_back(i);
    std::vector<int> tup(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int a) -> void {
      if (a == k) {
        out.push_back(tup);
        return;
      }
      for (int i : cand[static_cast<std::size_t>(a)]) {
        bool okc = true;
        for (int b = 0; b <= a && okc; ++b) {
          int j = b == a ? i : tup[static_cast<std::size_t>(b)];
          if (!free_pairs.count({a, b}) &&
              w.pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                  e.h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
            okc = false;
          if (okc && !free_pairs.count({b, a}) &&
              w.pairing[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] !=
                  e.h[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])
            okc = false;
        }
        if (!okc) continue;
        tup[static_cast<std::size_t>(a)] = i;
        self(self, a + 1);
      }
    };
    rec(rec, 0);
  }

  // quota check against fixed h: every node covered by enough distinct points
  bool quota_met(const ChainEntry& e, int entry_index, std::string* bad_node) {
    std::vector<std::vector<int>> certs;
    certificates(e, {}, certs);
    if (mode == extract_mode::rank) {
      std::vector<std::vector<int>> kept;
      int need = depth - entry_index - 1;
      for (auto& c : certs) {
        std::vector<int> sorted = c;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (rank_of_indices(sorted) >= need) kept.push_back(c);
      }
      certs = std::move(kept);
    }
    const int k = static_cast<int>(e.u.size());
    for (int a = 0; a < k; ++a) {
      std::set<int> covered;
      for (const auto& c : certs) covered.insert(c[static_cast<std::size_t>(a)]);
      if (static_cast<int>(covered.size()) < quota) {
        if (bad_node) *bad_node = e.u[static_cast<std::size_t>(a)];
        return false;
      }
    }
    return true;
  }

  bool extend(std::vector<ChainEntry>& chain, int i) {
    if (i == depth) return true;
    ChainEntry e = chain.back();
    const int k = static_cast<int>(e.u.size());
    const int n = e.level;
    const int max_m = fam.depth - (depth - i - 1);

    for (int m = n + 1; m <= max_m; ++m) {
      // two certified child prefixes per node
      std::vector<std::vector<std::string>> childs(static_cast<std::size_t>(k));
      bool feasible = true;
      for (int a = 0; a < k && feasible; ++a) {
        std::set<std::string> prefixes;
        for (const auto& p : w.points)
          if (is_prefix(e.u[static_cast<std::size_t>(a)], p))
            prefixes.insert(p.substr(0, static_cast<std::size_t>(m)));
        childs[static_cast<std::size_t>(a)] = {prefixes.begin(), prefixes.end()};
        if (childs[static_cast<std::size_t>(a)].size() < 2) {
          note_block(i, e.u[static_cast<std::size_t>(a)]);
          feasible = false;
        }
      }
      if (!feasible) continue;

      // choose an ordered pair of children per node
      std::vector<std::pair<std::string, std::string>> pick(static_cast<std::size_t>(k));
      auto choose = [&](auto&& self, int a) -> bool {
        if (a == k) return try_step(chain, i, m, pick);
        const auto& cs = childs[static_cast<std::size_t>(a)];
        for (std::size_t x = 0; x < cs.size(); ++x)
          for (std::size_t y = x + 1; y < cs.size(); ++y) {
            pick[static_cast<std::size_t>(a)] = {cs[x], cs[y]};
            if (self(self, a + 1)) return true;
          }
        return false;
      };
      if (choose(choose, 0)) return true;
    }
    if (block_depth < i) note_block(i, e.u.empty() ? "" : e.u[0]);
    return false;
  }

  bool try_step(std::vector<ChainEntry>& chain, int i, int m,
                const std::vector<std::pair<std::string, std::string>>& pick) {
    ChainEntry e = chain.back();
    const int k = static_cast<int>(e.u.size());
    ChainEntry ne;
    ne.level = m;
    for (const auto& [c0, c1] : pick) {
      ne.u.push_back(c0);
      ne.u.push_back(c1);
    }
    std::sort(ne.u.begin(), ne.u.end());
    const int kk = static_cast<int>(ne.u.size());
    auto parent_idx = [&](const std::string& s) {
      for (int a = 0; a < k; ++a)
        if (is_prefix(e.u[static_cast<std::size_t>(a)], s)) return a;
      return -1;
    };
    // inherited h values; sibling pairs collected as free
    ne.h.assign(static_cast<std::size_t>(kk), std::vector<int>(static_cast<std::size_t>(kk), -1));
    std::set<std::pair<int, int>> free_pairs;
    for (int a = 0; a < kk; ++a)
      for (int b = 0; b < kk; ++b) {
        int pa = parent_idx(ne.u[static_cast<std::size_t>(a)]);
        int pb = parent_idx(ne.u[static_cast<std::size_t>(b)]);
        if (pa == pb && a != b) {
          free_pairs.insert({a, b});
        } else {
          ne.h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
              e.h[static_cast<std::size_t>(pa)][static_cast<std::size_t>(pb)];
        }
      }

    // sibling values are dictated by the certificates realizing them
    std::vector<std::vector<int>> certs;
    certificates(ne, free_pairs, certs);
    std::set<std::vector<int>> sib_vectors;
    std::vector<std::pair<int, int>> free_list(free_pairs.begin(), free_pairs.end());
    for (const auto& c : certs) {
      std::vector<int> v;
      for (auto [a, b] : free_list)
        v.push_back(w.pairing[static_cast<std::size_t>(c[static_cast<std::size_t>(a)])]
                             [static_cast<std::size_t>(c[static_cast<std::size_t>(b)])]);
      sib_vectors.insert(v);
    }
    for (const auto& v : sib_vectors) {
      for (std::size_t t = 0; t < free_list.size(); ++t)
        ne.h[static_cast<std::size_t>(free_list[t].first)]
            [static_cast<std::size_t>(free_list[t].second)] = v[t];
      std::string bad;
      if (!quota_met(ne, i + 1, &bad)) {
        note_block(i + 1, bad);
        continue;
      }
      chain.push_back(ne);
      if (extend(chain, i + 1)) return true;
      chain.pop_back();
    }
    return false;
  }
};

}  // namespace

ExtractResult extract_square_chain(const TreeFamily& f, const SquareWitness& w,
                                   int target_depth, int quota, extract_mode mode) {
  validate_square_witness(f, w);
  if (target_depth < 0 || target_depth > f.depth)
    throw input_error("target depth must be in [0, family depth]");
  if (quota < 1) throw input_error("quota must be >= 1");

  Extractor ex{f, w, target_depth, quota, mode, {}, "", 0};
  if (mode == extract_mode::rank) {
    FiniteModel induced = induced_model_from_square(f, w);
    RankParams rp;
    ex.rank_tab = rank_table(induced, rp);
  }

  ExtractResult res;
  // root entries, one candidate tree per diagonal value
  std::set<int> diag;
  for (std::size_t i = 0; i < w.points.size(); ++i) diag.insert(w.pairing[i][i]);
  for (int t : diag) {
    ChainEntry root;
    root.level = 0;
    root.u = {""};
    root.h = {{t}};
    std::string bad;
    if (!ex.quota_met(root, 0, &bad)) {
      ex.note_block(0, bad);
      continue;
    }
    std::vector<ChainEntry> chain{root};
    if (ex.extend(chain, 0)) {
      res.ok = true;
      res.chain.entries = chain;
      return res;
    }
  }
  res.ok = false;
  res.blocking_node = ex.block_node.empty() ? "<root>" : ex.block_node;
  res.blocked_depth = ex.block_depth;
  return res;
}

// ---------------------------------------------------------------------------
// closed-set boost

BoostResult closed_set_boost(const RectTree& tree, const std::vector<std::string>& points,
                             int rounds, int threshold) {
  validate_rect_tree(tree);
  if (rounds < 0) throw input_error("rounds must be >= 0");
  if (threshold < 1) throw input_error("threshold must be >= 1");
  if (points.empty()) throw input_error("empty point set");
  std::set<std::string> seen;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != tree.depth)
      throw input_error("point " + p + " is not at full depth");
    if (!is_digit_string(p, tree.branching))
      throw input_error("point " + p + " is outside the alphabet");
    if (!seen.insert(p).second) throw input_error("repeated point " + p);
  }
  for (const auto& a : points)
    for (const auto& b : points)
      for (int k = 0; k <= tree.depth; ++k)
        if (!tree.pair_in(a.substr(0, static_cast<std::size_t>(k)),
                          b.substr(0, static_cast<std::size_t>(k))))
          throw input_error("pair (" + a + "," + b + ") is not certified at level " +
                            std::to_string(k));

  struct NodeState {
    std::string prefix;
    std::vector<std::string> pts;
  };
  std::vector<NodeState> state{{std::string(), points}};
  BoostResult res;
  int level = 0;
  for (int round = 1; round <= rounds; ++round) {
    int need = round < rounds ? threshold : 1;
    bool done = false;
    for (int lv = level + 1; lv <= tree.depth && !done; ++lv) {
      // every node must offer two children with enough companions
      std::vector<std::array<NodeState, 2>> split(state.size());
      bool all_ok = true;
      std::string first_bad;
      for (std::size_t s = 0; s < state.size() && all_ok; ++s) {
        std::map<std::string, std::vector<std::string>> buckets;
        for (const auto& p : state[s].pts)
          buckets[p.substr(0, static_cast<std::size_t>(lv))].push_back(p);
        std::vector<std::pair<std::string, std::vector<std::string>>> good;
        for (auto& [pre, pts] : buckets)
          if (static_cast<int>(pts.size()) >= need) good.emplace_back(pre, pts);
        if (good.size() < 2) {
          all_ok = false;
          first_bad = state[s].prefix.empty() ? "<root>" : state[s].prefix;
          continue;
        }
        // keep the two best-populated children, ties to the lexicographic least
        std::stable_sort(good.begin(), good.end(), [](const auto& a, const auto& b) {
          return a.second.size() > b.second.size();
        });
        std::array<NodeState, 2> chosen{NodeState{good[0].first, good[0].second},
                                        NodeState{good[1].first, good[1].second}};
        if (chosen[0].prefix > chosen[1].prefix) std::swap(chosen[0], chosen[1]);
        split[s] = std::move(chosen);
      }
      if (!all_ok) {
        if (lv == tree.depth) {
          res.ok = false;
          res.blocking_node = first_bad;
          res.blocked_round = round;
          return res;
        }
        continue;
      }
      std::vector<NodeState> next;
      for (auto& pairns : split) {
        next.push_back(std::move(pairns[0]));
        next.push_back(std::move(pairns[1]));
      }
      state = std::move(next);
      level = lv;
      res.pattern.split_levels.push_back(lv);
      done = true;
    }
    if (!done) {
      res.ok = false;
      res.blocking_node = state.empty() ? "<root>"
                          : state[0].prefix.empty() ? "<root>"
                                                    : state[0].prefix;
      res.blocked_round = round;
      return res;
    }
  }

  res.ok = true;
  res.pattern.depth = rounds;
  std::sort(state.begin(), state.end(),
            [](const NodeState& a, const NodeState& b) { return a.prefix < b.prefix; });
  for (auto& ns : state) {
    std::sort(ns.pts.begin(), ns.pts.end());
    res.pattern.leaves.push_back(ns.pts.front());
  }
  res.pattern.pairing.assign(res.pattern.leaves.size(),
                             std::vector<int>(res.pattern.leaves.size(), 0));
  return res;
}

// ---------------------------------------------------------------------------
// free sets

namespace {

int eval_table(const FreeFunction& f, int universe, const std::vector<int>& args) {
  std::size_t idx = 0;
  for (int a : args) idx = idx * static_cast<std::size_t>(universe) + static_cast<std::size_t>(a);
  return f.table[idx];
}

// injective (arity+1)-tuples from `pool` that contain `must`; the last slot is
// the forbidden value position
bool violates_with(const FreeFunction& f, int universe, const std::vector<int>& pool,
                   int must) {
  const int n = f.arity;
  std::vector<int> tup(static_cast<std::size_t>(n) + 1);
  auto rec = [&](auto&& self, int pos, bool used_must) -> bool {
    if (pos == n + 1) {
      if (!used_must) return false;
      std::vector<int> args(tup.begin(), tup.end() - 1);
      return tup[static_cast<std::size_t>(n)] == eval_table(f, universe, args);
    }
    for (int x : pool) {
      bool dup = false;
      for (int q = 0; q < pos; ++q)
        if (tup[static_cast<std::size_t>(q)] == x) dup = true;
      if (dup) continue;
      tup[static_cast<std::size_t>(pos)] = x;
      if (self(self, pos + 1, used_must || x == must)) return true;
    }
    return false;
  };
  return rec(rec, 0, false);
}

}  // namespace

bool is_free_set(int universe, const std::vector<FreeFunction>& functions,
                 const std::vector<int>& candidate) {
  for (const FreeFunction& f : functions) {
    if (static_cast<int>(candidate.size()) < f.arity + 1) continue;
    for (int x : candidate)
      if (violates_with(f, universe, candidate, x)) return false;
  }
  return true;
}

FreeSetResult find_free_set(int universe, const std::vector<FreeFunction>& functions,
                            int target) {
  if (universe < 1) throw input_error("universe must be positive");
  if (target < 1 || target > universe)
    return FreeSetResult{};
  for (const FreeFunction& f : functions) {
    if (f.arity < 1) throw input_error("function arity must be >= 1");
    std::size_t expect = 1;
    for (int i = 0; i < f.arity; ++i) expect *= static_cast<std::size_t>(universe);
    if (f.table.size() != expect) throw input_error("function table has the wrong size");
    for (int v : f.table)
      if (v < 0 || v >= universe) throw input_error("function value out of range");
  }

  std::vector<int> cur;
  FreeSetResult res;
  auto rec = [&](auto&& self, int next) -> bool {
    if (static_cast<int>(cur.size()) == target) {
      res.ok = true;
      res.set = cur;
      return true;
    }
    for (int x = next; x < universe; ++x) {
      if (universe - x < target - static_cast<int>(cur.size())) break;
      cur.push_back(x);
      bool fine = true;
      for (const FreeFunction& f : functions) {
        if (static_cast<int>(cur.size()) < f.arity + 1) continue;
        if (violates_with(f, universe, cur, x)) {
          fine = false;
          break;
        }
      }
      if (fine && self(self, x + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  rec(rec, 0);
  return res;
}

}  // namespace sqdeg
