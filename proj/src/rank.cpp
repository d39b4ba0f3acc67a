#include "sqdeg/rank.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <thread>

namespace sqdeg {

namespace {

constexpr int neg_inf = -1000000;

// all injective assignments matching the complete type of `target`, ascending
struct MatchEnumerator {
  const TypeOracle& oracle;
  const std::vector<int>& target;
  AtomicType target_type;
  int n;
  int universe;

  std::set<std::vector<int>> members;

  MatchEnumerator(const TypeOracle& o, const std::vector<int>& t)
      : oracle(o),
        target(t),
        target_type(atomic_type(o.model(), t)),
        n(static_cast<int>(t.size())),
        universe(o.model().universe) {
    std::vector<int> partial;
    partial.reserve(static_cast<std::size_t>(n));
    dfs(partial);
  }

  void dfs(std::vector<int>& partial) {
    const int i = static_cast<int>(partial.size());
    if (i == n) {
      if (oracle.binary_vocabulary() ||
          atomic_type(oracle.model(), partial) == target_type)
        members.insert(partial);
      return;
    }
    for (int x = 0; x < universe; ++x) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (partial[static_cast<std::size_t>(j)] == x) ok = false;
      if (!ok) continue;
      if (oracle.pair_profile(x, x) !=
          oracle.pair_profile(target[static_cast<std::size_t>(i)],
                              target[static_cast<std::size_t>(i)]))
        continue;
      for (int j = 0; j < i && ok; ++j)
        if (oracle.pair_profile(partial[static_cast<std::size_t>(j)], x) !=
            oracle.pair_profile(target[static_cast<std::size_t>(j)],
                                target[static_cast<std::size_t>(i)]))
          ok = false;
      if (!ok) continue;
      partial.push_back(x);
      dfs(partial);
      partial.pop_back();
    }
  }
};

// partitions of {0..t-1} into at most `cells` nonempty cells, as restricted
// growth strings
void enumerate_partitions(int t, int cells, std::vector<std::vector<int>>& out) {
  std::vector<int> rgs(static_cast<std::size_t>(t), 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == t) {
      out.push_back(rgs);
      return;
    }
    for (int c = 0; c <= used && c < cells; ++c) {
      rgs[static_cast<std::size_t>(i)] = c;
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  rec(rec, 0, 0);
}

struct Engine {
  const FiniteModel& m;
  RankParams params;
  TypeOracle oracle;
  std::vector<int> value;

  Engine(const FiniteModel& model, const RankParams& p)
      : m(model), params(p), oracle(model) {
    value.assign(std::size_t{1} << m.universe, neg_inf);
  }

  bool base_passes(const std::vector<int>& w) const {
    std::vector<int> rest;
    rest.reserve(w.size());
    for (int a : w) {
      rest.clear();
      for (int b : w)
        if (b != a) rest.push_back(b);
      if (orbit_size(m, a, rest) < params.closure) return false;
    }
    return true;
  }

  // best guaranteed rank of the referenced sets when splitting position k,
  // per Case `variant`; neg_inf when no witness configuration exists
  int attain(const std::vector<int>& w, std::uint32_t mask, int k,
             const MatchEnumerator& matches) const {
    const int n = static_cast<int>(w.size());
    int best = neg_inf;
    if (params.variant == rank_variant::l0) {
      std::vector<int> probe = w;
      for (int c = 0; c < m.universe; ++c) {
        if (mask & (1u << c)) continue;
        probe[static_cast<std::size_t>(k)] = c;
        if (matches.members.count(probe))
          best = std::max(best, value[mask | (1u << c)]);
      }
      return best;
    }
    if (params.variant == rank_variant::l1) {
      std::vector<int> probe;
      for (const std::vector<int>& d : matches.members) {
        std::uint32_t dmask = elems_mask(d);
        probe = d;
        for (int c = 0; c < m.universe; ++c) {
          if (dmask & (1u << c)) continue;
          probe[static_cast<std::size_t>(k)] = c;
          if (matches.members.count(probe))
            best = std::max(best, value[dmask | (1u << c)]);
        }
      }
      return best;
    }
    // l2 / l3 / partition: group matching tuples by their off-k values and
    // pick `witnesses` column values
    std::map<std::vector<int>, std::vector<int>> stems;
    for (const std::vector<int>& d : matches.members) {
      std::vector<int> stem = d;
      stem.erase(stem.begin() + k);
      stems[stem].push_back(d[static_cast<std::size_t>(k)]);
    }
    const int t = params.witnesses;
    std::vector<std::vector<int>> partitions;
    if (params.variant == rank_variant::partition)
      enumerate_partitions(t, params.classes - 1, partitions);
    for (const auto& [stem, columns] : stems) {
      if (static_cast<int>(columns.size()) < t) continue;
      if (params.variant == rank_variant::l2) {
        // clause (d): the first copy is the original tuple
        bool stem_is_w = true;
        std::size_t si = 0;
        for (int i = 0; i < n; ++i) {
          if (i == k) continue;
          if (stem[si++] != w[static_cast<std::size_t>(i)]) stem_is_w = false;
        }
        if (!stem_is_w) continue;
        if (std::find(columns.begin(), columns.end(), w[static_cast<std::size_t>(k)]) ==
            columns.end())
          continue;
      }
      std::uint32_t stem_mask = elems_mask(stem);
      // all t-subsets of the columns (ascending)
      std::vector<int> idx(static_cast<std::size_t>(t));
      for (int i = 0; i < t; ++i) idx[static_cast<std::size_t>(i)] = i;
      const int csz = static_cast<int>(columns.size());
      while (true) {
        bool use = true;
        if (params.variant == rank_variant::l2) {
          use = false;
          for (int i = 0; i < t; ++i)
            if (columns[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] ==
                w[static_cast<std::size_t>(k)])
              use = true;
        }
        if (use) {
          int score;
          if (params.variant == rank_variant::partition) {
            score = neg_inf;
            bool first = true;
            for (const auto& rgs : partitions) {
              int cell_best = neg_inf;
              for (int i = 0; i < t; ++i)
                for (int j = i + 1; j < t; ++j)
                  if (rgs[static_cast<std::size_t>(i)] == rgs[static_cast<std::size_t>(j)]) {
                    std::uint32_t rm =
                        stem_mask |
                        (1u << columns[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]) |
                        (1u << columns[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
                    cell_best = std::max(cell_best, value[rm]);
                  }
              score = first ? cell_best : std::min(score, cell_best);
              first = false;
            }
          } else {
            score = 1000000;
            for (int i = 0; i < t; ++i)
              for (int j = i + 1; j < t; ++j) {
                std::uint32_t rm =
                    stem_mask |
                    (1u << columns[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]) |
                    (1u << columns[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
                score = std::min(score, value[rm]);
              }
          }
          best = std::max(best, score);
        }
        int pos = t - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == csz - t + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < t; ++i)
          idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
    return best;
  }

  int compute(std::uint32_t mask) const {
    std::vector<int> w = mask_elems(mask);
    if (!base_passes(w)) return -1;
    MatchEnumerator matches(oracle, w);
    int worst = 1000000;
    for (int k = 0; k < static_cast<int>(w.size()); ++k)
      worst = std::min(worst, attain(w, mask, k, matches));
    return std::max(0, worst <= neg_inf ? 0 : 1 + worst);
  }

  void run() {
    const int n = m.universe;
    std::vector<std::vector<std::uint32_t>> by_size(static_cast<std::size_t>(n) + 1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
      by_size[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    for (int size = n; size >= 1; --size) {
      const auto& layer = by_size[static_cast<std::size_t>(size)];
      int jobs = std::max(1, params.jobs);
      if (jobs > 1 && layer.size() > 8) {
        std::vector<std::thread> pool;
        std::size_t chunk = (layer.size() + static_cast<std::size_t>(jobs) - 1) /
                            static_cast<std::size_t>(jobs);
        for (int j = 0; j < jobs; ++j) {
          std::size_t lo = static_cast<std::size_t>(j) * chunk;
          std::size_t hi = std::min(layer.size(), lo + chunk);
          if (lo >= hi) break;
          pool.emplace_back([this, &layer, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) value[layer[i]] = compute(layer[i]);
          });
        }
        for (auto& th : pool) th.join();
      } else {
        for (std::uint32_t mask : layer) value[mask] = compute(mask);
      }
    }
  }
};

}  // namespace

rank_variant parse_variant(const std::string& s) {
  if (s == "0" || s == "l0") return rank_variant::l0;
  if (s == "1" || s == "l1") return rank_variant::l1;
  if (s == "2" || s == "l2") return rank_variant::l2;
  if (s == "3" || s == "l3") return rank_variant::l3;
  if (s == "part" || s == "partition") return rank_variant::partition;
  throw input_error("unknown rank variant: " + s);
}

std::string variant_name(rank_variant v) {
  switch (v) {
    case rank_variant::l0: return "l0";
    case rank_variant::l1: return "l1";
    case rank_variant::l2: return "l2";
    case rank_variant::l3: return "l3";
    case rank_variant::partition: return "partition";
  }
  return "?";
}

void validate_params(const RankParams& p) {
  if (p.closure < 2) throw input_error("closure threshold must be >= 2");
  if (p.witnesses < 2) throw input_error("witness count must be >= 2");
  if (p.classes < 2) throw input_error("class bound must be >= 2");
  if (p.jobs < 1) throw input_error("jobs must be >= 1");
}

int RankTable::value_of(const std::vector<int>& w) const {
  std::uint32_t mask = 0;
  for (int e : w) {
    if (e < 0 || e >= universe) throw input_error("set element out of range");
    mask |= 1u << e;
  }
  if (mask == 0) throw input_error("rank of empty set is undefined");
  return value[mask];
}

RankTable rank_table(const FiniteModel& m, const RankParams& p) {
  validate_model(m);
  validate_params(p);
  if (m.universe > 20) throw input_error("rank_table supports universes up to 20");
  Engine eng(m, p);
  eng.run();
  RankTable t;
  t.universe = m.universe;
  t.value = std::move(eng.value);
  t.model_rank = 0;
  for (std::uint32_t mask = 1; mask < (1u << m.universe); ++mask)
    t.model_rank = std::max(t.model_rank, t.value[mask] + 1);
  return t;
}

int rank_of_set(const FiniteModel& m, const std::vector<int>& w, const RankParams& p) {
  if (w.empty()) throw input_error("rank of empty set is undefined");
  return rank_table(m, p).value_of(w);
}

int model_rank(const FiniteModel& m, const RankParams& p) {
  return rank_table(m, p).model_rank;
}

bool pr_check(const FiniteModel& m, const RankParams& p, int alpha) {
  return model_rank(m, p) >= alpha;
}

namespace {

void enumerate_injective(int universe, int n, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  cur.reserve(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int x = 0; x < universe; ++x) {
      if (std::find(cur.begin(), cur.end(), x) != cur.end()) continue;
      cur.push_back(x);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

}  // namespace

FiniteModel expand_witness_model(const FiniteModel& m, const RankParams& p) {
  if (p.variant != rank_variant::l0)
    throw input_error("expand_witness_model is defined for variant l0");
  RankTable table = rank_table(m, p);
  const int alpha = table.model_rank;
  FiniteModel out = m;
  if (alpha == 0) return out;

  std::set<std::string> names;
  for (const Relation& r : m.relations) names.insert(r.name);
  std::string prefix = "x";
  while (true) {
    bool clash = false;
    for (const std::string& nm : names)
      if (nm.rfind(prefix, 0) == 0) clash = true;
    if (!clash) break;
    prefix += "x";
  }

  for (int n = 1; n <= m.universe; ++n) {
    std::vector<std::vector<int>> tuples;
    enumerate_injective(m.universe, n, tuples);

    std::vector<std::set<std::vector<int>>> by_rank(static_cast<std::size_t>(alpha));
    for (const auto& tup : tuples) {
      int v = table.value[elems_mask(tup)];
      if (v >= 0 && v < alpha) by_rank[static_cast<std::size_t>(v)].insert(tup);
    }
    bool any = false;
    for (const auto& s : by_rank)
      if (!s.empty()) any = true;
    if (!any) continue;
    if (n > m.max_arity)
      throw input_error("expansion needs arity " + std::to_string(n) +
                        " above the configured maximum " + std::to_string(m.max_arity));

    std::map<AtomicType, int> type_ids;
    std::vector<AtomicType> tuple_types;
    tuple_types.reserve(tuples.size());
    for (const auto& tup : tuples) {
      AtomicType ty = atomic_type(m, tup);
      type_ids.emplace(ty, static_cast<int>(type_ids.size()));
      tuple_types.push_back(std::move(ty));
    }

    for (int b = 0; b < alpha; ++b) {
      const auto& ranked = by_rank[static_cast<std::size_t>(b)];
      if (ranked.empty()) continue;
      Relation rb;
      rb.name = prefix + "r" + std::to_string(n) + "b" + std::to_string(b);
      rb.arity = n;
      rb.tuples = ranked;
      out.relations.push_back(std::move(rb));

      for (int k = 0; k < n; ++k) {
        std::map<int, std::set<std::vector<int>>> stuck;  // type id -> tuples
        for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
          const auto& tup = tuples[ti];
          if (!ranked.count(tup)) continue;
          std::uint32_t mask = elems_mask(tup);
          bool splittable = false;
          std::vector<int> probe = tup;
          for (int c = 0; c < m.universe && !splittable; ++c) {
            if (mask & (1u << c)) continue;
            probe[static_cast<std::size_t>(k)] = c;
            if (table.value[mask | (1u << c)] >= b &&
                atomic_type(m, probe) == tuple_types[ti])
              splittable = true;
          }
          if (!splittable) stuck[type_ids[tuple_types[ti]]].insert(tup);
        }
        for (auto& [tid, tuples_stuck] : stuck) {
          Relation rw;
          rw.name = prefix + "w" + std::to_string(n) + "k" + std::to_string(k) + "b" +
                    std::to_string(b) + "t" + std::to_string(tid);
          rw.arity = n;
          rw.tuples = std::move(tuples_stuck);
          out.relations.push_back(std::move(rw));
        }
      }
    }
  }
  out.max_arity = std::max(out.max_arity, m.universe);
  validate_model(out);
  return out;
}

}  // namespace sqdeg
