#include "sqdeg/rectrank.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace sqdeg {

int TwoSortedModel::color_at(int a, int b) const {
  auto i = std::lower_bound(sort1.begin(), sort1.end(), a);
  auto j = std::lower_bound(sort2.begin(), sort2.end(), b);
  if (i == sort1.end() || *i != a) throw input_error("element not in sort1");
  if (j == sort2.end() || *j != b) throw input_error("element not in sort2");
  return colors[static_cast<std::size_t>(i - sort1.begin())]
               [static_cast<std::size_t>(j - sort2.begin())];
}

void validate_two_sorted(const TwoSortedModel& m) {
  validate_model(m.base);
  if (m.sort1.empty() || m.sort2.empty())
    throw input_error("both sorts must be nonempty");
  if (!std::is_sorted(m.sort1.begin(), m.sort1.end()) ||
      !std::is_sorted(m.sort2.begin(), m.sort2.end()))
    throw input_error("sorts must be listed in ascending order");
  std::set<int> seen;
  for (int a : m.sort1) {
    if (a < 0 || a >= m.base.universe) throw input_error("sort1 element out of range");
    if (!seen.insert(a).second) throw input_error("repeated sort element");
  }
  for (int b : m.sort2) {
    if (b < 0 || b >= m.base.universe) throw input_error("sort2 element out of range");
    if (!seen.insert(b).second) throw input_error("sorts must be disjoint");
  }
  if (m.colors.size() != m.sort1.size())
    throw input_error("color matrix must have one row per sort1 element");
  for (const auto& row : m.colors) {
    if (row.size() != m.sort2.size())
      throw input_error("color matrix must have one column per sort2 element");
    for (int c : row)
      if (c < 0) throw input_error("colors must be nonnegative");
  }
  for (int x : m.aux_pred)
    if (x < 0 || x >= m.base.universe) throw input_error("aux_pred element out of range");
}

std::vector<int> used_colors(const TwoSortedModel& m) {
  std::set<int> cs;
  for (const auto& row : m.colors) cs.insert(row.begin(), row.end());
  return {cs.begin(), cs.end()};
}

FiniteModel closure_structure(const TwoSortedModel& m) {
  FiniteModel out = m.base;
  std::set<std::string> names;
  for (const Relation& r : out.relations) names.insert(r.name);
  std::string prefix;
  while (names.count(prefix + "sort1") || names.count(prefix + "aux")) prefix += "_";
  Relation s1{prefix + "sort1", 1, {}};
  for (int a : m.sort1) s1.tuples.insert({a});
  Relation s2{prefix + "sort2", 1, {}};
  for (int b : m.sort2) s2.tuples.insert({b});
  out.relations.push_back(std::move(s1));
  out.relations.push_back(std::move(s2));
  if (!m.aux_pred.empty()) {
    Relation ap{prefix + "aux", 1, {}};
    for (int x : m.aux_pred) ap.tuples.insert({x});
    out.relations.push_back(std::move(ap));
  }
  for (int c : used_colors(m)) {
    Relation rc{prefix + "color" + std::to_string(c), 2, {}};
    for (std::size_t i = 0; i < m.sort1.size(); ++i)
      for (std::size_t j = 0; j < m.sort2.size(); ++j)
        if (m.colors[i][j] == c) rc.tuples.insert({m.sort1[i], m.sort2[j]});
    out.relations.push_back(std::move(rc));
  }
  out.max_arity = std::max(out.max_arity, 2);
  return out;
}

namespace {

constexpr int neg_inf = -1000000;

struct RectEngine {
  const TwoSortedModel& m;
  rank_variant variant;
  int closure;
  FiniteModel cl_model;  // base + sorts + colors, for the base case
  int s1, s2;
  std::vector<int> value;

  RectEngine(const TwoSortedModel& model, rank_variant v, int k)
      : m(model),
        variant(v),
        closure(k),
        cl_model(closure_structure(model)),
        s1(static_cast<int>(model.sort1.size())),
        s2(static_cast<int>(model.sort2.size())) {
    value.assign(std::size_t{1} << (s1 + s2), rkrc_bottom);
    index_cross_cells();
  }

  // pair of sort-position masks -> element tuple, sort1 part then sort2 part
  std::vector<int> elements(std::uint32_t m1, std::uint32_t m2) const {
    std::vector<int> w;
    for (int i = 0; i < s1; ++i)
      if (m1 & (1u << i)) w.push_back(m.sort1[static_cast<std::size_t>(i)]);
    for (int j = 0; j < s2; ++j)
      if (m2 & (1u << j)) w.push_back(m.sort2[static_cast<std::size_t>(j)]);
    return w;
  }

  bool constant_color(std::uint32_t m1, std::uint32_t m2, int* c_out) const {
    int c = -1;
    for (int i = 0; i < s1; ++i) {
      if (!(m1 & (1u << i))) continue;
      for (int j = 0; j < s2; ++j) {
        if (!(m2 & (1u << j))) continue;
        int cij = m.colors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (c == -1) c = cij;
        if (cij != c) return false;
      }
    }
    if (c_out) *c_out = c;
    return true;
  }

  bool base_passes(const std::vector<int>& w) const {
    std::vector<int> rest;
    for (int a : w) {
      rest.clear();
      for (int b : w)
        if (b != a) rest.push_back(b);
      if (orbit_size(cl_model, a, rest) < closure) return false;
    }
    return true;
  }

  // dedup ids for the complete base 2-type of each cross element pair; the
  // cross signature of a tuple is the matrix of (type id, color) over its
  // sort1 x sort2 positions
  std::map<std::pair<int, int>, std::pair<int, int>> cross_cell_;  // (a,b) -> (tid, color)

  void index_cross_cells() {
    std::map<AtomicType, int> ids;
    for (std::size_t i = 0; i < m.sort1.size(); ++i)
      for (std::size_t j = 0; j < m.sort2.size(); ++j) {
        int pair[2] = {m.sort1[i], m.sort2[j]};
        AtomicType ty = atomic_type(m.base, pair);
        auto [it, _] = ids.emplace(std::move(ty), static_cast<int>(ids.size()));
        cross_cell_[{pair[0], pair[1]}] = {it->second, m.colors[i][j]};
      }
  }

  std::vector<std::pair<int, int>> cross_sig(const std::vector<int>& w, int n1) const {
    std::vector<std::pair<int, int>> sig;
    const int n = static_cast<int>(w.size());
    for (int i = 0; i < n1; ++i)
      for (int j = n1; j < n; ++j)
        sig.push_back(cross_cell_.at({w[static_cast<std::size_t>(i)],
                                      w[static_cast<std::size_t>(j)]}));
    return sig;
  }

  // all injective sort-respecting tuples with the same cross signature
  std::set<std::vector<int>> matches(const std::vector<int>& w, int n1) const {
    std::vector<std::pair<int, int>> target = cross_sig(w, n1);
    const int n = static_cast<int>(w.size());
    std::set<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self) -> void {
      const int i = static_cast<int>(cur.size());
      if (i == n) {
        if (cross_sig(cur, n1) == target) out.insert(cur);
        return;
      }
      const std::vector<int>& pool = i < n1 ? m.sort1 : m.sort2;
      for (int x : pool) {
        if (std::find(cur.begin(), cur.end(), x) != cur.end()) continue;
        cur.push_back(x);
        self(self);
        cur.pop_back();
      }
    };
    rec(rec);
    return out;
  }

  int compute(std::uint32_t m1, std::uint32_t m2) {
    int color = -1;
    if (!constant_color(m1, m2, &color)) return rkrc_bottom;
    std::vector<int> w = elements(m1, m2);
    if (!base_passes(w)) return -1;
    const int n1 = std::popcount(m1);
    const int n = static_cast<int>(w.size());
    std::set<std::vector<int>> members = matches(w, n1);

    auto ref_value = [&](const std::vector<int>& tup, int k, int c) {
      // pair obtained by adding c alongside position k's side
      std::uint32_t r1 = 0, r2 = 0;
      for (int i = 0; i < n1; ++i) {
        auto it = std::lower_bound(m.sort1.begin(), m.sort1.end(),
                                   tup[static_cast<std::size_t>(i)]);
        r1 |= 1u << (it - m.sort1.begin());
      }
      for (int j = n1; j < n; ++j) {
        auto it = std::lower_bound(m.sort2.begin(), m.sort2.end(),
                                   tup[static_cast<std::size_t>(j)]);
        r2 |= 1u << (it - m.sort2.begin());
      }
      if (k < n1) {
        auto it = std::lower_bound(m.sort1.begin(), m.sort1.end(), c);
        r1 |= 1u << (it - m.sort1.begin());
      } else {
        auto it = std::lower_bound(m.sort2.begin(), m.sort2.end(), c);
        r2 |= 1u << (it - m.sort2.begin());
      }
      return value[(r1 << s2) | r2];
    };

    int worst = 1000000;
    std::vector<int> probe;
    for (int k = 0; k < n && worst > neg_inf; ++k) {
      int best = neg_inf;
      const std::vector<int>& pool = k < n1 ? m.sort1 : m.sort2;
      if (variant == rank_variant::l0) {
        probe = w;
        for (int c : pool) {
          if (std::find(w.begin(), w.end(), c) != w.end()) continue;
          probe[static_cast<std::size_t>(k)] = c;
          if (members.count(probe)) best = std::max(best, ref_value(w, k, c));
        }
      } else {
        for (const std::vector<int>& d : members) {
          probe = d;
          for (int c : pool) {
            if (std::find(d.begin(), d.end(), c) != d.end()) continue;
            probe[static_cast<std::size_t>(k)] = c;
            if (members.count(probe)) best = std::max(best, ref_value(d, k, c));
          }
        }
      }
      worst = std::min(worst, best);
    }
    return std::max(0, worst <= neg_inf ? 0 : 1 + worst);
  }

  void run() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order;
    for (std::uint32_t m1 = 1; m1 < (1u << s1); ++m1)
      for (std::uint32_t m2 = 1; m2 < (1u << s2); ++m2)
        order.emplace_back(m1, m2);
    std::stable_sort(order.begin(), order.end(), [](auto a, auto b) {
      return std::popcount(a.first) + std::popcount(a.second) >
             std::popcount(b.first) + std::popcount(b.second);
    });
    for (auto [m1, m2] : order) value[(m1 << s2) | m2] = compute(m1, m2);
  }
};

}  // namespace

RectRankTable rkrc_table(const TwoSortedModel& m, rank_variant variant, int closure) {
  validate_two_sorted(m);
  if (variant != rank_variant::l0 && variant != rank_variant::l1)
    throw input_error("rkrc supports variants l0 and l1");
  if (closure < 2) throw input_error("closure threshold must be >= 2");
  if (m.sort1.size() + m.sort2.size() > 20)
    throw input_error("rkrc_table supports up to 20 sorted elements");
  RectEngine eng(m, variant, closure);
  eng.run();
  RectRankTable t;
  t.s1 = static_cast<int>(m.sort1.size());
  t.s2 = static_cast<int>(m.sort2.size());
  t.value = std::move(eng.value);
  return t;
}

namespace {

std::uint32_t side_mask(const std::vector<int>& sorted, const std::vector<int>& w,
                        const char* which) {
  std::uint32_t mask = 0;
  for (int e : w) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
    if (it == sorted.end() || *it != e)
      throw input_error(std::string("element ") + std::to_string(e) + " not in " + which);
    mask |= 1u << (it - sorted.begin());
  }
  return mask;
}

}  // namespace

int rkrc_of_pair(const TwoSortedModel& m, const RectPair& pair, rank_variant variant,
                 int closure) {
  if (pair.w1.empty() || pair.w2.empty())
    throw input_error("both sides of a pair must be nonempty");
  RectRankTable t = rkrc_table(m, variant, closure);
  return t.at(side_mask(m.sort1, pair.w1, "sort1"), side_mask(m.sort2, pair.w2, "sort2"));
}

int rkrc_model_at(const TwoSortedModel& m, int color, rank_variant variant, int closure) {
  // the color set Q is read as [0, max attained]; colors inside it that are
  // never attained have an empty supremum
  std::vector<int> cs = used_colors(m);
  if (color < 0 || (!cs.empty() && color > cs.back()))
    throw input_error("unknown color " + std::to_string(color));
  RectRankTable t = rkrc_table(m, variant, closure);
  int best = 0;
  const int s1 = t.s1, s2 = t.s2;
  for (std::uint32_t m1 = 1; m1 < (1u << s1); ++m1)
    for (std::uint32_t m2 = 1; m2 < (1u << s2); ++m2) {
      int v = t.at(m1, m2);
      if (v == rkrc_bottom) continue;
      bool right_color = true;
      for (int i = 0; i < s1 && right_color; ++i) {
        if (!(m1 & (1u << i))) continue;
        for (int j = 0; j < s2 && right_color; ++j) {
          if (!(m2 & (1u << j))) continue;
          if (m.colors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != color)
            right_color = false;
        }
      }
      if (right_color) best = std::max(best, v + 1);
    }
  return best;
}

bool prrd_check(const TwoSortedModel& m, int alpha, rank_variant variant, int closure) {
  for (int c : used_colors(m))
    if (rkrc_model_at(m, c, variant, closure) >= alpha) return true;
  return alpha <= 0;
}

}  // namespace sqdeg
