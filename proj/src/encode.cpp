#include "sqdeg/encode.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sqdeg {

namespace {

void check_points(const std::vector<std::string>& pts, int depth, int alphabet,
                  const char* what) {
  if (pts.empty()) throw input_error(std::string(what) + ": empty point list");
  std::set<std::string> seen;
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != depth)
      throw input_error(std::string(what) + ": point " + p + " is not at full depth");
    if (!is_digit_string(p, alphabet))
      throw input_error(std::string(what) + ": point " + p + " is outside the alphabet");
    if (!seen.insert(p).second)
      throw input_error(std::string(what) + ": repeated point " + p);
  }
}

}  // namespace

void validate_square_witness(const TreeFamily& f, const SquareWitness& w) {
  validate_family(f);
  check_points(w.points, f.depth, 2, "square witness");
  const std::size_t n = w.points.size();
  if (w.pairing.size() != n)
    throw input_error("square witness: pairing must be a square matrix over the points");
  for (const auto& row : w.pairing)
    if (row.size() != n)
      throw input_error("square witness: pairing must be a square matrix over the points");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int t = w.pairing[i][j];
      for (int k = 0; k <= f.depth; ++k)
        if (!f.pair_in(t, w.points[i].substr(0, static_cast<std::size_t>(k)),
                       w.points[j].substr(0, static_cast<std::size_t>(k))))
          throw input_error("square witness: pair (" + w.points[i] + "," + w.points[j] +
                            ") fails tree " + std::to_string(t) + " at level " +
                            std::to_string(k));
    }
}

FiniteModel induced_model_from_square(const TreeFamily& f, const SquareWitness& w) {
  validate_square_witness(f, w);
  const int npts = static_cast<int>(w.points.size());
  FiniteModel m;
  m.universe = npts;
  m.max_arity = std::max(default_max_arity, npts);

  // realized entries: (level, node list, pairing matrix), deduplicated
  std::set<std::pair<std::vector<std::string>, std::vector<std::vector<int>>>> entries;
  for (int level = 0; level < f.depth; ++level) {
    for (std::uint32_t s = 1; s < (1u << npts); ++s) {
      std::vector<int> idx = mask_elems(s);
      std::vector<std::pair<std::string, int>> pref;
      bool distinct = true;
      for (int i : idx) {
        std::string p =
            w.points[static_cast<std::size_t>(i)].substr(0, static_cast<std::size_t>(level));
        for (auto& [q, _] : pref)
          if (q == p) distinct = false;
        pref.emplace_back(p, i);
      }
      if (!distinct) continue;
      std::sort(pref.begin(), pref.end());
      std::vector<std::string> u;
      std::vector<std::vector<int>> g(pref.size(), std::vector<int>(pref.size()));
      for (std::size_t a = 0; a < pref.size(); ++a) u.push_back(pref[a].first);
      for (std::size_t a = 0; a < pref.size(); ++a)
        for (std::size_t b = 0; b < pref.size(); ++b)
          g[a][b] = w.pairing[static_cast<std::size_t>(pref[a].second)]
                             [static_cast<std::size_t>(pref[b].second)];
      entries.insert({std::move(u), std::move(g)});
    }
  }

  int serial = 0;
  for (const auto& [u, g] : entries) {
    const int k = static_cast<int>(u.size());
    Relation r;
    r.name = "q" + std::to_string(u[0].size()) + "_" + std::to_string(serial++);
    r.arity = k;
    // every point tuple extending the nodes with the same pairing
    std::vector<std::vector<int>> cand(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a)
      for (int i = 0; i < npts; ++i)
        if (is_prefix(u[static_cast<std::size_t>(a)], w.points[static_cast<std::size_t>(i)]))
          cand[static_cast<std::size_t>(a)].push_back(i);
    std::vector<int> tup(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int a) -> void {
      if (a == k) {
        r.tuples.insert(tup);
        return;
      }
      for (int i : cand[static_cast<std::size_t>(a)]) {
        bool ok = true;
        for (int b = 0; b < a && ok; ++b) {
          int j = tup[static_cast<std::size_t>(b)];
          if (w.pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                  g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ||
              w.pairing[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] !=
                  g[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])
            ok = false;
        }
        if (ok && w.pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] !=
                      g[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)])
          ok = false;
        if (!ok) continue;
        tup[static_cast<std::size_t>(a)] = i;
        self(self, a + 1);
      }
    };
    rec(rec, 0);
    if (!r.tuples.empty()) m.relations.push_back(std::move(r));
  }
  validate_model(m);
  return m;
}

void validate_souslin_witness(const SouslinFamily& f, const SouslinWitness& w) {
  validate_souslin(f);
  check_points(w.points, f.depth, 2, "souslin witness");
  const std::size_t n = w.points.size();
  if (w.labels.size() != n)
    throw input_error("souslin witness: label matrix must be square over the points");
  for (const auto& row : w.labels)
    if (row.size() != n)
      throw input_error("souslin witness: label matrix must be square over the points");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::string& lab = w.labels[i][j];
      if (static_cast<int>(lab.size()) != f.depth || !is_digit_string(lab, f.kappa))
        throw input_error("souslin witness: bad label for (" + w.points[i] + "," +
                          w.points[j] + ")");
      for (int k = 0; k <= f.depth; ++k)
        if (!f.tree.count({w.points[i].substr(0, static_cast<std::size_t>(k)),
                           w.points[j].substr(0, static_cast<std::size_t>(k)),
                           lab.substr(0, static_cast<std::size_t>(k))}))
          throw input_error("souslin witness: triple for (" + w.points[i] + "," +
                            w.points[j] + ") leaves the tree at level " + std::to_string(k));
    }
}

FiniteModel induced_model_souslin(const SouslinFamily& f, const SouslinWitness& w) {
  validate_souslin_witness(f, w);
  const int npts = static_cast<int>(w.points.size());
  FiniteModel m;
  m.universe = npts;
  m.max_arity = std::max(default_max_arity, 2);

  std::set<std::pair<std::string, std::string>> unary;    // (eta prefix, label prefix)
  std::set<std::array<std::string, 3>> binary;
  for (int l = 0; l < f.depth; ++l)
    for (int i = 0; i < npts; ++i)
      for (int j = 0; j < npts; ++j) {
        std::string pi = w.points[static_cast<std::size_t>(i)].substr(0, static_cast<std::size_t>(l));
        std::string pj = w.points[static_cast<std::size_t>(j)].substr(0, static_cast<std::size_t>(l));
        std::string lab =
            w.labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].substr(
                0, static_cast<std::size_t>(l));
        if (i == j) unary.insert({pi, lab});
        binary.insert({pi, pj, lab});
      }

  int serial = 0;
  for (const auto& [nu0, nu] : unary) {
    Relation r;
    r.name = "sq" + std::to_string(nu0.size()) + "_" + std::to_string(serial++);
    r.arity = 1;
    for (int a = 0; a < npts; ++a)
      if (is_prefix(nu0, w.points[static_cast<std::size_t>(a)]) &&
          is_prefix(nu, w.labels[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)]))
        r.tuples.insert({a});
    if (!r.tuples.empty()) m.relations.push_back(std::move(r));
  }
  serial = 0;
  for (const auto& [nu0, nu1, nu] : binary) {
    Relation r;
    r.name = "sr" + std::to_string(nu0.size()) + "_" + std::to_string(serial++);
    r.arity = 2;
    for (int a = 0; a < npts; ++a)
      for (int b = 0; b < npts; ++b)
        if (is_prefix(nu0, w.points[static_cast<std::size_t>(a)]) &&
            is_prefix(nu1, w.points[static_cast<std::size_t>(b)]) &&
            is_prefix(nu, w.labels[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]))
          r.tuples.insert({a, b});
    if (!r.tuples.empty()) m.relations.push_back(std::move(r));
  }
  validate_model(m);
  return m;
}

TwoSortedModel induced_twosorted_from_rectangle(const std::vector<RectTree>& trees,
                                                const RectWitness& w) {
  if (trees.empty()) throw input_error("at least one tree is required");
  const int depth = trees[0].depth;
  const int branching = trees[0].branching;
  for (const RectTree& t : trees) {
    validate_rect_tree(t);
    if (t.depth != depth || t.branching != branching)
      throw input_error("all trees must share depth and branching");
  }
  check_points(w.left, depth, branching, "left witness");
  check_points(w.right, depth, branching, "right witness");

  const int nl = static_cast<int>(w.left.size());
  const int nr = static_cast<int>(w.right.size());
  std::vector<std::vector<int>> color(static_cast<std::size_t>(nl),
                                      std::vector<int>(static_cast<std::size_t>(nr), -1));
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nr; ++j) {
      for (int t = 0; t < static_cast<int>(trees.size()); ++t)
        if (trees[static_cast<std::size_t>(t)].pair_in(w.left[static_cast<std::size_t>(i)],
                                                       w.right[static_cast<std::size_t>(j)])) {
          color[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t;
          break;
        }
      if (color[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < 0)
        throw input_error("cross pair (" + w.left[static_cast<std::size_t>(i)] + "," +
                          w.right[static_cast<std::size_t>(j)] + ") is in no tree");
    }

  TwoSortedModel m;
  m.base.universe = nl + nr;
  m.base.max_arity = std::max(default_max_arity, 2);
  for (int i = 0; i < nl; ++i) m.sort1.push_back(i);
  for (int j = 0; j < nr; ++j) m.sort2.push_back(nl + j);
  m.colors = color;

  std::set<std::string> lpref, rpref;
  std::set<std::pair<std::pair<std::string, std::string>, int>> crosses;
  for (int l = 0; l < depth; ++l) {
    for (int i = 0; i < nl; ++i)
      lpref.insert(w.left[static_cast<std::size_t>(i)].substr(0, static_cast<std::size_t>(l)));
    for (int j = 0; j < nr; ++j)
      rpref.insert(w.right[static_cast<std::size_t>(j)].substr(0, static_cast<std::size_t>(l)));
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nr; ++j)
        crosses.insert(
            {{w.left[static_cast<std::size_t>(i)].substr(0, static_cast<std::size_t>(l)),
              w.right[static_cast<std::size_t>(j)].substr(0, static_cast<std::size_t>(l))},
             color[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
  }
  int serial = 0;
  for (const std::string& p : lpref) {
    Relation r{"lp" + std::to_string(p.size()) + "_" + std::to_string(serial++), 1, {}};
    for (int i = 0; i < nl; ++i)
      if (is_prefix(p, w.left[static_cast<std::size_t>(i)])) r.tuples.insert({i});
    m.base.relations.push_back(std::move(r));
  }
  serial = 0;
  for (const std::string& p : rpref) {
    Relation r{"rp" + std::to_string(p.size()) + "_" + std::to_string(serial++), 1, {}};
    for (int j = 0; j < nr; ++j)
      if (is_prefix(p, w.right[static_cast<std::size_t>(j)])) r.tuples.insert({nl + j});
    m.base.relations.push_back(std::move(r));
  }
  serial = 0;
  for (const auto& [pp, t] : crosses) {
    Relation r{"g" + std::to_string(pp.first.size()) + "_" + std::to_string(serial++), 2, {}};
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nr; ++j)
        if (is_prefix(pp.first, w.left[static_cast<std::size_t>(i)]) &&
            is_prefix(pp.second, w.right[static_cast<std::size_t>(j)]) &&
            color[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == t)
          r.tuples.insert({i, nl + j});
    if (!r.tuples.empty()) m.base.relations.push_back(std::move(r));
  }
  validate_two_sorted(m);
  return m;
}

FiniteModel coloring_to_model(const PairColoring& c) {
  validate_coloring(c);
  FiniteModel m;
  m.universe = c.size;
  std::set<int> used(c.colors.begin(), c.colors.end());
  for (int col : used) {
    Relation r{"col" + std::to_string(col), 2, {}};
    for (int a = 0; a < c.size; ++a)
      for (int b = 0; b < c.size; ++b)
        if (a != b && c.at(a, b) == col) r.tuples.insert({a, b});
    m.relations.push_back(std::move(r));
  }
  validate_model(m);
  return m;
}

}  // namespace sqdeg
