#include "sqdeg/treedeg.hpp"

#include <algorithm>

namespace sqdeg {

namespace {
constexpr int neg_inf = -1000000;

std::string encode_entry(const std::vector<std::string>& u,
                         const std::vector<std::vector<int>>& g) {
  std::string key;
  for (const auto& s : u) {
    key += s;
    key += ';';
  }
  key += '|';
  for (const auto& row : g)
    for (int v : row) {
      key += std::to_string(v);
      key += ',';
    }
  return key;
}

}  // namespace

PfapEntry root_entry(int tree_index) {
  PfapEntry e;
  e.u = {""};
  e.g = {{tree_index}};
  return e;
}

void validate_entry(const TreeFamily& f, const PfapEntry& e) {
  if (e.u.empty()) throw input_error("entry node set must be nonempty");
  const std::size_t n = e.u.size();
  for (const auto& s : e.u) {
    if (s.size() != e.u[0].size()) throw input_error("entry nodes must share a level");
    if (static_cast<int>(s.size()) > f.depth)
      throw input_error("entry level exceeds the family depth");
    if (!is_digit_string(s, 2)) throw input_error("entry node is not a bitstring");
  }
  if (!std::is_sorted(e.u.begin(), e.u.end()) ||
      std::adjacent_find(e.u.begin(), e.u.end()) != e.u.end())
    throw input_error("entry nodes must be sorted and distinct");
  if (e.g.size() != n) throw input_error("entry map must be a square matrix over the nodes");
  for (const auto& row : e.g) {
    if (row.size() != n) throw input_error("entry map must be a square matrix over the nodes");
    for (int v : row)
      if (v < 0) throw input_error("entry map values must be nonnegative tree indices");
  }
}

DegsqEngine::DegsqEngine(const TreeFamily& f) : fam_(f) {}

DegValue DegsqEngine::value(const PfapEntry& e) {
  validate_entry(fam_, e);
  for (std::size_t i = 0; i < e.u.size(); ++i)
    for (std::size_t j = 0; j < e.u.size(); ++j)
      if (!fam_.pair_in(e.g[i][j], e.u[i], e.u[j])) return DegValue::bottom();
  return DegValue::of(eval(e));
}

int DegsqEngine::eval(const PfapEntry& e) {
  std::string key = encode_entry(e.u, e.g);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  memo_[key] = -1;  // levels strictly increase, so no cycle; placeholder
  int worst = 1000000;
  for (int split = 0; split < static_cast<int>(e.u.size()) && worst > neg_inf; ++split)
    worst = std::min(worst, attain(e, split));
  int result = worst <= neg_inf ? -1 : 1 + worst;
  memo_[key] = result;
  return result;
}

namespace {

// pairs of T whose first component extends `prefix`; contiguous block in the
// lexicographic pair order
template <typename Fn>
void scan_first_extends(const std::set<std::pair<std::string, std::string>>& tree,
                        const std::string& prefix, Fn&& fn) {
  for (auto it = tree.lower_bound({prefix, ""});
       it != tree.end() && is_prefix(prefix, it->first); ++it)
    fn(it->first, it->second);
}

}  // namespace

int DegsqEngine::attain(const PfapEntry& e, int split) {
  const int n = e.level();
  const int k = static_cast<int>(e.u.size());
  const std::string& su = e.u[static_cast<std::size_t>(split)];
  const int sdiag = e.g[static_cast<std::size_t>(split)][static_cast<std::size_t>(split)];
  int best = neg_inf;

  // the new sibling pair drives the search: it must sit in some tree, and in
  // the sparse families those pairs are rare
  for (int t01 = 0; t01 < static_cast<int>(fam_.trees.size()); ++t01) {
    scan_first_extends(
        fam_.trees[static_cast<std::size_t>(t01)], su,
        [&](const std::string& x, const std::string& y) {
          const int m = static_cast<int>(x.size());
          if (m <= n || m > fam_.depth) return;
          if (x == y || !is_prefix(su, y)) return;
          if (!fam_.pair_in(sdiag, x, x) || !fam_.pair_in(sdiag, y, y)) return;

          // images of the frozen nodes, anchored on scans against x
          std::vector<std::string> h0(static_cast<std::size_t>(k));
          h0[static_cast<std::size_t>(split)] = x;

          auto cross_ok = [&](int i, const std::string& xi, int j, const std::string& xj) {
            return fam_.pair_in(
                       e.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], xi,
                       xj) &&
                   fam_.pair_in(
                       e.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], xj,
                       xi);
          };

          auto finish = [&] {
            for (int t10 = 0; t10 < static_cast<int>(fam_.trees.size()); ++t10) {
              if (!fam_.pair_in(t10, y, x)) continue;
              std::vector<std::string> nu = h0;
              nu.push_back(y);
              std::sort(nu.begin(), nu.end());
              auto parent_of = [&](const std::string& s) {
                std::string p = s.substr(0, static_cast<std::size_t>(n));
                for (int i = 0; i < k; ++i)
                  if (e.u[static_cast<std::size_t>(i)] == p) return i;
                return -1;
              };
              PfapEntry ne;
              ne.u = nu;
              ne.g.assign(nu.size(), std::vector<int>(nu.size(), 0));
              for (std::size_t a = 0; a < nu.size(); ++a)
                for (std::size_t b = 0; b < nu.size(); ++b) {
                  if (nu[a] == x && nu[b] == y)
                    ne.g[a][b] = t01;
                  else if (nu[a] == y && nu[b] == x)
                    ne.g[a][b] = t10;
                  else
                    ne.g[a][b] = e.g[static_cast<std::size_t>(parent_of(nu[a]))]
                                    [static_cast<std::size_t>(parent_of(nu[b]))];
                }
              best = std::max(best, eval(ne));
            }
          };

          auto assign = [&](auto&& self, int i) -> void {
            if (i == k) {
              finish();
              return;
            }
            if (i == split) {
              self(self, i + 1);
              return;
            }
            // candidates from the tree pairing the split node with node i
            const auto& anchor_tree = fam_.trees[static_cast<std::size_t>(
                e.g[static_cast<std::size_t>(split)][static_cast<std::size_t>(i)])];
            for (auto it = anchor_tree.lower_bound({x, ""});
                 it != anchor_tree.end() && it->first == x; ++it) {
              const std::string& cand = it->second;
              if (static_cast<int>(cand.size()) != m ||
                  !is_prefix(e.u[static_cast<std::size_t>(i)], cand))
                continue;
              if (!fam_.pair_in(e.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)],
                                cand, cand))
                continue;
              if (!fam_.pair_in(
                      e.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(split)],
                      cand, x))
                continue;
              // the second split image behaves like the first for the crosses
              if (!fam_.pair_in(
                      e.g[static_cast<std::size_t>(split)][static_cast<std::size_t>(i)], y,
                      cand) ||
                  !fam_.pair_in(
                      e.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(split)],
                      cand, y))
                continue;
              bool ok = true;
              for (int j = 0; j < i && ok; ++j)
                if (j != split && !cross_ok(i, cand, j, h0[static_cast<std::size_t>(j)]))
                  ok = false;
              if (!ok) continue;
              h0[static_cast<std::size_t>(i)] = cand;
              self(self, i + 1);
            }
          };
          assign(assign, 0);
        });
  }
  return best;
}

DegValue degsq_pair(const TreeFamily& f, const PfapEntry& e) {
  validate_family(f);
  DegsqEngine eng(f);
  return eng.value(e);
}

DegValue degsq_family(const TreeFamily& f) {
  validate_family(f);
  DegsqEngine eng(f);
  int best = -1;  // empty sup gives Fin(0)
  for (int t = 0; t < static_cast<int>(f.trees.size()); ++t) {
    DegValue v = eng.value(root_entry(t));
    if (!v.is_bottom) best = std::max(best, v.fin);
  }
  return DegValue::of(best + 1);
}

// ---------------------------------------------------------------------------
// Souslin degrees

SouslinEntry souslin_root_entry() {
  SouslinEntry e;
  e.u = {""};
  e.f = {{""}};
  return e;
}

void validate_souslin_entry(const SouslinFamily& fam, const SouslinEntry& e) {
  if (e.u.empty()) throw input_error("entry node set must be nonempty");
  const std::size_t n = e.u.size();
  for (const auto& s : e.u) {
    if (s.size() != e.u[0].size()) throw input_error("entry nodes must share a level");
    if (static_cast<int>(s.size()) > fam.depth)
      throw input_error("entry level exceeds the depth");
    if (!is_digit_string(s, 2)) throw input_error("entry node is not a bitstring");
  }
  if (!std::is_sorted(e.u.begin(), e.u.end()) ||
      std::adjacent_find(e.u.begin(), e.u.end()) != e.u.end())
    throw input_error("entry nodes must be sorted and distinct");
  if (e.f.size() != n) throw input_error("label map must be a square matrix");
  for (const auto& row : e.f) {
    if (row.size() != n) throw input_error("label map must be a square matrix");
    for (const auto& lab : row) {
      if (lab.size() != e.u[0].size())
        throw input_error("label strings must have the entry's level");
      if (!is_digit_string(lab, fam.kappa))
        throw input_error("label string outside the alphabet");
    }
  }
}

namespace {

std::string encode_souslin(const std::vector<std::string>& u,
                           const std::vector<std::vector<std::string>>& f) {
  std::string key;
  for (const auto& s : u) {
    key += s;
    key += ';';
  }
  key += '|';
  for (const auto& row : f)
    for (const auto& lab : row) {
      key += lab;
      key += ',';
    }
  return key;
}

struct SouslinEngine {
  const SouslinFamily& fam;
  std::map<std::string, int> memo;

  bool in_tree(const std::string& a, const std::string& b, const std::string& lab) const {
    return fam.tree.count({a, b, lab}) != 0;
  }

  // labels available for the pair (a,b) at its level, optionally extending a
  // required prefix
  std::vector<std::string> labels_for(const std::string& a, const std::string& b,
                                      const std::string& grow) const {
    std::vector<std::string> out;
    auto lo = fam.tree.lower_bound({a, b, ""});
    for (auto it = lo; it != fam.tree.end() && (*it)[0] == a && (*it)[1] == b; ++it)
      if (grow.empty() || is_prefix(grow, (*it)[2])) out.push_back((*it)[2]);
    return out;
  }

  int eval(const SouslinEntry& e) {
    std::string key = encode_souslin(e.u, e.f);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    memo[key] = -1;
    int worst = 1000000;
    for (int split = 0; split < static_cast<int>(e.u.size()) && worst > neg_inf; ++split)
      worst = std::min(worst, attain(e, split));
    int result = worst <= neg_inf ? -1 : 1 + worst;
    memo[key] = result;
    return result;
  }

  int attain(const SouslinEntry& e, int split) {
    const int n = e.level();
    const int k = static_cast<int>(e.u.size());
    int best = neg_inf;
    for (int m = n + 1; m <= fam.depth; ++m) {
      // candidate images: the diagonal label must extend the parent's
      std::vector<std::vector<std::string>> ext(static_cast<std::size_t>(k));
      bool feasible = true;
      for (int i = 0; i < k && feasible; ++i) {
        for (const std::string& tail : all_strings(2, m - n)) {
          std::string x = e.u[static_cast<std::size_t>(i)] + tail;
          if (!labels_for(x, x, e.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)])
                   .empty())
            ext[static_cast<std::size_t>(i)].push_back(x);
        }
        if (ext[static_cast<std::size_t>(i)].empty()) feasible = false;
        if (i == split && ext[static_cast<std::size_t>(i)].size() < 2) feasible = false;
      }
      if (!feasible) continue;

      std::vector<std::string> h0(static_cast<std::size_t>(k));
      auto pair_growth = [&](int i, const std::string& xi, int j, const std::string& xj) {
        return !labels_for(xi, xj, e.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    .empty() &&
               !labels_for(xj, xi, e.f[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                    .empty();
      };

      auto finish = [&](const std::string& h1) {
        const std::string& h0s = h0[static_cast<std::size_t>(split)];
        std::vector<std::string> nu;
        for (const auto& x : h0) nu.push_back(x);
        nu.push_back(h1);
        std::sort(nu.begin(), nu.end());
        auto parent_of = [&](const std::string& x) {
          std::string p = x.substr(0, static_cast<std::size_t>(n));
          for (int i = 0; i < k; ++i)
            if (e.u[static_cast<std::size_t>(i)] == p) return i;
          return -1;
        };
        const std::size_t sz = nu.size();
        // per-pair label candidates; sibling cross pairs grow from nothing
        std::vector<std::vector<std::string>> cand(sz * sz);
        for (std::size_t a = 0; a < sz; ++a)
          for (std::size_t b = 0; b < sz; ++b) {
            std::string grow;
            if ((nu[a] == h0s && nu[b] == h1) || (nu[a] == h1 && nu[b] == h0s)) {
              grow = "";
            } else {
              int pa = parent_of(nu[a]), pb = parent_of(nu[b]);
              grow = e.f[static_cast<std::size_t>(pa)][static_cast<std::size_t>(pb)];
            }
            cand[a * sz + b] = labels_for(nu[a], nu[b], grow);
            if (cand[a * sz + b].empty()) return;
          }
        SouslinEntry ne;
        ne.u = nu;
        ne.f.assign(sz, std::vector<std::string>(sz));
        auto pick = [&](auto&& self, std::size_t cell) -> void {
          if (cell == sz * sz) {
            best = std::max(best, eval(ne));
            return;
          }
          for (const std::string& lab : cand[cell]) {
            ne.f[cell / sz][cell % sz] = lab;
            self(self, cell + 1);
          }
        };
        pick(pick, 0);
      };

      auto assign = [&](auto&& self, int i) -> void {
        if (i == k) {
          for (const std::string& h1 : ext[static_cast<std::size_t>(split)]) {
            if (h1 == h0[static_cast<std::size_t>(split)]) continue;
            bool ok = true;
            for (int j = 0; j < k && ok; ++j)
              if (j != split && !pair_growth(split, h1, j, h0[static_cast<std::size_t>(j)]))
                ok = false;
            if (ok) finish(h1);
          }
          return;
        }
        for (const std::string& x : ext[static_cast<std::size_t>(i)]) {
          bool ok = true;
          for (int j = 0; j < i && ok; ++j)
            if (!pair_growth(i, x, j, h0[static_cast<std::size_t>(j)])) ok = false;
          if (!ok) continue;
          h0[static_cast<std::size_t>(i)] = x;
          self(self, i + 1);
        }
      };
      assign(assign, 0);
    }
    return best;
  }
};

}  // namespace

DegValue degsq_souslin(const SouslinFamily& f, const SouslinEntry& e) {
  validate_souslin(f);
  validate_souslin_entry(f, e);
  for (std::size_t i = 0; i < e.u.size(); ++i)
    for (std::size_t j = 0; j < e.u.size(); ++j)
      if (!f.tree.count({e.u[i], e.u[j], e.f[i][j]})) return DegValue::bottom();
  SouslinEngine eng{f, {}};
  return DegValue::of(eng.eval(e));
}

DegValue degsq_souslin_family(const SouslinFamily& f) {
  return degsq_souslin(f, souslin_root_entry());
}

// ---------------------------------------------------------------------------
// Rectangle degrees

namespace {

struct DegrcEngine {
  const RectTree& tree;
  DegrcOptions opt;
  std::map<std::string, int> memo;

  bool valid(const std::vector<std::string>& u1, const std::vector<std::string>& u2) const {
    for (const auto& a : u1)
      for (const auto& b : u2)
        if (!tree.pair_in(a, b)) return false;
    return true;
  }

  int eval(const std::vector<std::string>& u1, const std::vector<std::string>& u2) {
    std::string key;
    for (const auto& s : u1) key += s + ";";
    key += "|";
    for (const auto& s : u2) key += s + ";";
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    memo[key] = -1;
    int worst = 1000000;
    for (int side = 0; side < 2 && worst > neg_inf; ++side) {
      const auto& uk = side == 0 ? u1 : u2;
      for (const auto& star : uk) {
        worst = std::min(worst, attain(u1, u2, side, star));
        if (worst <= neg_inf) break;
      }
    }
    int result = worst <= neg_inf ? -1 : 1 + worst;
    memo[key] = result;
    return result;
  }

  int attain(const std::vector<std::string>& u1, const std::vector<std::string>& u2,
             int side, const std::string& star) {
    const int n = static_cast<int>(star.size());
    int best = neg_inf;

    std::vector<std::string> nodes;
    for (const auto& s : u1) nodes.push_back(s);
    for (const auto& s : u2)
      if (std::find(nodes.begin(), nodes.end(), s) == nodes.end()) nodes.push_back(s);
    std::sort(nodes.begin(), nodes.end());
    const std::size_t nn = nodes.size();
    std::vector<bool> in1(nn), in2(nn), moving(nn);
    for (std::size_t i = 0; i < nn; ++i) {
      in1[i] = std::find(u1.begin(), u1.end(), nodes[i]) != u1.end();
      in2[i] = std::find(u2.begin(), u2.end(), nodes[i]) != u2.end();
      bool on_split_side = side == 0 ? in1[i] : in2[i];
      bool on_other = side == 0 ? in2[i] : in1[i];
      // strict mode freezes everything but the split node, whose two images
      // feed every side it occurs on; permissive mode also frees same-side
      // companions
      moving[i] = nodes[i] == star || (opt.permissive && on_split_side && !on_other);
    }

    for (int m = n + 1; m <= tree.depth; ++m) {
      std::vector<std::string> tails = all_strings(tree.branching, m - n);
      std::vector<std::vector<std::string>> image(nn);

      auto images_ok = [&](std::size_t idx) {
        // cross pairs between idx's images and everything assigned so far
        for (std::size_t j = 0; j <= idx; ++j)
          for (const auto& x : image[idx])
            for (const auto& y : image[j]) {
              if (in1[idx] && in2[j] && !tree.pair_in(x, y)) return false;
              if (in1[j] && in2[idx] && !tree.pair_in(y, x)) return false;
            }
        return true;
      };

      auto build = [&](auto&& self, std::size_t idx) -> void {
        if (idx == nn) {
          std::vector<std::string> v1, v2;
          for (std::size_t i = 0; i < nn; ++i)
            for (const auto& img : image[i]) {
              if (in1[i]) v1.push_back(img);
              if (in2[i]) v2.push_back(img);
            }
          std::sort(v1.begin(), v1.end());
          v1.erase(std::unique(v1.begin(), v1.end()), v1.end());
          std::sort(v2.begin(), v2.end());
          v2.erase(std::unique(v2.begin(), v2.end()), v2.end());
          best = std::max(best, eval(v1, v2));
          return;
        }
        if (!moving[idx]) {
          for (const auto& tail : tails) {
            image[idx] = {nodes[idx] + tail};
            if (images_ok(idx)) self(self, idx + 1);
          }
          return;
        }
        bool is_star = nodes[idx] == star;
        for (std::size_t a = 0; a < tails.size(); ++a)
          for (std::size_t b = is_star ? a + 1 : a; b < tails.size(); ++b) {
            image[idx] = {nodes[idx] + tails[a], nodes[idx] + tails[b]};
            if (image[idx][0] == image[idx][1]) image[idx].pop_back();
            if (images_ok(idx)) self(self, idx + 1);
          }
      };
      build(build, 0);
    }
    return best;
  }
};

}  // namespace

DegValue degrc(const RectTree& t, const std::vector<std::string>& u1,
               const std::vector<std::string>& u2, const DegrcOptions& opt) {
  validate_rect_tree(t);
  if (u1.empty() || u2.empty()) throw input_error("both sides must be nonempty");
  std::vector<std::string> s1 = u1, s2 = u2;
  std::sort(s1.begin(), s1.end());
  s1.erase(std::unique(s1.begin(), s1.end()), s1.end());
  std::sort(s2.begin(), s2.end());
  s2.erase(std::unique(s2.begin(), s2.end()), s2.end());
  std::size_t len = s1[0].size();
  for (const auto& s : s1)
    if (s.size() != len) throw input_error("side nodes must share a level");
  for (const auto& s : s2)
    if (s.size() != len) throw input_error("side nodes must share a level");
  if (static_cast<int>(len) > t.depth) throw input_error("level exceeds the tree depth");
  for (const auto& s : s1)
    if (!is_digit_string(s, t.branching)) throw input_error("node outside the alphabet");
  for (const auto& s : s2)
    if (!is_digit_string(s, t.branching)) throw input_error("node outside the alphabet");
  DegrcEngine eng{t, opt, {}};
  if (!eng.valid(s1, s2)) return DegValue::bottom();
  return DegValue::of(eng.eval(s1, s2));
}

GrowthReport classify_growth(const TreeFamily& f, int max_depth) {
  validate_family(f);
  if (max_depth < 0) throw input_error("max_depth must be >= 0");
  GrowthReport r;
  for (int k = 0; k <= max_depth; ++k)
    r.by_depth.push_back(degsq_family(restrict_family(f, std::min(k, f.depth))));
  r.flagged = !r.by_depth.back().is_bottom && r.by_depth.back().fin >= max_depth - 1;
  return r;
}

}  // namespace sqdeg
