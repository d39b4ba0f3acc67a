#include "sqdeg/coloring.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sqdeg/encode.hpp"

namespace sqdeg {

int PairColoring::at(int a, int b) const {
  if (a == b) return 0;  // diagonal convention; never enters patterns
  if (a > b) std::swap(a, b);
  // index of (a,b) in the flat upper triangle
  int idx = a * size - a * (a + 1) / 2 + (b - a - 1);
  return colors[static_cast<std::size_t>(idx)];
}

void validate_coloring(const PairColoring& c) {
  if (c.size < 1) throw input_error("coloring size must be >= 1");
  std::size_t expect = static_cast<std::size_t>(c.size) *
                       static_cast<std::size_t>(c.size - 1) / 2;
  if (c.colors.size() != expect)
    throw input_error("coloring must list exactly n(n-1)/2 upper-triangle colors");
  for (int v : c.colors)
    if (v < 0) throw input_error("colors must be nonnegative");
}

PairColoring restrict_coloring(const PairColoring& c, const std::vector<int>& subset) {
  validate_coloring(c);
  if (subset.empty()) throw input_error("restriction subset must be nonempty");
  std::vector<int> elems = subset;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (int e : elems)
    if (e < 0 || e >= c.size) throw input_error("restriction element out of range");
  PairColoring out;
  out.size = static_cast<int>(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      out.colors.push_back(c.at(elems[i], elems[j]));
  return out;
}

namespace {

// upper-triangle colors of the tuple under the coloring
std::vector<int> pattern_of(const PairColoring& c, const std::vector<int>& tuple) {
  std::vector<int> pat;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      pat.push_back(c.at(tuple[static_cast<std::size_t>(i)], tuple[j]));
  return pat;
}

std::vector<int> canonical_pattern(std::vector<int> pat, int p) {
  std::vector<int> perm(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<int> best = pat;
  std::vector<int> probe(pat.size());
  auto cell = [p](int a, int b) {
    if (a > b) std::swap(a, b);
    return a * p - a * (a + 1) / 2 + (b - a - 1);
  };
  do {
    std::size_t idx = 0;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        probe[idx++] = pat[static_cast<std::size_t>(
            cell(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]))];
    if (probe < best) best = probe;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// does the target realize the pattern with pairwise-distinct elements?
bool realizes(const PairColoring& target, const std::vector<int>& pat, int p) {
  std::vector<int> cur;
  auto cell = [p](int i, int j) { return i * p - i * (i + 1) / 2 + (j - i - 1); };
  auto rec = [&](auto&& self) -> bool {
    const int i = static_cast<int>(cur.size());
    if (i == p) return true;
    for (int x = 0; x < target.size; ++x) {
      if (std::find(cur.begin(), cur.end(), x) != cur.end()) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (target.at(cur[static_cast<std::size_t>(j)], x) !=
            pat[static_cast<std::size_t>(cell(j, i))])
          ok = false;
      if (!ok) continue;
      cur.push_back(x);
      if (self(self)) return true;
      cur.pop_back();
    }
    return false;
  };
  return rec(rec);
}

}  // namespace

EmbedResult embeds_patterns(const PairColoring& target, const PairColoring& source,
                            int max_pattern) {
  validate_coloring(target);
  validate_coloring(source);
  if (max_pattern < 1 || max_pattern > source.size)
    throw input_error("max_pattern must be in [1, source size]");
  EmbedResult res;
  res.per_size_counts.assign(static_cast<std::size_t>(max_pattern) + 1, 0);
  for (int p = 1; p <= max_pattern; ++p) {
    if (p > source.size) break;
    std::set<std::vector<int>> seen;
    // combinations of p source elements; order is absorbed by canonicalization
    std::vector<int> comb(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<int> pat = canonical_pattern(pattern_of(source, comb), p);
      if (seen.insert(pat).second) {
        ++res.per_size_counts[static_cast<std::size_t>(p)];
        bool ok = p == 1 ? target.size >= 1 : realizes(target, pat, p);
        if (!ok) {
          res.embeds = false;
          res.failing_tuple = comb;
          res.failing_pattern = pat;
          return res;
        }
      }
      int pos = p - 1;
      while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == source.size - p + pos) --pos;
      if (pos < 0) break;
      ++comb[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < p; ++i)
        comb[static_cast<std::size_t>(i)] = comb[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return res;
}

int rank_of_coloring(const PairColoring& c, const RankParams& p) {
  return model_rank(coloring_to_model(c), p);
}

}  // namespace sqdeg
