#pragma once

#include <map>
#include <string>
#include <vector>

#include "sqdeg/trees.hpp"

namespace sqdeg {

// Node set at one level plus a total tree-index map on its ordered pairs.
struct PfapEntry {
  std::vector<std::string> u;           // sorted, equal lengths
  std::vector<std::vector<int>> g;      // |u| x |u| tree indices

  int level() const { return u.empty() ? 0 : static_cast<int>(u[0].size()); }
};

PfapEntry root_entry(int tree_index);
void validate_entry(const TreeFamily& f, const PfapEntry& e);

// Souslin analogue: label strings on ordered pairs.
struct SouslinEntry {
  std::vector<std::string> u;
  std::vector<std::vector<std::string>> f;  // |u| x |u| label strings

  int level() const { return u.empty() ? 0 : static_cast<int>(u[0].size()); }
};

SouslinEntry souslin_root_entry();
void validate_souslin_entry(const SouslinFamily& fam, const SouslinEntry& e);

// Exact truncated square degree of an entry. Bottom when some pair is outside
// its tree; otherwise 1 + min over split nodes of the best extension value,
// where extensions live at strictly higher levels within the depth.
class DegsqEngine {
 public:
  explicit DegsqEngine(const TreeFamily& f);
  DegValue value(const PfapEntry& e);

 private:
  const TreeFamily& fam_;
  std::map<std::string, int> memo_;
  int eval(const PfapEntry& e);
  int attain(const PfapEntry& e, int split);
};

DegValue degsq_pair(const TreeFamily& f, const PfapEntry& e);

// Family degree: 1 + max over valid root entries (one per tree index); the
// degree of any entry is dominated by a root singleton, so the supremum over
// all of pfap collapses to the root entries. Fin(0) when no tree holds the
// root pair.
DegValue degsq_family(const TreeFamily& f);

DegValue degsq_souslin(const SouslinFamily& f, const SouslinEntry& e);
DegValue degsq_souslin_family(const SouslinFamily& f);

// Rectangle degree; strict mode freezes every node except the split one.
// Permissive mode lets same-side companions move independently (the two
// readings of the frozen-side clause).
struct DegrcOptions {
  bool permissive = false;
};

DegValue degrc(const RectTree& t, const std::vector<std::string>& u1,
               const std::vector<std::string>& u2, const DegrcOptions& opt = {});

struct GrowthReport {
  std::vector<DegValue> by_depth;  // degsq_family of the depth-k restriction
  bool flagged = false;            // value at max depth >= depth - 1
};

GrowthReport classify_growth(const TreeFamily& f, int max_depth);

}  // namespace sqdeg
