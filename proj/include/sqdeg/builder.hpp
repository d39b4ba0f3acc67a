#pragma once

#include <map>
#include <string>
#include <vector>

#include "sqdeg/trees.hpp"

namespace sqdeg {

// One active node of the staged construction: a node set with its pair labels,
// a degree budget, and a strictly decreasing history tag.
struct BuildNode {
  std::vector<std::string> u;             // current (padded) node set, sorted
  std::map<std::pair<std::string, std::string>, int> labels;
  int budget = 0;                         // alpha tag
  std::vector<int> history;               // strictly decreasing
};

struct BuildStage {
  int level = 0;
  std::vector<BuildNode> nodes;  // snapshot after the stage
};

struct BuildResult {
  TreeFamily family;
  int stages_used = 0;
  int produced_depth = 0;
  int tree_count = 0;
  std::vector<BuildStage> trace;  // one snapshot per stage, for the structural checks
};

// Staged construction with a FIFO work queue: every (node, beta, split-node)
// demand with beta below the node's budget is served once; each service opens
// two fresh levels and two fresh labels for the new sibling pair. The family
// degree of the output equals alpha.
// Throws input_error on alpha < 0; reports insufficient budget with the
// residual queue size.
struct budget_error : std::runtime_error {
  int residual;
  budget_error(const std::string& msg, int left)
      : std::runtime_error(msg), residual(left) {}
};

BuildResult build_family(int alpha, int stage_budget);

// test fixtures
TreeFamily canned_diagonal(int depth, int tree_count = 1);
TreeFamily canned_full(int depth, int tree_count = 1);

}  // namespace sqdeg
