#include "sqdeg/builder.hpp"

#include <algorithm>
#include <deque>

namespace sqdeg {

namespace {

struct Demand {
  int node;           // index into the node table
  int beta;           // budget of the child to create
  std::string split;  // original node id; its padded descendant is split
};

std::string zeros(int n) { return std::string(static_cast<std::size_t>(n), '0'); }

}  // namespace

BuildResult build_family(int alpha, int stage_budget) {
  if (alpha < 0) throw input_error("alpha must be >= 0");
  if (stage_budget < 1)
    throw budget_error("insufficient budget: the root stage alone needs 1 unit", 1);

  std::vector<BuildNode> nodes;
  std::deque<Demand> queue;
  int level = 0;
  int next_label = 1;
  BuildResult res;

  auto enqueue_all = [&](int node_idx) {
    const BuildNode& x = nodes[static_cast<std::size_t>(node_idx)];
    for (int beta = 0; beta < x.budget; ++beta)
      for (const std::string& s : x.u) queue.push_back({node_idx, beta, s});
  };

  {
    BuildNode root;
    root.u = {""};
    root.labels[{"", ""}] = 0;
    root.budget = alpha;
    nodes.push_back(root);
    enqueue_all(0);
  }
  int stages = 1;
  res.trace.push_back({level, nodes});

  while (!queue.empty()) {
    if (stages >= stage_budget)
      throw budget_error("insufficient budget: " + std::to_string(queue.size()) +
                             " demands left after " + std::to_string(stages) + " stages",
                         static_cast<int>(queue.size()));
    Demand d = queue.front();
    queue.pop_front();

    // parent state in the current coordinates
    BuildNode parent = nodes[static_cast<std::size_t>(d.node)];
    std::string split_now = d.split + zeros(level - static_cast<int>(d.split.size()));

    // two fresh levels: one image per parent node, two for the split node;
    // non-zero images leave the zero rails so distinct sets meet only there
    const std::string zl = zeros(level);
    BuildNode child;
    child.budget = d.beta;
    child.history = parent.history;
    child.history.push_back(d.beta);
    std::pair<std::string, std::string> sib;
    auto images_of = [&](const std::string& s) -> std::vector<std::string> {
      if (s == split_now)
        return s == zl ? std::vector<std::string>{s + "00", s + "10"}
                       : std::vector<std::string>{s + "10", s + "11"};
      return {s + (s == zl ? "00" : "01")};
    };
    {
      auto two = images_of(split_now);
      sib = {two[0], two[1]};
    }
    for (const std::string& s : parent.u)
      for (const std::string& img : images_of(s)) child.u.push_back(img);
    std::sort(child.u.begin(), child.u.end());

    int lab01 = next_label++;
    int lab10 = next_label++;
    for (const std::string& a : child.u)
      for (const std::string& b : child.u) {
        if (a == sib.first && b == sib.second) {
          child.labels[{a, b}] = lab01;
        } else if (a == sib.second && b == sib.first) {
          child.labels[{a, b}] = lab10;
        } else {
          std::string pa = a.substr(0, static_cast<std::size_t>(level));
          std::string pb = b.substr(0, static_cast<std::size_t>(level));
          child.labels[{a, b}] = parent.labels.at({pa, pb});
        }
      }

    // pad every existing set with zeros and admit the child
    for (BuildNode& x : nodes) {
      std::vector<std::string> nu;
      std::map<std::pair<std::string, std::string>, int> nl;
      for (const auto& s : x.u) nu.push_back(s + "00");
      for (const auto& [pr, lab] : x.labels) nl[{pr.first + "00", pr.second + "00"}] = lab;
      x.u = std::move(nu);
      x.labels = std::move(nl);
    }
    level += 2;
    nodes.push_back(child);
    enqueue_all(static_cast<int>(nodes.size()) - 1);
    ++stages;
    res.trace.push_back({level, nodes});
  }

  // every pair ever labeled survives, zero-padded, in the final snapshot, so
  // the trees are the prefix closures of the final labeled pairs
  TreeFamily fam;
  fam.depth = level;
  fam.trees.resize(static_cast<std::size_t>(next_label));
  for (const BuildNode& x : nodes)
    for (const auto& [pr, lab] : x.labels)
      for (std::size_t cut = 0; cut <= pr.first.size(); ++cut)
        fam.trees[static_cast<std::size_t>(lab)].insert(
            {pr.first.substr(0, cut), pr.second.substr(0, cut)});
  validate_family(fam);

  res.family = std::move(fam);
  res.stages_used = stages;
  res.produced_depth = level;
  res.tree_count = next_label;
  return res;
}

TreeFamily canned_diagonal(int depth, int tree_count) {
  if (depth < 1) throw input_error("depth must be >= 1");
  if (tree_count < 0) throw input_error("tree count must be >= 0");
  TreeFamily f;
  f.depth = depth;
  f.trees.resize(static_cast<std::size_t>(tree_count));
  if (tree_count > 0)
    for (int l = 0; l <= depth; ++l)
      for (const std::string& s : all_strings(2, l)) f.trees[0].insert({s, s});
  return f;
}

TreeFamily canned_full(int depth, int tree_count) {
  if (depth < 1) throw input_error("depth must be >= 1");
  if (tree_count < 0) throw input_error("tree count must be >= 0");
  TreeFamily f;
  f.depth = depth;
  f.trees.resize(static_cast<std::size_t>(tree_count));
  for (int t = 0; t < tree_count; ++t)
    for (int l = 0; l <= depth; ++l)
      for (const std::string& a : all_strings(2, l))
        for (const std::string& b : all_strings(2, l))
          f.trees[static_cast<std::size_t>(t)].insert({a, b});
  return f;
}

}  // namespace sqdeg
