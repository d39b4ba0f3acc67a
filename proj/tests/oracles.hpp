#pragma once

// Independent reference implementations used only by tests: plain recursions
// on the defining clauses, with naive enumeration and their own type
// signatures. They deliberately share no evaluation code with sqdeg_core.

#include <map>
#include <string>
#include <vector>

#include "sqdeg/model.hpp"
#include "sqdeg/rank.hpp"
#include "sqdeg/rectrank.hpp"
#include "sqdeg/treedeg.hpp"
#include "sqdeg/trees.hpp"

namespace oracle {

// string signature of the complete quantifier-free type; built by its own
// loops, not by sqdeg::atomic_type
std::string qf_signature(const sqdeg::FiniteModel& m, const std::vector<int>& tuple);

class RankOracle {
 public:
  RankOracle(const sqdeg::FiniteModel& m, const sqdeg::RankParams& p) : m_(m), p_(p) {}

  bool ge(const std::vector<int>& w_sorted, int alpha);
  int value(const std::vector<int>& w_sorted);
  int model_rank();

 private:
  const sqdeg::FiniteModel& m_;
  sqdeg::RankParams p_;
  std::map<std::pair<std::vector<int>, int>, bool> memo_;
};

// direct recursion on the square-degree clauses; -2 encodes bottom
int degsq_value(const sqdeg::TreeFamily& f, const std::vector<std::string>& u,
                const std::map<std::pair<std::string, std::string>, int>& g);
int degsq_entry_value(const sqdeg::TreeFamily& f, const sqdeg::PfapEntry& e);

// direct recursion on the rectangle-degree clauses (strict freezing); -2 = bottom
int degrc_value(const sqdeg::RectTree& t, std::vector<std::string> u1,
                std::vector<std::string> u2);

// direct recursion on the two-sorted rank clauses; -2 = bottom
int rkrc_value(const sqdeg::TwoSortedModel& m, const std::vector<int>& w1,
               const std::vector<int>& w2, sqdeg::rank_variant variant, int closure);

// samplers shared by tests and the acceptance suite
sqdeg::FiniteModel random_model(sqdeg::rng64& rng, int max_universe = 5);
sqdeg::FiniteModel random_unary_model(int universe, std::uint32_t rel_a, std::uint32_t rel_b);
sqdeg::TreeFamily random_family(sqdeg::rng64& rng, int depth, int max_trees,
                                double keep_prob = 0.7);
sqdeg::RectTree random_rect_tree(sqdeg::rng64& rng, int depth, double keep_prob = 0.75);

}  // namespace oracle
