#include <doctest.h>

#include <set>

#include "sqdeg/builder.hpp"
#include "sqdeg/treedeg.hpp"

using namespace sqdeg;

TEST_CASE("built families measure at the requested degree") {
  for (int alpha = 0; alpha <= 3; ++alpha) {
    BuildResult r = build_family(alpha, 1000);
    CHECK(degsq_family(r.family) == DegValue::of(alpha));
  }
}

TEST_CASE("distinct node sets meet only in the zero rail") {
  BuildResult r = build_family(3, 1000);
  for (const BuildStage& st : r.trace) {
    std::string zeros(static_cast<std::size_t>(st.level), '0');
    for (std::size_t i = 0; i < st.nodes.size(); ++i)
      for (std::size_t j = i + 1; j < st.nodes.size(); ++j)
        for (const std::string& a : st.nodes[i].u)
          for (const std::string& b : st.nodes[j].u)
            if (a == b) CHECK(a == zeros);
  }
}

TEST_CASE("fresh labels never repeat") {
  BuildResult r = build_family(3, 1000);
  std::set<int> seen;
  for (std::size_t s = 1; s < r.trace.size(); ++s) {
    const BuildStage& prev = r.trace[s - 1];
    const BuildStage& cur = r.trace[s];
    std::set<int> before, now;
    for (const BuildNode& x : prev.nodes)
      for (const auto& [_, lab] : x.labels) before.insert(lab);
    for (const BuildNode& x : cur.nodes)
      for (const auto& [_, lab] : x.labels) now.insert(lab);
    std::vector<int> fresh;
    for (int lab : now)
      if (!before.count(lab)) fresh.push_back(lab);
    CHECK(fresh.size() == 2);
    for (int lab : fresh) CHECK(seen.insert(lab).second);
  }
}

TEST_CASE("history tags strictly decrease") {
  BuildResult r = build_family(3, 1000);
  for (const BuildNode& x : r.trace.back().nodes)
    for (std::size_t i = 1; i < x.history.size(); ++i)
      CHECK(x.history[i] < x.history[i - 1]);
}

TEST_CASE("budget shortfalls are explicit") {
  CHECK_THROWS_AS(build_family(0, 0), budget_error);
  try {
    build_family(2, 3);
    CHECK(false);
  } catch (const budget_error& e) {
    CHECK(e.residual > 0);
  }
  CHECK_THROWS_AS(build_family(-1, 10), input_error);
}

TEST_CASE("canned fixtures") {
  CHECK(degsq_family(canned_diagonal(3)) == DegValue::of(0));
  CHECK(degsq_family(canned_full(3)) == DegValue::of(3));
  CHECK(degsq_family(canned_full(3, 0)) == DegValue::of(0));
  CHECK(degsq_family(canned_diagonal(2, 0)) == DegValue::of(0));
  TreeFamily none;
  none.depth = 1;
  CHECK(degsq_family(none) == DegValue::of(0));
  CHECK_THROWS_AS(canned_full(0), input_error);
}

TEST_CASE("build output passes family validation and reports its shape") {
  BuildResult r = build_family(2, 1000);
  CHECK_NOTHROW(validate_family(r.family));
  CHECK(r.produced_depth == r.family.depth);
  CHECK(r.tree_count == static_cast<int>(r.family.trees.size()));
  CHECK(r.stages_used >= 1);
}
