#pragma once

#include <string>

#include "sqdeg/search.hpp"

namespace sqdeg {

// Independent checkers for search outputs. These re-walk the raw definitions
// (explicit prefix loops against the trees) and share no code with the
// producers.
struct VerifyOutcome {
  bool ok = true;
  std::string reason;
};

VerifyOutcome verify_chain(const TreeFamily& f, const ApproxChain& chain);
VerifyOutcome verify_pattern(const RectTree& tree, const SquarePattern& p);
VerifyOutcome verify_pattern(const TreeFamily& f, const SquarePattern& p);
VerifyOutcome verify_free_set(int universe, const std::vector<FreeFunction>& functions,
                              const std::vector<int>& set);

}  // namespace sqdeg
