#include "sqdeg/model.hpp"

#include <algorithm>
#include <sstream>

namespace sqdeg {

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(v[i]);
  }
  return out;
}

void validate_model(const FiniteModel& m) {
  if (m.universe <= 0) throw input_error("model universe must be positive");
  if (m.max_arity < 1) throw input_error("max_arity must be >= 1");
  std::set<std::string> names;
  for (const Relation& r : m.relations) {
    if (r.name.empty()) throw input_error("relation with empty name");
    if (!names.insert(r.name).second)
      throw input_error("duplicate relation name: " + r.name);
    if (r.arity < 1) throw input_error("relation " + r.name + " has arity < 1");
    if (r.arity > m.max_arity)
      throw input_error("relation " + r.name + " has arity " + std::to_string(r.arity) +
                        " above the configured maximum " + std::to_string(m.max_arity));
    for (const auto& t : r.tuples) {
      if (static_cast<int>(t.size()) != r.arity)
        throw input_error("relation " + r.name + " has a tuple of wrong length");
      for (int e : t)
        if (e < 0 || e >= m.universe)
          throw input_error("relation " + r.name + " has an out-of-range entry " +
                            std::to_string(e));
    }
  }
}

FiniteModel all_constants_model(int n) {
  FiniteModel m;
  m.universe = n;
  for (int i = 0; i < n; ++i) {
    Relation r;
    r.name = "c" + std::to_string(i);
    r.arity = 1;
    r.tuples.insert({i});
    m.relations.push_back(std::move(r));
  }
  return m;
}

FiniteModel empty_vocabulary_model(int n) {
  FiniteModel m;
  m.universe = n;
  return m;
}

namespace {

// position maps of a given arity over n slots, lexicographic; map encoded in
// base n with slot 0 most significant
inline void next_map(std::vector<int>& p, int n, bool& done) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (++p[static_cast<std::size_t>(i)] < n) return;
    p[static_cast<std::size_t>(i)] = 0;
  }
  done = true;
}

}  // namespace

AtomicType atomic_type(const FiniteModel& m, std::span<const int> tuple) {
  const int n = static_cast<int>(tuple.size());
  AtomicType t;
  t.length = n;
  t.eq_class.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int rep = i;
    for (int j = 0; j < i; ++j)
      if (tuple[static_cast<std::size_t>(j)] == tuple[static_cast<std::size_t>(i)]) {
        rep = j;
        break;
      }
    t.eq_class[static_cast<std::size_t>(i)] = rep;
  }
  std::size_t bit = 0;
  std::vector<int> args;
  for (const Relation& r : m.relations) {
    if (n == 0) break;
    std::vector<int> p(static_cast<std::size_t>(r.arity), 0);
    bool done = false;
    args.assign(static_cast<std::size_t>(r.arity), 0);
    while (!done) {
      for (int i = 0; i < r.arity; ++i)
        args[static_cast<std::size_t>(i)] =
            tuple[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
      if (r.tuples.count(args)) {
        std::size_t word = bit >> 6;
        if (word >= t.facts.size()) t.facts.resize(word + 1, 0);
        t.facts[word] |= 1ULL << (bit & 63);
      }
      ++bit;
      next_map(p, n, done);
    }
  }
  // fixed total bit count so equal types compare equal bitwise
  std::size_t words = (bit + 63) >> 6;
  if (t.facts.size() < words) t.facts.resize(words, 0);
  return t;
}

int orbit_size(const FiniteModel& m, int a, const std::vector<int>& B) {
  if (a < 0 || a >= m.universe) throw input_error("orbit_size: element out of range");
  std::vector<int> tuple;
  tuple.reserve(B.size() + 1);
  tuple.push_back(a);
  for (int b : B) {
    if (b < 0 || b >= m.universe) throw input_error("orbit_size: parameter out of range");
    tuple.push_back(b);
  }
  AtomicType target = atomic_type(m, tuple);
  int count = 0;
  for (int x = 0; x < m.universe; ++x) {
    tuple[0] = x;
    if (atomic_type(m, tuple) == target) ++count;
  }
  return count;
}

bool in_closure(const FiniteModel& m, int a, const std::vector<int>& B, int threshold_k) {
  if (threshold_k < 2) throw input_error("closure threshold must be >= 2");
  return orbit_size(m, a, B) < threshold_k;
}

TypeOracle::TypeOracle(const FiniteModel& m) : model_(&m) {
  binary_only_ = true;
  for (const Relation& r : m.relations)
    if (r.arity > 2) binary_only_ = false;
  const int n = m.universe;
  pair_profiles_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::vector<int> args;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::vector<std::uint64_t>& prof =
          pair_profiles_[static_cast<std::size_t>(x * n + y)];
      std::size_t bit = 0;
      for (const Relation& r : m.relations) {
        // maps into the two slots {x,y}: 2^arity of them
        for (std::uint32_t sel = 0; sel < (1u << r.arity); ++sel) {
          args.clear();
          for (int i = 0; i < r.arity; ++i) args.push_back((sel >> i) & 1 ? y : x);
          if (r.tuples.count(args)) {
            std::size_t word = bit >> 6;
            if (word >= prof.size()) prof.resize(word + 1, 0);
            prof[word] |= 1ULL << (bit & 63);
          }
          ++bit;
        }
      }
      std::size_t words = (bit + 63) >> 6;
      if (prof.size() < words) prof.resize(words, 0);
    }
}

AtomicType TypeOracle::type(std::span<const int> tuple) const {
  return atomic_type(*model_, tuple);
}

}  // namespace sqdeg
