#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqdeg {

// Bad user input (malformed files, out-of-range arguments). CLI exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// splitmix64: tiny deterministic generator for samplers and tests.
struct rng64 {
  std::uint64_t state;
  explicit rng64(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }
};

inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

// elements of a bitmask, ascending
inline std::vector<int> mask_elems(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i);
  return out;
}

inline std::uint32_t elems_mask(const std::vector<int>& elems) {
  std::uint32_t m = 0;
  for (int e : elems) m |= 1u << e;
  return m;
}

std::string join_ints(const std::vector<int>& v, char sep = ',');

}  // namespace sqdeg
