#pragma once

// Shared builders and independent oracles for the test suites. Everything in
// here is deliberately brute force so it cannot share a bug with the library
// paths it checks.

#include <cstdint>
#include <string>
#include <vector>

#include "addrep/linrep.hpp"
#include "addrep/pattern.hpp"
#include "addrep/pipeline.hpp"
#include "addrep/relations.hpp"
#include "addrep/series.hpp"

namespace testutil {

using namespace addrep;

inline std::vector<std::uint32_t> symbols_of(const std::string& s) {
  std::vector<std::uint32_t> v;
  for (char c : s) v.push_back(static_cast<std::uint32_t>(c - '0'));
  return v;
}

inline bool accepts_string(const Dfa& d, const std::string& s) {
  return d.accepts(symbols_of(s));
}

/// Members of the forbidden set {2^(m+2)-1} up to the bound.
inline std::vector<std::uint64_t> forbidden_members(std::uint64_t upto) {
  std::vector<std::uint64_t> m;
  for (std::uint64_t e = 2; e < 63; ++e) {
    std::uint64_t v = (std::uint64_t(1) << e) - 1;
    if (v > upto) break;
    m.push_back(v);
  }
  return m;
}

inline Dfa forbidden_dfa() { return compile_pattern("0*(11)1*", DigitAlphabet(2, 1)); }

/// Relation n = x + y + z + offset with x, y, z outside the forbidden set.
inline TrackedRelation composition_relation(std::uint64_t offset) {
  return addrep::composition_relation(3, offset, forbidden_dfa());
}

inline LinearRepresentation composition_linrep(std::uint64_t offset) {
  return addrep::composition_count_linrep(3, offset, forbidden_dfa());
}

/// Tuple-enumeration oracle: counts[n] = number of ordered k-tuples over the
/// member list with sum n <= bound. Plain nested loops with pruning; no
/// convolution anywhere.
inline std::vector<long> tuple_count_oracle(const std::vector<std::uint64_t>& members,
                                                 int k, std::uint64_t bound) {
  std::vector<long> counts(bound + 1, 0);
  std::vector<std::uint64_t> stack;
  auto recurse = [&](auto&& self, int depth, std::uint64_t sum) -> void {
    if (depth == k) {
      counts[sum] += 1;
      return;
    }
    for (std::uint64_t m : members) {
      if (sum + m > bound) break;
      self(self, depth + 1, sum + m);
    }
  };
  recurse(recurse, 0, 0);
  return counts;
}

inline std::vector<std::uint64_t> complement_members(const std::vector<std::uint64_t>& members,
                                                     std::uint64_t upto) {
  std::vector<std::uint8_t> in(upto + 1, 0);
  for (std::uint64_t m : members)
    if (m <= upto) in[m] = 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n <= upto; ++n)
    if (!in[n]) out.push_back(n);
  return out;
}

}  // namespace testutil
