#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "addrep/automata.hpp"
#include "addrep/errors.hpp"
#include "addrep/linrep.hpp"

namespace addrep {

/// Converts a linear representation whose sequence takes finitely many integer
/// values into a DFAO by closing { v } under right multiplication with the
/// digit matrices: states are the distinct vectors v·gamma(z), the transition
/// on d maps u to u·gamma(d), and the output is u·w.
///
/// Vector equality is exact rational equality. The breadth-first closure with
/// digits in ascending order fixes the state numbering, so identical inputs
/// yield identical automata.
///
/// Throws ResourceError when more than `cap` distinct vectors appear (the
/// sequence is then not known to be automatic) and ContractError when some
/// output u·w is not an integer (named by the digit prefix reaching it).
inline Dfao semigroup_trick(const LinearRepresentation& lr, std::uint32_t cap = 100000) {
  lr.validate();
  Dfao d;
  d.alphabet = DigitAlphabet(lr.base, 1);
  if (lr.rank == 0) {
    d.num_states = 1;
    d.initial = 0;
    d.next.assign(lr.base, 0);
    d.output = {0};
    return d;
  }

  std::map<std::vector<Rational>, std::uint32_t> index;
  std::vector<std::vector<Rational>> vectors;
  std::vector<std::string> prefix;  // digit string discovering each vector
  auto intern = [&](std::vector<Rational> u, const std::string& via) {
    auto it = index.find(u);
    if (it != index.end()) return std::make_pair(it->second, false);
    if (vectors.size() >= cap)
      throw ResourceError("vector closure exceeded the cap of " + std::to_string(cap) +
                          " states; the sequence may not be automatic");
    std::uint32_t id = static_cast<std::uint32_t>(vectors.size());
    index.emplace(u, id);
    vectors.push_back(std::move(u));
    prefix.push_back(via);
    return std::make_pair(id, true);
  };

  intern(lr.v, "");
  std::vector<std::uint32_t> table;
  for (std::uint32_t id = 0; id < vectors.size(); ++id) {
    table.resize(vectors.size() * static_cast<std::size_t>(lr.base), 0);
    for (std::uint32_t dig = 0; dig < lr.base; ++dig) {
      auto u = vec_mat(vectors[id], lr.gamma[dig]);
      auto [tid, fresh] = intern(std::move(u), prefix[id] + static_cast<char>('0' + dig));
      (void)fresh;
      table.resize(vectors.size() * static_cast<std::size_t>(lr.base), 0);
      table[static_cast<std::size_t>(id) * lr.base + dig] = tid;
    }
  }

  d.num_states = static_cast<std::uint32_t>(vectors.size());
  d.initial = 0;
  d.next = std::move(table);
  d.output.resize(d.num_states);
  for (std::uint32_t id = 0; id < d.num_states; ++id) {
    Rational out = dot(vectors[id], lr.w);
    if (out.get_den() != 1)
      throw ContractError("non-integer output " + format_rational(out) +
                          " at digit prefix \"" + prefix[id] + "\"");
    Integer num = out.get_num();
    if (!num.fits_slong_p())
      throw ContractError("output overflows 64-bit storage at digit prefix \"" + prefix[id] +
                          "\"");
    d.output[id] = static_cast<std::int64_t>(num.get_si());
  }
  return d;
}

}  // namespace addrep
