#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "addrep/automata.hpp"
#include "addrep/errors.hpp"
#include "addrep/numeric.hpp"

namespace addrep {

/// Synchronized relation over equal-length, zero-padded digit tracks.
/// Track 0 is the distinguished "n" track; the language is closed under
/// prepending the all-zeros symbol.
struct TrackedRelation {
  Dfa dfa;  // arity = number of tracks
  std::vector<std::string> track_roles;
};

/// delta(q0, all-zeros symbol) == q0. Required of membership automata used in
/// relation products, and holds for every relation this module constructs.
inline bool is_leading_zero_invariant(const Dfa& d) {
  return d.step(d.initial, 0) == d.initial;
}

namespace detail {

inline std::vector<std::string> default_roles(std::uint32_t m) {
  static const char* names[] = {"x", "y", "z"};
  std::vector<std::string> roles{"n"};
  for (std::uint32_t i = 0; i < m; ++i)
    roles.push_back(i < 3 ? names[i] : "x" + std::to_string(i + 1));
  return roles;
}

}  // namespace detail

/// Relation x1 + ... + xm + c = n over padded digit tuples (n; x1..xm).
/// Built least-significant-digit-first as a carry automaton (the constant c is
/// folded into the initial carry), then reversed and determinized to the
/// msd-first convention used everywhere else.
inline TrackedRelation addition_relation(std::uint32_t m, std::uint64_t c, std::uint32_t base) {
  if (m < 1) throw PreconditionError("addition relation needs at least one addend");
  std::uint64_t cap_c = 1;
  for (int i = 0; i < 4; ++i) cap_c *= base;
  if (c > cap_c)
    throw PreconditionError("constant offset too large (must be <= base^4)");

  DigitAlphabet alpha(base, m + 1);
  const std::uint32_t nsym = alpha.size();

  // State 0 is the rejecting sink; other states are pending carries.
  std::vector<std::uint64_t> carry_of{0};  // placeholder for the sink
  std::map<std::uint64_t, std::uint32_t> index;
  auto intern = [&](std::uint64_t carry) {
    auto it = index.find(carry);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(carry_of.size());
    index.emplace(carry, id);
    carry_of.push_back(carry);
    return id;
  };

  std::uint32_t start = intern(c);
  std::vector<std::uint32_t> table(nsym, 0);  // sink self-loops
  for (std::uint32_t id = 1; id < carry_of.size(); ++id) {
    table.resize(static_cast<std::size_t>(carry_of.size()) * nsym, 0);
    const std::uint64_t carry = carry_of[id];
    for (std::uint32_t s = 0; s < nsym; ++s) {
      auto tuple = alpha.decode(s);
      std::uint64_t total = carry;
      for (std::uint32_t i = 1; i <= m; ++i) total += tuple[i];
      const std::uint32_t nd = tuple[0];
      std::uint32_t target = 0;
      if (total >= nd && (total - nd) % base == 0) target = intern((total - nd) / base);
      table.resize(static_cast<std::size_t>(carry_of.size()) * nsym, 0);
      table[static_cast<std::size_t>(id) * nsym + s] = target;
    }
  }

  Dfa lsd;
  lsd.alphabet = alpha;
  lsd.num_states = static_cast<std::uint32_t>(carry_of.size());
  lsd.initial = start;
  lsd.next = std::move(table);
  lsd.next.resize(static_cast<std::size_t>(lsd.num_states) * nsym, 0);
  lsd.accepting.assign(lsd.num_states, 0);
  lsd.accepting[intern(0)] = 1;

  TrackedRelation r;
  r.dfa = minimize_dfa(determinize(reverse(lsd)));
  r.track_roles = detail::default_roles(m);
  return r;
}

/// Relation x <= n over padded pairs (n; x), msd-first comparison.
inline TrackedRelation leq_relation(std::uint32_t base) {
  DigitAlphabet alpha(base, 2);
  const std::uint32_t nsym = alpha.size();
  // States: 0 = equal so far, 1 = decided less, 2 = decided greater.
  Dfa d;
  d.alphabet = alpha;
  d.num_states = 3;
  d.initial = 0;
  d.next.resize(3 * static_cast<std::size_t>(nsym));
  for (std::uint32_t s = 0; s < nsym; ++s) {
    auto t = alpha.decode(s);
    const std::uint32_t nd = t[0], xd = t[1];
    d.next[0 * nsym + s] = xd == nd ? 0 : (xd < nd ? 1 : 2);
    d.next[1 * nsym + s] = 1;
    d.next[2 * nsym + s] = 2;
  }
  d.accepting = {1, 1, 0};
  TrackedRelation r;
  r.dfa = minimize_dfa(d);
  r.track_roles = {"n", "x"};
  return r;
}

/// Membership automaton for { n : n >= threshold }, leading-zero invariant.
inline Dfa value_at_least_dfa(std::uint32_t base, std::uint64_t threshold) {
  if (threshold > 4096) throw PreconditionError("threshold too large for this helper");
  // States 0..threshold-1 track the value read so far; state `threshold`
  // saturates.
  Dfa d;
  d.alphabet = DigitAlphabet(base, 1);
  d.num_states = static_cast<std::uint32_t>(threshold) + 1;
  d.initial = 0;
  d.next.resize(static_cast<std::size_t>(d.num_states) * base);
  for (std::uint64_t v = 0; v <= threshold; ++v)
    for (std::uint32_t dig = 0; dig < base; ++dig) {
      std::uint64_t nv = std::min<std::uint64_t>(v * base + dig, threshold);
      d.next[v * base + dig] = static_cast<std::uint32_t>(nv);
    }
  d.accepting.assign(d.num_states, 0);
  d.accepting[d.num_states - 1] = 1;
  return minimize_dfa(d);
}

/// Product with a single-track membership automaton on the given track
/// (complemented when negate is set). The membership automaton must be total,
/// same-base, and leading-zero invariant.
inline TrackedRelation constrain_track(const TrackedRelation& r, std::uint32_t track,
                                       const Dfa& membership, bool negate) {
  const DigitAlphabet& alpha = r.dfa.alphabet;
  if (track >= alpha.arity) throw PreconditionError("track index out of range");
  if (membership.alphabet.arity != 1)
    throw PreconditionError("membership constraint must be single-track");
  if (membership.alphabet.base != alpha.base)
    throw PreconditionError("membership constraint base mismatch");
  if (!is_leading_zero_invariant(membership))
    throw PreconditionError("membership constraint must be leading-zero invariant");

  const std::uint32_t nsym = alpha.size();
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
  auto intern = [&](std::uint32_t qr, std::uint32_t qm) {
    auto key = std::make_pair(qr, qm);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(states.size());
    index.emplace(key, id);
    states.push_back(key);
    return id;
  };

  Dfa d;
  d.alphabet = alpha;
  d.initial = intern(r.dfa.initial, membership.initial);
  std::vector<std::uint32_t> table;
  for (std::uint32_t id = 0; id < states.size(); ++id) {
    table.resize(static_cast<std::size_t>(states.size()) * nsym, 0);
    auto [qr, qm] = states[id];
    for (std::uint32_t s = 0; s < nsym; ++s) {
      std::uint32_t tid =
          intern(r.dfa.step(qr, s), membership.step(qm, alpha.track_digit(s, track)));
      table.resize(static_cast<std::size_t>(states.size()) * nsym, 0);
      table[static_cast<std::size_t>(id) * nsym + s] = tid;
    }
  }
  d.num_states = static_cast<std::uint32_t>(states.size());
  d.next = std::move(table);
  d.accepting.resize(d.num_states);
  for (std::uint32_t id = 0; id < d.num_states; ++id) {
    auto [qr, qm] = states[id];
    bool member = membership.accepting[qm] != 0;
    d.accepting[id] = (r.dfa.accepting[qr] != 0 && (member != negate)) ? 1 : 0;
  }

  TrackedRelation out;
  out.dfa = minimize_dfa(d);
  out.track_roles = r.track_roles;
  return out;
}

/// Path-counting projection onto the n track: an NFA over single digits whose
/// number of accepting paths on the padded msd-first digits of n equals the
/// number of witness tuples (x1..xm). The relation is first trimmed to useful
/// (reachable and co-reachable) states, which leaves path counts unchanged and
/// makes the derived counting representations leading-zero invariant in the
/// strict vector sense.
inline Nfa project_to_n(const TrackedRelation& r) {
  const DigitAlphabet& alpha = r.dfa.alphabet;
  const std::uint32_t nsym = alpha.size();
  const std::uint32_t S = r.dfa.num_states;

  std::vector<std::uint8_t> reachable(S, 0);
  {
    std::queue<std::uint32_t> work;
    reachable[r.dfa.initial] = 1;
    work.push(r.dfa.initial);
    while (!work.empty()) {
      std::uint32_t q = work.front();
      work.pop();
      for (std::uint32_t s = 0; s < nsym; ++s) {
        std::uint32_t t = r.dfa.step(q, s);
        if (!reachable[t]) {
          reachable[t] = 1;
          work.push(t);
        }
      }
    }
  }
  std::vector<std::uint8_t> coreach(S, 0);
  {
    std::vector<std::vector<std::uint32_t>> preds(S);
    for (std::uint32_t q = 0; q < S; ++q)
      for (std::uint32_t s = 0; s < nsym; ++s) preds[r.dfa.step(q, s)].push_back(q);
    std::queue<std::uint32_t> work;
    for (std::uint32_t q = 0; q < S; ++q)
      if (r.dfa.accepting[q]) {
        coreach[q] = 1;
        work.push(q);
      }
    while (!work.empty()) {
      std::uint32_t q = work.front();
      work.pop();
      for (std::uint32_t p : preds[q])
        if (!coreach[p]) {
          coreach[p] = 1;
          work.push(p);
        }
    }
  }

  std::vector<std::uint32_t> remap(S, UINT32_MAX);
  std::uint32_t useful = 0;
  for (std::uint32_t q = 0; q < S; ++q)
    if (reachable[q] && coreach[q]) remap[q] = useful++;

  Nfa n;
  n.alphabet = DigitAlphabet(alpha.base, 1);
  if (useful == 0 || remap[r.dfa.initial] == UINT32_MAX) {
    // Empty relation: a single rejecting state.
    n.num_states = 1;
    n.initial = {0};
    n.edges.assign(alpha.base, {});
    n.accepting = {0};
    return n;
  }
  n.num_states = useful;
  n.initial = {remap[r.dfa.initial]};
  n.edges.assign(static_cast<std::size_t>(useful) * alpha.base, {});
  n.accepting.assign(useful, 0);
  for (std::uint32_t q = 0; q < S; ++q) {
    if (remap[q] == UINT32_MAX) continue;
    if (r.dfa.accepting[q]) n.accepting[remap[q]] = 1;
    for (std::uint32_t s = 0; s < nsym; ++s) {
      std::uint32_t t = r.dfa.step(q, s);
      if (remap[t] == UINT32_MAX) continue;
      n.add_edge(remap[q], alpha.track_digit(s, 0), remap[t], 1);
    }
  }
  return n;
}

/// Symbol encoding of a tuple (n; x1..xm), all tracks padded to the length of
/// the longest canonical representation plus one leading zero symbol.
inline std::vector<std::uint32_t> encode_tuple(std::uint64_t n,
                                               std::span<const std::uint64_t> xs,
                                               const DigitAlphabet& alpha) {
  if (xs.size() + 1 != alpha.arity) throw PreconditionError("tuple arity mismatch");
  std::vector<std::vector<std::uint32_t>> tracks;
  tracks.push_back(canonical_digits(n, alpha.base));
  std::size_t len = tracks[0].size();
  for (std::uint64_t x : xs) {
    tracks.push_back(canonical_digits(x, alpha.base));
    len = std::max(len, tracks.back().size());
  }
  len += 1;  // mandatory leading zero
  std::vector<std::uint32_t> symbols(len);
  std::vector<std::uint32_t> tuple(alpha.arity);
  for (std::size_t pos = 0; pos < len; ++pos) {
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      std::size_t pad = len - tracks[t].size();
      tuple[t] = pos < pad ? 0 : tracks[t][pos - pad];
    }
    symbols[pos] = alpha.encode(tuple);
  }
  return symbols;
}

/// Acceptance of a concrete tuple under the relation's padding convention.
inline bool relation_accepts(const TrackedRelation& r, std::uint64_t n,
                             std::span<const std::uint64_t> xs) {
  auto symbols = encode_tuple(n, xs, r.dfa.alphabet);
  return r.dfa.accepts(symbols);
}

/// Accepting-path count of the projected NFA on the digits of n, padded with
/// one leading zero.
inline Integer count_paths_for_value(const Nfa& n, std::uint64_t value,
                                     std::uint32_t extra_zeros = 1) {
  std::vector<std::uint32_t> digits(extra_zeros, 0);
  auto d = canonical_digits(value, n.alphabet.base);
  digits.insert(digits.end(), d.begin(), d.end());
  return n.count_paths(digits);
}

}  // namespace addrep
