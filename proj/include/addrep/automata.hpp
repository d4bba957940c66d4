#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "addrep/errors.hpp"
#include "addrep/numeric.hpp"

namespace addrep {

/// Alphabet of m-tuples of base-b digits. Symbols are indexed in lexicographic
/// tuple order: index = d0*b^(m-1) + d1*b^(m-2) + ... + d(m-1).
struct DigitAlphabet {
  std::uint32_t base = 2;
  std::uint32_t arity = 1;

  DigitAlphabet() = default;
  DigitAlphabet(std::uint32_t b, std::uint32_t m) : base(b), arity(m) {
    if (b < 2) throw PreconditionError("alphabet base must be >= 2");
    if (m < 1) throw PreconditionError("alphabet arity must be >= 1");
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      n *= b;
      if (n > (1u << 20)) throw ResourceError("digit alphabet too large (base^arity > 2^20)");
    }
    size_ = static_cast<std::uint32_t>(n);
  }

  std::uint32_t size() const { return size_; }

  std::uint32_t encode(std::span<const std::uint32_t> digits) const {
    if (digits.size() != arity) throw PreconditionError("symbol tuple has wrong arity");
    std::uint32_t s = 0;
    for (std::uint32_t d : digits) {
      if (d >= base) throw PreconditionError("digit out of range for base");
      s = s * base + d;
    }
    return s;
  }

  std::vector<std::uint32_t> decode(std::uint32_t symbol) const {
    std::vector<std::uint32_t> t(arity);
    for (std::uint32_t i = arity; i-- > 0;) {
      t[i] = symbol % base;
      symbol /= base;
    }
    return t;
  }

  /// Digit of the given track without materializing the whole tuple.
  std::uint32_t track_digit(std::uint32_t symbol, std::uint32_t track) const {
    for (std::uint32_t i = arity - 1; i > track; --i) symbol /= base;
    return symbol % base;
  }

  bool operator==(const DigitAlphabet& o) const {
    return base == o.base && arity == o.arity;
  }

private:
  std::uint32_t size_ = 2;
};

/// Total deterministic automaton over a digit alphabet.
struct Dfa {
  DigitAlphabet alphabet;
  std::uint32_t num_states = 0;
  std::uint32_t initial = 0;
  std::vector<std::uint32_t> next;      // num_states * alphabet.size()
  std::vector<std::uint8_t> accepting;  // num_states

  std::uint32_t step(std::uint32_t q, std::uint32_t symbol) const {
    return next[static_cast<std::size_t>(q) * alphabet.size() + symbol];
  }

  std::uint32_t run(std::span<const std::uint32_t> symbols) const {
    std::uint32_t q = initial;
    for (std::uint32_t s : symbols) q = step(q, s);
    return q;
  }

  bool accepts(std::span<const std::uint32_t> symbols) const {
    return accepting[run(symbols)] != 0;
  }

  /// Membership of a natural number: runs the canonical most-significant-first
  /// base-b digits (the empty string for 0). Requires arity 1.
  bool accepts_value(std::uint64_t n) const {
    if (alphabet.arity != 1) throw PreconditionError("accepts_value requires an arity-1 alphabet");
    auto d = canonical_digits(n, alphabet.base);
    return accepts(d);
  }

  void validate() const {
    if (num_states == 0) throw PreconditionError("automaton must have at least one state");
    if (initial >= num_states) throw PreconditionError("initial state out of range");
    if (next.size() != static_cast<std::size_t>(num_states) * alphabet.size())
      throw PreconditionError("transition table is not total");
    for (std::uint32_t t : next)
      if (t >= num_states) throw PreconditionError("transition target out of range");
    if (accepting.size() != num_states)
      throw PreconditionError("accepting flags must cover all states");
  }

  bool operator==(const Dfa& o) const {
    return alphabet == o.alphabet && num_states == o.num_states && initial == o.initial &&
           next == o.next && accepting == o.accepting;
  }
};

/// Deterministic automaton with an integer output per state. Evaluation on a
/// natural number reads the canonical msd-first digits; by the conventions
/// used throughout, the representation of 0 is the empty string (for the
/// bundled automata this is indistinguishable from feeding a single 0).
struct Dfao {
  DigitAlphabet alphabet;
  std::uint32_t num_states = 0;
  std::uint32_t initial = 0;
  std::vector<std::uint32_t> next;
  std::vector<std::int64_t> output;  // num_states

  std::uint32_t step(std::uint32_t q, std::uint32_t symbol) const {
    return next[static_cast<std::size_t>(q) * alphabet.size() + symbol];
  }

  std::int64_t eval_symbols(std::span<const std::uint32_t> symbols) const {
    std::uint32_t q = initial;
    for (std::uint32_t s : symbols) q = step(q, s);
    return output[q];
  }

  void validate() const {
    if (num_states == 0) throw PreconditionError("automaton must have at least one state");
    if (initial >= num_states) throw PreconditionError("initial state out of range");
    if (next.size() != static_cast<std::size_t>(num_states) * alphabet.size())
      throw PreconditionError("transition table is not total");
    for (std::uint32_t t : next)
      if (t >= num_states) throw PreconditionError("transition target out of range");
    if (output.size() != num_states) throw PreconditionError("output map must be total");
  }

  bool operator==(const Dfao& o) const {
    return alphabet == o.alphabet && num_states == o.num_states && initial == o.initial &&
           next == o.next && output == o.output;
  }
};

inline std::int64_t eval_dfao(const Dfao& d, std::uint64_t n) {
  if (d.alphabet.arity != 1) throw PreconditionError("eval_dfao requires an arity-1 alphabet");
  auto digits = canonical_digits(n, d.alphabet.base);
  return d.eval_symbols(digits);
}

/// Nondeterministic automaton with transition multiplicities. Parallel edges
/// are preserved, not collapsed: the carrier for accepting-path counting.
struct Nfa {
  DigitAlphabet alphabet;
  std::uint32_t num_states = 0;
  std::vector<std::uint32_t> initial;  // sorted, distinct
  // edges[q * alphabet.size() + s] = list of (target, multiplicity), target ascending
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> edges;
  std::vector<std::uint8_t> accepting;

  void add_edge(std::uint32_t from, std::uint32_t symbol, std::uint32_t to,
                std::uint64_t multiplicity = 1) {
    auto& lst = edges[static_cast<std::size_t>(from) * alphabet.size() + symbol];
    for (auto& [t, m] : lst) {
      if (t == to) {
        m += multiplicity;
        return;
      }
    }
    lst.emplace_back(to, multiplicity);
  }

  /// Number of accepting paths on the given symbol string, multiplicities
  /// multiplied along each path. Exact.
  Integer count_paths(std::span<const std::uint32_t> symbols) const {
    std::vector<Integer> cur(num_states, 0);
    for (std::uint32_t q : initial) cur[q] = 1;
    std::vector<Integer> nxt(num_states);
    for (std::uint32_t s : symbols) {
      for (auto& x : nxt) x = 0;
      for (std::uint32_t q = 0; q < num_states; ++q) {
        if (cur[q] == 0) continue;
        for (auto& [t, m] : edges[static_cast<std::size_t>(q) * alphabet.size() + s])
          nxt[t] += cur[q] * static_cast<unsigned long>(m);
      }
      std::swap(cur, nxt);
    }
    Integer total = 0;
    for (std::uint32_t q = 0; q < num_states; ++q)
      if (accepting[q]) total += cur[q];
    return total;
  }

  bool accepts(std::span<const std::uint32_t> symbols) const {
    return count_paths(symbols) > 0;
  }
};

/// Subset construction. Multiplicities are dropped; the language is preserved.
/// Throws ResourceError when more than `state_cap` subset states appear.
inline Dfa determinize(const Nfa& n, std::uint32_t state_cap = 1000000) {
  const std::uint32_t nsym = n.alphabet.size();
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> subsets;
  auto intern = [&](std::vector<std::uint32_t> subset) -> std::uint32_t {
    auto it = index.find(subset);
    if (it != index.end()) return it->second;
    if (subsets.size() >= state_cap)
      throw ResourceError("determinization exceeded the state cap of " +
                          std::to_string(state_cap) + " states");
    std::uint32_t id = static_cast<std::uint32_t>(subsets.size());
    index.emplace(subset, id);
    subsets.push_back(std::move(subset));
    return id;
  };

  Dfa d;
  d.alphabet = n.alphabet;
  std::vector<std::uint32_t> start(n.initial);
  d.initial = intern(start);
  std::queue<std::uint32_t> work;
  work.push(d.initial);
  std::vector<std::uint32_t> table;  // grows in lockstep with subsets
  std::vector<std::uint8_t> acc;
  std::uint32_t processed = 0;
  while (!work.empty()) {
    std::uint32_t id = work.front();
    work.pop();
    if (id < processed) continue;
    processed = id + 1;
    table.resize(static_cast<std::size_t>(subsets.size()) * nsym, 0);
    for (std::uint32_t s = 0; s < nsym; ++s) {
      std::vector<std::uint32_t> target;
      for (std::uint32_t q : subsets[id]) {
        for (auto& [t, m] : n.edges[static_cast<std::size_t>(q) * nsym + s]) {
          (void)m;
          target.push_back(t);
        }
      }
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      std::size_t before = subsets.size();
      std::uint32_t tid = intern(std::move(target));
      if (subsets.size() > before) work.push(tid);
      table.resize(static_cast<std::size_t>(subsets.size()) * nsym, 0);
      table[static_cast<std::size_t>(id) * nsym + s] = tid;
    }
  }
  d.num_states = static_cast<std::uint32_t>(subsets.size());
  d.next = std::move(table);
  d.next.resize(static_cast<std::size_t>(d.num_states) * nsym, 0);
  acc.resize(d.num_states, 0);
  for (std::uint32_t id = 0; id < d.num_states; ++id)
    for (std::uint32_t q : subsets[id])
      if (n.accepting[q]) acc[id] = 1;
  d.accepting = std::move(acc);
  return d;
}

/// Edge-reversal of a DFA as an NFA (initial and accepting sides swapped).
inline Nfa reverse(const Dfa& d) {
  Nfa n;
  n.alphabet = d.alphabet;
  n.num_states = d.num_states;
  n.edges.assign(static_cast<std::size_t>(d.num_states) * d.alphabet.size(), {});
  n.accepting.assign(d.num_states, 0);
  n.accepting[d.initial] = 1;
  for (std::uint32_t q = 0; q < d.num_states; ++q)
    for (std::uint32_t s = 0; s < d.alphabet.size(); ++s)
      n.add_edge(d.step(q, s), s, q, 1);
  for (std::uint32_t q = 0; q < d.num_states; ++q)
    if (d.accepting[q]) n.initial.push_back(q);
  return n;
}

namespace detail {

// Moore partition refinement over the reachable part, starting from the given
// state classes. Returns (class of each reachable state via bfs order,
// transition/initial data) renumbered canonically by BFS from the initial
// class with symbols in ascending order.
struct MooreResult {
  std::uint32_t num_classes = 0;
  std::uint32_t initial = 0;
  std::vector<std::uint32_t> next;       // class transitions
  std::vector<std::uint32_t> class_rep;  // one original state per class
};

inline MooreResult moore_minimize(std::uint32_t num_states, std::uint32_t initial,
                                  const std::vector<std::uint32_t>& next, std::uint32_t nsym,
                                  const std::vector<std::uint32_t>& seed_class) {
  // Restrict to reachable states.
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> pos(num_states, UINT32_MAX);
  order.push_back(initial);
  pos[initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::uint32_t q = order[i];
    for (std::uint32_t s = 0; s < nsym; ++s) {
      std::uint32_t t = next[static_cast<std::size_t>(q) * nsym + s];
      if (pos[t] == UINT32_MAX) {
        pos[t] = static_cast<std::uint32_t>(order.size());
        order.push_back(t);
      }
    }
  }
  const std::uint32_t n = static_cast<std::uint32_t>(order.size());

  std::vector<std::uint32_t> cls(n);
  {
    std::map<std::uint32_t, std::uint32_t> remap;
    for (std::uint32_t i = 0; i < n; ++i) {
      auto [it, fresh] = remap.emplace(seed_class[order[i]], static_cast<std::uint32_t>(remap.size()));
      cls[i] = it->second;
      (void)fresh;
    }
  }

  std::uint32_t num_classes = 0;
  for (std::uint32_t c : cls) num_classes = std::max(num_classes, c + 1);
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_index;
    std::vector<std::uint32_t> new_cls(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> sig;
      sig.reserve(nsym + 1);
      sig.push_back(cls[i]);
      for (std::uint32_t s = 0; s < nsym; ++s)
        sig.push_back(cls[pos[next[static_cast<std::size_t>(order[i]) * nsym + s]]]);
      auto [it, fresh] = sig_index.emplace(std::move(sig), static_cast<std::uint32_t>(sig_index.size()));
      (void)fresh;
      new_cls[i] = it->second;
    }
    std::uint32_t nc = static_cast<std::uint32_t>(sig_index.size());
    cls.swap(new_cls);
    if (nc == num_classes) break;
    num_classes = nc;
  }

  // Canonical numbering: BFS over classes from the initial one.
  std::vector<std::uint32_t> canon(num_classes, UINT32_MAX);
  std::vector<std::uint32_t> rep;  // reachable-order index of a representative
  std::queue<std::uint32_t> work;
  canon[cls[0]] = 0;
  rep.push_back(0);
  work.push(0);
  while (!work.empty()) {
    std::uint32_t i = work.front();
    work.pop();
    std::uint32_t q = order[rep[i]];
    for (std::uint32_t s = 0; s < nsym; ++s) {
      std::uint32_t t = pos[next[static_cast<std::size_t>(q) * nsym + s]];
      if (canon[cls[t]] == UINT32_MAX) {
        canon[cls[t]] = static_cast<std::uint32_t>(rep.size());
        rep.push_back(t);
        work.push(canon[cls[t]]);
      }
    }
  }

  MooreResult r;
  r.num_classes = static_cast<std::uint32_t>(rep.size());
  r.initial = 0;
  r.next.assign(static_cast<std::size_t>(r.num_classes) * nsym, 0);
  r.class_rep.resize(r.num_classes);
  for (std::uint32_t c = 0; c < r.num_classes; ++c) {
    std::uint32_t q = order[rep[c]];
    r.class_rep[c] = q;
    for (std::uint32_t s = 0; s < nsym; ++s) {
      std::uint32_t t = pos[next[static_cast<std::size_t>(q) * nsym + s]];
      r.next[static_cast<std::size_t>(c) * nsym + s] = canon[cls[t]];
    }
  }
  return r;
}

}  // namespace detail

/// Language-preserving minimization by partition refinement. The result is in
/// canonical BFS numbering, so equal languages give structurally equal DFAs.
inline Dfa minimize_dfa(const Dfa& d) {
  d.validate();
  std::vector<std::uint32_t> seed(d.num_states);
  for (std::uint32_t q = 0; q < d.num_states; ++q) seed[q] = d.accepting[q] ? 1 : 0;
  auto m = detail::moore_minimize(d.num_states, d.initial, d.next, d.alphabet.size(), seed);
  Dfa r;
  r.alphabet = d.alphabet;
  r.num_states = m.num_classes;
  r.initial = m.initial;
  r.next = std::move(m.next);
  r.accepting.resize(r.num_states);
  for (std::uint32_t c = 0; c < r.num_states; ++c) r.accepting[c] = d.accepting[m.class_rep[c]];
  return r;
}

/// Output-function-preserving minimization; the seed partition groups states
/// by output value.
inline Dfao minimize_dfao(const Dfao& d) {
  d.validate();
  std::map<std::int64_t, std::uint32_t> out_class;
  for (std::uint32_t q = 0; q < d.num_states; ++q) out_class.emplace(d.output[q], 0);
  std::uint32_t next_id = 0;
  for (auto& [v, id] : out_class) id = next_id++;
  std::vector<std::uint32_t> seed(d.num_states);
  for (std::uint32_t q = 0; q < d.num_states; ++q) seed[q] = out_class[d.output[q]];
  auto m = detail::moore_minimize(d.num_states, d.initial, d.next, d.alphabet.size(), seed);
  Dfao r;
  r.alphabet = d.alphabet;
  r.num_states = m.num_classes;
  r.initial = m.initial;
  r.next = std::move(m.next);
  r.output.resize(r.num_states);
  for (std::uint32_t c = 0; c < r.num_states; ++c) r.output[c] = d.output[m.class_rep[c]];
  return r;
}

/// True iff the reachable parts are related by a bijection preserving the
/// initial state, transitions and outputs (synchronized BFS from the initial
/// pair).
inline bool isomorphic(const Dfao& a, const Dfao& b) {
  if (!(a.alphabet == b.alphabet)) return false;
  std::vector<std::uint32_t> a2b(a.num_states, UINT32_MAX), b2a(b.num_states, UINT32_MAX);
  std::queue<std::pair<std::uint32_t, std::uint32_t>> work;
  a2b[a.initial] = b.initial;
  b2a[b.initial] = a.initial;
  work.emplace(a.initial, b.initial);
  while (!work.empty()) {
    auto [qa, qb] = work.front();
    work.pop();
    if (a.output[qa] != b.output[qb]) return false;
    for (std::uint32_t s = 0; s < a.alphabet.size(); ++s) {
      std::uint32_t ta = a.step(qa, s), tb = b.step(qb, s);
      if (a2b[ta] == UINT32_MAX && b2a[tb] == UINT32_MAX) {
        a2b[ta] = tb;
        b2a[tb] = ta;
        work.emplace(ta, tb);
      } else if (a2b[ta] != tb || b2a[tb] != ta) {
        return false;
      }
    }
  }
  return true;
}

/// All outputs of a DFAO on 0..upto, by depth-first traversal of the canonical
/// digit tree (shared msd prefixes are walked once).
inline std::vector<std::int64_t> eval_dfao_range(const Dfao& d, std::uint64_t upto) {
  if (d.alphabet.arity != 1)
    throw PreconditionError("eval_dfao_range requires an arity-1 alphabet");
  const std::uint32_t b = d.alphabet.base;
  std::vector<std::int64_t> out(upto + 1);
  out[0] = d.output[d.initial];  // empty input
  // Iterative DFS over canonical strings (leading digit nonzero).
  struct Node {
    std::uint64_t value;
    std::uint32_t state;
  };
  std::vector<Node> stack;
  for (std::uint32_t d0 = 1; d0 < b; ++d0) {
    if (d0 > upto) break;
    stack.push_back({d0, d.step(d.initial, d0)});
    while (!stack.empty()) {
      Node n = stack.back();
      stack.pop_back();
      out[n.value] = d.output[n.state];
      if (n.value > upto / b) continue;  // children exceed upto
      for (std::uint32_t dd = b; dd-- > 0;) {
        std::uint64_t v = n.value * b + dd;
        if (v <= upto) stack.push_back({v, d.step(n.state, dd)});
      }
    }
  }
  return out;
}

}  // namespace addrep
