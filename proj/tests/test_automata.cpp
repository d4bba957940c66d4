#include <catch2/catch_amalgamated.hpp>

#include "addrep/automata.hpp"
#include "addrep/json_io.hpp"
#include "addrep/pattern.hpp"
#include "helpers.hpp"

using namespace addrep;
using testutil::accepts_string;
using testutil::symbols_of;

namespace {

Dfao load_reference_dfao() { return load_dfao_file(data_file("e_dfao_28.json")); }

// Enumerates all binary strings up to the given length.
template <typename Fn>
void for_all_strings(std::size_t max_len, Fn&& fn) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::uint32_t> s(len, 0);
    while (true) {
      fn(s);
      std::size_t i = len;
      while (i > 0 && s[i - 1] == 1) s[--i] = 0;
      if (i == 0) break;
      s[i - 1] = 1;
    }
  }
}

Dfao permuted(const Dfao& d, const std::vector<std::uint32_t>& perm) {
  Dfao p;
  p.alphabet = d.alphabet;
  p.num_states = d.num_states;
  p.initial = perm[d.initial];
  p.next.resize(d.next.size());
  p.output.resize(d.num_states);
  for (std::uint32_t q = 0; q < d.num_states; ++q) {
    p.output[perm[q]] = d.output[q];
    for (std::uint32_t s = 0; s < d.alphabet.size(); ++s)
      p.next[static_cast<std::size_t>(perm[q]) * d.alphabet.size() + s] = perm[d.step(q, s)];
  }
  return p;
}

}  // namespace

TEST_CASE("digit alphabet encodes tuples lexicographically") {
  DigitAlphabet a(2, 3);
  CHECK(a.size() == 8);
  CHECK(a.encode(std::vector<std::uint32_t>{0, 0, 0}) == 0);
  CHECK(a.encode(std::vector<std::uint32_t>{0, 1, 0}) == 2);
  CHECK(a.encode(std::vector<std::uint32_t>{1, 0, 1}) == 5);
  CHECK(a.decode(5) == std::vector<std::uint32_t>{1, 0, 1});
  for (std::uint32_t s = 0; s < a.size(); ++s) {
    CHECK(a.encode(a.decode(s)) == s);
    for (std::uint32_t t = 0; t < 3; ++t) CHECK(a.track_digit(s, t) == a.decode(s)[t]);
  }
}

TEST_CASE("determinization preserves the language of a hand-built NFA") {
  // 1(0|1)*1 with explicit nondeterminism on the final 1.
  Nfa n;
  n.alphabet = DigitAlphabet(2, 1);
  n.num_states = 3;
  n.initial = {0};
  n.edges.assign(6, {});
  n.accepting = {0, 0, 1};
  n.add_edge(0, 1, 1);
  n.add_edge(1, 0, 1);
  n.add_edge(1, 1, 1);
  n.add_edge(1, 1, 2);
  Dfa d = determinize(n);
  for_all_strings(12, [&](const std::vector<std::uint32_t>& s) {
    CHECK(d.accepts(s) == n.accepts(s));
  });
}

TEST_CASE("an NFA without accepting states determinizes to a single rejecting state") {
  Nfa n;
  n.alphabet = DigitAlphabet(2, 1);
  n.num_states = 2;
  n.initial = {0};
  n.edges.assign(4, {});
  n.accepting = {0, 0};
  n.add_edge(0, 0, 1);
  n.add_edge(0, 1, 1);
  n.add_edge(1, 0, 0);
  Dfa d = minimize_dfa(determinize(n));
  CHECK(d.num_states == 1);
  CHECK(d.accepting[0] == 0);
}

TEST_CASE("reversal then determinization accepts the mirror language") {
  Dfa d = compile_pattern("0*10*", DigitAlphabet(2, 1));
  Dfa r = minimize_dfa(determinize(reverse(d)));
  for_all_strings(12, [&](const std::vector<std::uint32_t>& s) {
    std::vector<std::uint32_t> rev(s.rbegin(), s.rend());
    CHECK(r.accepts(s) == d.accepts(rev));
  });
}

TEST_CASE("determinization respects the state cap") {
  Dfa d = compile_pattern("0*(11)1*", DigitAlphabet(2, 1));
  CHECK_THROWS_AS(determinize(reverse(d), 1), ResourceError);
}

TEST_CASE("minimization merges interchangeable accepting sinks") {
  // Two accepting sink states reachable on different digits.
  Dfa d;
  d.alphabet = DigitAlphabet(2, 1);
  d.num_states = 3;
  d.initial = 0;
  d.next = {1, 2, 1, 1, 2, 2};
  d.accepting = {0, 1, 1};
  Dfa m = minimize_dfa(d);
  CHECK(m.num_states == 2);
  CHECK(m.accepts(symbols_of("0")));
  CHECK(m.accepts(symbols_of("1")));
  CHECK_FALSE(m.accepts(symbols_of("")));
}

TEST_CASE("minimization is idempotent") {
  for (const char* p : {"0*(11)1*", "0*10*", "(0|1)*11"}) {
    Dfa d = compile_pattern(p, DigitAlphabet(2, 1));
    Dfa once = minimize_dfa(d);
    Dfa twice = minimize_dfa(once);
    CHECK(once.num_states == twice.num_states);
    CHECK(once == twice);
  }
  Dfao ref = load_reference_dfao();
  Dfao once = minimize_dfao(ref);
  Dfao twice = minimize_dfao(once);
  CHECK(once.num_states == twice.num_states);
  CHECK(once == twice);
}

TEST_CASE("the reference automaton is already minimal") {
  Dfao ref = load_reference_dfao();
  CHECK(ref.num_states == 28);
  Dfao m = minimize_dfao(ref);
  CHECK(m.num_states == 28);
  CHECK(isomorphic(m, ref));
}

TEST_CASE("automaton minimization preserves outputs everywhere") {
  Dfao ref = load_reference_dfao();
  Dfao m = minimize_dfao(ref);
  for (std::uint64_t n = 0; n <= (std::uint64_t(1) << 16); ++n)
    REQUIRE(eval_dfao(m, n) == eval_dfao(ref, n));
}

TEST_CASE("minimization groups only states with equal output") {
  // Distinct outputs on otherwise interchangeable sinks must not merge.
  Dfao d;
  d.alphabet = DigitAlphabet(2, 1);
  d.num_states = 3;
  d.initial = 0;
  d.next = {1, 2, 1, 1, 2, 2};
  d.output = {0, 5, 7};
  Dfao m = minimize_dfao(d);
  CHECK(m.num_states == 3);
}

TEST_CASE("reference automaton evaluation at pinned points") {
  Dfao ref = load_reference_dfao();
  CHECK(eval_dfao(ref, 0) == 0);
  CHECK(eval_dfao(ref, 6) == 6);
  CHECK(eval_dfao(ref, 10) == 10);
  // leading zeros cannot change the value
  CHECK(ref.eval_symbols(symbols_of("00110")) == eval_dfao(ref, 6));
  // the explicit-zero reading of 0 agrees with the empty-string convention
  CHECK(ref.eval_symbols(symbols_of("0")) == eval_dfao(ref, 0));
}

TEST_CASE("range evaluation agrees with single evaluations") {
  Dfao ref = load_reference_dfao();
  auto range = eval_dfao_range(ref, 1 << 12);
  for (std::uint64_t n = 0; n <= (1 << 12); ++n) REQUIRE(range[n] == eval_dfao(ref, n));
}

TEST_CASE("isomorphism is invariant under relabeling") {
  Dfao ref = load_reference_dfao();
  std::vector<std::uint32_t> perm(ref.num_states);
  for (std::uint32_t i = 0; i < ref.num_states; ++i) perm[i] = (i * 11 + 5) % ref.num_states;
  CHECK(isomorphic(ref, permuted(ref, perm)));
  CHECK(isomorphic(ref, ref));
}

TEST_CASE("isomorphism detects an output change") {
  Dfao ref = load_reference_dfao();
  Dfao tweaked = ref;
  tweaked.output[27] = 3;  // was -3
  CHECK_FALSE(isomorphic(ref, tweaked));
}

TEST_CASE("isomorphism detects a rewired transition") {
  Dfao ref = load_reference_dfao();
  Dfao tweaked = ref;
  tweaked.next[1] = 2;  // state 0 on digit 1 now goes to 2 instead of 1
  CHECK_FALSE(isomorphic(ref, tweaked));
}
