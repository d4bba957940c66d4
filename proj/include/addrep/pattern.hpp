#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "addrep/automata.hpp"
#include "addrep/errors.hpp"

namespace addrep {

namespace detail {

// Thompson-style epsilon-NFA used only during pattern compilation.
struct EpsNfa {
  struct State {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> sym;  // (symbol, target)
    std::vector<std::uint32_t> eps;
  };
  std::vector<State> states;

  std::uint32_t add() {
    states.emplace_back();
    return static_cast<std::uint32_t>(states.size() - 1);
  }
};

struct Frag {
  std::uint32_t start;
  std::uint32_t accept;
};

class PatternParser {
public:
  PatternParser(const std::string& src, std::uint32_t base) : src_(src), base_(base) {}

  Frag parse(EpsNfa& nfa) {
    nfa_ = &nfa;
    pos_ = 0;
    Frag f = parse_alt();
    if (pos_ != src_.size()) throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
    return f;
  }

private:
  Frag eps_frag() {
    std::uint32_t s = nfa_->add(), a = nfa_->add();
    nfa_->states[s].eps.push_back(a);
    return {s, a};
  }

  Frag parse_alt() {
    Frag f = parse_cat();
    while (pos_ < src_.size() && src_[pos_] == '|') {
      ++pos_;
      Frag g = parse_cat();
      std::uint32_t s = nfa_->add(), a = nfa_->add();
      nfa_->states[s].eps.push_back(f.start);
      nfa_->states[s].eps.push_back(g.start);
      nfa_->states[f.accept].eps.push_back(a);
      nfa_->states[g.accept].eps.push_back(a);
      f = {s, a};
    }
    return f;
  }

  Frag parse_cat() {
    Frag f = eps_frag();
    while (pos_ < src_.size() && src_[pos_] != '|' && src_[pos_] != ')') {
      Frag g = parse_postfix();
      nfa_->states[f.accept].eps.push_back(g.start);
      f = {f.start, g.accept};
    }
    return f;
  }

  Frag parse_postfix() {
    Frag f = parse_atom();
    while (pos_ < src_.size() && src_[pos_] == '*') {
      ++pos_;
      std::uint32_t s = nfa_->add(), a = nfa_->add();
      nfa_->states[s].eps.push_back(f.start);
      nfa_->states[s].eps.push_back(a);
      nfa_->states[f.accept].eps.push_back(f.start);
      nfa_->states[f.accept].eps.push_back(a);
      f = {s, a};
    }
    return f;
  }

  Frag parse_atom() {
    if (pos_ >= src_.size()) throw ParseError("unexpected end of pattern", pos_);
    char c = src_[pos_];
    if (c == '(') {
      std::size_t open = pos_++;
      Frag f = parse_alt();
      if (pos_ >= src_.size() || src_[pos_] != ')')
        throw ParseError("unbalanced '('", open);
      ++pos_;
      return f;
    }
    if (c == '*') throw ParseError("'*' must follow an atom", pos_);
    if (c < '0' || c > '9')
      throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    std::uint32_t digit = static_cast<std::uint32_t>(c - '0');
    if (digit >= base_)
      throw ParseError("digit '" + std::string(1, c) + "' out of range for base " +
                           std::to_string(base_),
                       pos_);
    ++pos_;
    std::uint32_t s = nfa_->add(), a = nfa_->add();
    nfa_->states[s].sym.emplace_back(digit, a);
    return {s, a};
  }

  const std::string& src_;
  std::uint32_t base_;
  std::size_t pos_ = 0;
  EpsNfa* nfa_ = nullptr;
};

inline void eps_closure(const EpsNfa& nfa, std::vector<std::uint32_t>& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  std::vector<std::uint32_t> stack(set);
  std::vector<std::uint8_t> in(nfa.states.size(), 0);
  for (std::uint32_t q : set) in[q] = 1;
  while (!stack.empty()) {
    std::uint32_t q = stack.back();
    stack.pop_back();
    for (std::uint32_t t : nfa.states[q].eps) {
      if (!in[t]) {
        in[t] = 1;
        set.push_back(t);
        stack.push_back(t);
      }
    }
  }
  std::sort(set.begin(), set.end());
}

}  // namespace detail

/// Compiles a pattern over digit literals, concatenation, '|', '*' and
/// parentheses into the minimal total DFA for its language. The empty pattern
/// accepts exactly the empty string. Patterns of the form "0*..." describe
/// languages closed under prepending zeros, which is the convention automata
/// used in relation products must satisfy.
inline Dfa compile_pattern(const std::string& pattern, DigitAlphabet alphabet) {
  if (alphabet.arity != 1)
    throw PreconditionError("pattern compilation requires an arity-1 alphabet");
  if (alphabet.base > 10)
    throw UnsupportedSpecError("pattern literals cover digits 0-9 only (base <= 10)");

  detail::EpsNfa nfa;
  detail::PatternParser parser(pattern, alphabet.base);
  detail::Frag frag = parser.parse(nfa);

  // Subset construction with epsilon closures; the empty subset is the sink.
  const std::uint32_t nsym = alphabet.size();
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> subsets;
  auto intern = [&](std::vector<std::uint32_t> s) {
    detail::eps_closure(nfa, s);
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(subsets.size());
    index.emplace(s, id);
    subsets.push_back(std::move(s));
    return id;
  };

  Dfa d;
  d.alphabet = alphabet;
  d.initial = intern({frag.start});
  std::vector<std::uint32_t> table;
  for (std::uint32_t id = 0; id < subsets.size(); ++id) {
    table.resize(static_cast<std::size_t>(subsets.size()) * nsym, 0);
    for (std::uint32_t s = 0; s < nsym; ++s) {
      std::vector<std::uint32_t> target;
      for (std::uint32_t q : subsets[id])
        for (auto& [sym, t] : nfa.states[q].sym)
          if (sym == s) target.push_back(t);
      std::uint32_t tid = intern(std::move(target));
      table.resize(static_cast<std::size_t>(subsets.size()) * nsym, 0);
      table[static_cast<std::size_t>(id) * nsym + s] = tid;
    }
  }
  d.num_states = static_cast<std::uint32_t>(subsets.size());
  d.next = std::move(table);
  d.accepting.resize(d.num_states, 0);
  for (std::uint32_t id = 0; id < d.num_states; ++id)
    for (std::uint32_t q : subsets[id])
      if (q == frag.accept) d.accepting[id] = 1;
  return minimize_dfa(d);
}

}  // namespace addrep
