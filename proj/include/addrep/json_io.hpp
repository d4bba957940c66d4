#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "addrep/automata.hpp"
#include "addrep/errors.hpp"
#include "addrep/linrep.hpp"
#include "addrep/relations.hpp"
#include "addrep/series.hpp"

namespace addrep {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Automaton format:
//   {"base": b, "arity": m, "initial": q,
//    "transitions": [[q, [d0,...,dm-1], q'], ...],
//    "accepting": [q, ...]            (acceptor)
//    "outputs": {"q": value, ...}     (automaton with output; total)
//    "track_roles": ["n","x",...]     (relations only)}
// Transition tables must be total. The integer 0 is evaluated as the empty
// input string; the loader documents this convention without the bundled
// automata depending on it (their initial state loops on 0 with output 0).
// ---------------------------------------------------------------------------

namespace detail {

struct AutomatonShell {
  DigitAlphabet alphabet;
  std::uint32_t num_states = 0;
  std::uint32_t initial = 0;
  std::vector<std::uint32_t> next;
};

inline AutomatonShell automaton_shell_from_json(const json& j) {
  if (!j.contains("base") || !j.contains("initial") || !j.contains("transitions"))
    throw ParseError("automaton JSON needs base, initial and transitions");
  std::uint32_t base = j.at("base").get<std::uint32_t>();
  std::uint32_t arity = j.contains("arity") ? j.at("arity").get<std::uint32_t>() : 1;
  AutomatonShell shell;
  shell.alphabet = DigitAlphabet(base, arity);
  const std::uint32_t nsym = shell.alphabet.size();

  struct Edge {
    std::uint32_t from, sym, to;
  };
  std::vector<Edge> edges;
  std::uint32_t max_state = j.at("initial").get<std::uint32_t>();
  for (const auto& t : j.at("transitions")) {
    if (!t.is_array() || t.size() != 3) throw ParseError("transition entries are [q, symbol, q']");
    Edge e;
    e.from = t[0].get<std::uint32_t>();
    e.to = t[2].get<std::uint32_t>();
    if (t[1].is_array()) {
      std::vector<std::uint32_t> tuple = t[1].get<std::vector<std::uint32_t>>();
      e.sym = shell.alphabet.encode(tuple);
    } else {
      if (arity != 1) throw ParseError("scalar transition symbols need arity 1");
      std::uint32_t d = t[1].get<std::uint32_t>();
      if (d >= base) throw ParseError("transition digit out of range");
      e.sym = d;
    }
    max_state = std::max({max_state, e.from, e.to});
    edges.push_back(e);
  }
  shell.num_states = max_state + 1;
  shell.initial = j.at("initial").get<std::uint32_t>();
  shell.next.assign(static_cast<std::size_t>(shell.num_states) * nsym, UINT32_MAX);
  for (const Edge& e : edges) {
    auto& slot = shell.next[static_cast<std::size_t>(e.from) * nsym + e.sym];
    if (slot != UINT32_MAX) throw ParseError("duplicate transition in automaton JSON");
    slot = e.to;
  }
  for (std::uint32_t x : shell.next)
    if (x == UINT32_MAX) throw ParseError("transition table in automaton JSON is not total");
  return shell;
}

inline json transitions_to_json(const DigitAlphabet& alpha, std::uint32_t num_states,
                                const std::vector<std::uint32_t>& next) {
  json out = json::array();
  for (std::uint32_t q = 0; q < num_states; ++q)
    for (std::uint32_t s = 0; s < alpha.size(); ++s) {
      json sym = json::array();
      for (std::uint32_t d : alpha.decode(s)) sym.push_back(d);
      out.push_back(json::array({q, sym, next[static_cast<std::size_t>(q) * alpha.size() + s]}));
    }
  return out;
}

}  // namespace detail

inline bool json_is_dfao(const json& j) { return j.contains("outputs"); }

inline Dfa dfa_from_json(const json& j) {
  auto shell = detail::automaton_shell_from_json(j);
  Dfa d;
  d.alphabet = shell.alphabet;
  d.num_states = shell.num_states;
  d.initial = shell.initial;
  d.next = std::move(shell.next);
  d.accepting.assign(d.num_states, 0);
  if (!j.contains("accepting")) throw ParseError("acceptor JSON needs an accepting list");
  for (const auto& q : j.at("accepting")) {
    std::uint32_t s = q.get<std::uint32_t>();
    if (s >= d.num_states) throw ParseError("accepting state out of range");
    d.accepting[s] = 1;
  }
  d.validate();
  return d;
}

inline Dfao dfao_from_json(const json& j) {
  auto shell = detail::automaton_shell_from_json(j);
  Dfao d;
  d.alphabet = shell.alphabet;
  d.num_states = shell.num_states;
  d.initial = shell.initial;
  d.next = std::move(shell.next);
  if (!j.contains("outputs")) throw ParseError("output automaton JSON needs an outputs map");
  d.output.assign(d.num_states, 0);
  std::vector<std::uint8_t> seen(d.num_states, 0);
  for (const auto& [key, value] : j.at("outputs").items()) {
    std::uint32_t q = static_cast<std::uint32_t>(std::stoul(key));
    if (q >= d.num_states) throw ParseError("output state out of range");
    d.output[q] = value.get<std::int64_t>();
    seen[q] = 1;
  }
  for (std::uint32_t q = 0; q < d.num_states; ++q)
    if (!seen[q]) throw ParseError("outputs map in automaton JSON is not total");
  d.validate();
  return d;
}

inline json dfa_to_json(const Dfa& d) {
  json j;
  j["base"] = d.alphabet.base;
  j["arity"] = d.alphabet.arity;
  j["initial"] = d.initial;
  j["transitions"] = detail::transitions_to_json(d.alphabet, d.num_states, d.next);
  json acc = json::array();
  for (std::uint32_t q = 0; q < d.num_states; ++q)
    if (d.accepting[q]) acc.push_back(q);
  j["accepting"] = acc;
  return j;
}

inline json dfao_to_json(const Dfao& d) {
  json j;
  j["base"] = d.alphabet.base;
  j["arity"] = d.alphabet.arity;
  j["initial"] = d.initial;
  j["transitions"] = detail::transitions_to_json(d.alphabet, d.num_states, d.next);
  json outs = json::object();
  for (std::uint32_t q = 0; q < d.num_states; ++q) outs[std::to_string(q)] = d.output[q];
  j["outputs"] = outs;
  return j;
}

inline json tracked_relation_to_json(const TrackedRelation& r) {
  json j = dfa_to_json(r.dfa);
  j["track_roles"] = r.track_roles;
  return j;
}

inline TrackedRelation tracked_relation_from_json(const json& j) {
  TrackedRelation r;
  r.dfa = dfa_from_json(j);
  if (j.contains("track_roles"))
    r.track_roles = j.at("track_roles").get<std::vector<std::string>>();
  else
    r.track_roles.assign(r.dfa.alphabet.arity, "");
  if (r.track_roles.size() != r.dfa.alphabet.arity)
    throw ParseError("track_roles must name every track");
  return r;
}

// ---------------------------------------------------------------------------
// Linear representation format:
//   {"base": 2, "rank": r, "v": ["p/q", ...],
//    "gamma": {"0": [[...]], "1": [[...]]}, "w": [...]}
// Rationals are "p" or "p/q" strings; they are canonicalized on load.
// ---------------------------------------------------------------------------

namespace detail {

inline Rational rational_from_json(const json& x) {
  if (x.is_number_integer()) return Rational(static_cast<long>(x.get<std::int64_t>()));
  if (x.is_string()) return parse_rational(x.get<std::string>());
  throw ParseError("rational entries must be integers or \"p/q\" strings");
}

}  // namespace detail

inline LinearRepresentation linrep_from_json(const json& j) {
  LinearRepresentation lr;
  lr.base = j.at("base").get<std::uint32_t>();
  lr.rank = j.at("rank").get<std::uint32_t>();
  for (const auto& x : j.at("v")) lr.v.push_back(detail::rational_from_json(x));
  for (const auto& x : j.at("w")) lr.w.push_back(detail::rational_from_json(x));
  lr.gamma.assign(lr.base, RationalMatrix(lr.rank, lr.rank));
  for (std::uint32_t d = 0; d < lr.base; ++d) {
    const json& m = j.at("gamma").at(std::to_string(d));
    if (m.size() != lr.rank) throw ParseError("gamma matrix has wrong row count");
    for (std::uint32_t r = 0; r < lr.rank; ++r) {
      if (m[r].size() != lr.rank) throw ParseError("gamma matrix has wrong column count");
      for (std::uint32_t c = 0; c < lr.rank; ++c)
        lr.gamma[d].at(r, c) = detail::rational_from_json(m[r][c]);
    }
  }
  lr.validate();
  return lr;
}

inline json linrep_to_json(const LinearRepresentation& lr) {
  json j;
  j["base"] = lr.base;
  j["rank"] = lr.rank;
  json v = json::array(), w = json::array();
  for (const auto& x : lr.v) v.push_back(format_rational(x));
  for (const auto& x : lr.w) w.push_back(format_rational(x));
  j["v"] = v;
  json gamma = json::object();
  for (std::uint32_t d = 0; d < lr.base; ++d) {
    json m = json::array();
    for (std::uint32_t r = 0; r < lr.rank; ++r) {
      json row = json::array();
      for (std::uint32_t c = 0; c < lr.rank; ++c) row.push_back(format_rational(lr.gamma[d].at(r, c)));
      m.push_back(row);
    }
    gamma[std::to_string(d)] = m;
  }
  j["gamma"] = gamma;
  j["w"] = w;
  return j;
}

// ---------------------------------------------------------------------------
// Files and the bundled data directory.
// ---------------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

inline Dfao load_dfao_file(const std::string& path) { return dfao_from_json(load_json_file(path)); }
inline Dfa load_dfa_file(const std::string& path) { return dfa_from_json(load_json_file(path)); }
inline LinearRepresentation load_linrep_file(const std::string& path) {
  return linrep_from_json(load_json_file(path));
}

/// Directory holding the bundled reference artifacts. Overridable through the
/// ADDREP_DATA_DIR environment variable.
inline std::string data_dir() {
  if (const char* env = std::getenv("ADDREP_DATA_DIR"); env && *env) return env;
#ifdef ADDREP_DEFAULT_DATA_DIR
  return ADDREP_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

inline std::string data_file(const std::string& name) { return data_dir() + "/" + name; }

/// FNV-1a digest of a file's bytes, as a hex string; used to pin the data
/// files a report was produced from.
inline std::string fnv1a_file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// ---------------------------------------------------------------------------
// Textual set specifications:
//   "list:0,1,2,4"        explicit members
//   "complement:SPEC"     complement of a nested spec (bare lists allowed)
//   "rule:pow2minus1", "rule:pow2minus1(offset=2)", "rule:squares", "rule:odd"
//   "automaton:PATH"      membership by a bundled/bespoke automaton file
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::uint64_t> parse_member_list(const std::string& body) {
  std::vector<std::uint64_t> members;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw ParseError("empty entry in member list", pos);
    for (char ch : item)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw ParseError("member lists contain non-negative integers", pos);
    members.push_back(std::stoull(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return members;
}

}  // namespace detail

inline SetSpec parse_set_spec(const std::string& text) {
  auto starts_with = [&](const char* p) { return text.rfind(p, 0) == 0; };
  if (starts_with("list:")) {
    return SetSpec::explicit_list(detail::parse_member_list(text.substr(5)));
  }
  if (starts_with("complement:")) {
    std::string rest = text.substr(11);
    if (rest.rfind("list:", 0) == 0 || rest.rfind("rule:", 0) == 0 ||
        rest.rfind("automaton:", 0) == 0 || rest.rfind("complement:", 0) == 0)
      return SetSpec::complement_of(parse_set_spec(rest));
    return SetSpec::complement_of(SetSpec::explicit_list(detail::parse_member_list(rest)));
  }
  if (starts_with("rule:")) {
    std::string body = text.substr(5);
    std::uint64_t offset = 2;
    std::size_t paren = body.find('(');
    if (paren != std::string::npos) {
      if (body.back() != ')') throw ParseError("unterminated rule parameter list", text.size() - 1);
      std::string args = body.substr(paren + 1, body.size() - paren - 2);
      body = body.substr(0, paren);
      if (args.rfind("offset=", 0) != 0)
        throw ParseError("unknown rule parameter: '" + args + "'");
      offset = std::stoull(args.substr(7));
    }
    return SetSpec::named_rule(body, offset);
  }
  if (starts_with("automaton:")) {
    std::string path = text.substr(10);
    json j = load_json_file(path);
    if (json_is_dfao(j)) {
      // Nonzero output means membership.
      Dfao d = dfao_from_json(j);
      Dfa m;
      m.alphabet = d.alphabet;
      m.num_states = d.num_states;
      m.initial = d.initial;
      m.next = d.next;
      m.accepting.resize(d.num_states);
      for (std::uint32_t q = 0; q < d.num_states; ++q) m.accepting[q] = d.output[q] != 0;
      return SetSpec::from_automaton(std::move(m));
    }
    return SetSpec::from_automaton(dfa_from_json(j));
  }
  throw ParseError("set specs start with list:, complement:, rule: or automaton:");
}

}  // namespace addrep
