#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "addrep/json_io.hpp"
#include "addrep/pipeline.hpp"
#include "helpers.hpp"

using namespace addrep;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/addrep_test_") + name;
}

}  // namespace

TEST_CASE("automaton JSON round-trips exactly") {
  Dfao ref = load_dfao_file(data_file("e_dfao_28.json"));
  json j = dfao_to_json(ref);
  Dfao back = dfao_from_json(j);
  CHECK(back == ref);
  // saving what we loaded produces identical bytes on the next cycle
  std::string path = temp_path("dfao.json");
  save_json_file(path, j);
  Dfao again = load_dfao_file(path);
  CHECK(again == ref);
  CHECK(dfao_to_json(again).dump(2) == j.dump(2));
  std::remove(path.c_str());
}

TEST_CASE("acceptor JSON round-trips exactly") {
  Dfa f = testutil::forbidden_dfa();
  json j = dfa_to_json(f);
  CHECK(dfa_from_json(j) == f);
}

TEST_CASE("tracked relations carry their roles") {
  auto r = leq_relation(2);
  json j = tracked_relation_to_json(r);
  auto back = tracked_relation_from_json(j);
  CHECK(back.dfa == r.dfa);
  CHECK(back.track_roles == r.track_roles);
}

TEST_CASE("scalar transition symbols are accepted for one-track automata") {
  json j = {{"base", 2},
            {"arity", 1},
            {"initial", 0},
            {"transitions", {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}},
            {"accepting", {1}}};
  Dfa d = dfa_from_json(j);
  CHECK(d.num_states == 2);
  CHECK(d.accepts_value(5));
  CHECK_FALSE(d.accepts_value(0));
}

TEST_CASE("automaton JSON validation") {
  json missing = {{"base", 2},
                  {"arity", 1},
                  {"initial", 0},
                  {"transitions", {{0, 0, 1}, {1, 0, 0}, {1, 1, 0}}},
                  {"accepting", {0}}};
  CHECK_THROWS_AS(dfa_from_json(missing), ParseError);  // (0,1) transition absent

  json dup = {{"base", 2},
              {"arity", 1},
              {"initial", 0},
              {"transitions", {{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}},
              {"accepting", {0}}};
  CHECK_THROWS_AS(dfa_from_json(dup), ParseError);

  json bad_digit = {{"base", 2},
                    {"arity", 1},
                    {"initial", 0},
                    {"transitions", {{0, 5, 0}, {0, 1, 0}}},
                    {"accepting", {0}}};
  CHECK_THROWS_AS(dfa_from_json(bad_digit), ParseError);

  json partial_outputs = {{"base", 2},
                          {"arity", 1},
                          {"initial", 0},
                          {"transitions", {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}},
                          {"outputs", {{"0", 3}}}};
  CHECK_THROWS_AS(dfao_from_json(partial_outputs), ParseError);
}

TEST_CASE("rational literals") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(format_rational(parse_rational("24/14")) == "12/7");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("linear representation JSON carries exact rationals") {
  auto lr = load_linrep_file(data_file("e_linrep_rank10.json"));
  CHECK(lr.rank == 10);
  CHECK(lr.gamma[0].at(5, 2) == parse_rational("24/14"));
  CHECK(lr.gamma[1].at(6, 5) == parse_rational("-48/14"));
  json j = linrep_to_json(lr);
  CHECK(linrep_from_json(j) == lr);
}

TEST_CASE("set specifications parse") {
  auto list = parse_set_spec("list:0,1,2,4");
  CHECK(characteristic_series(list, 5).bits == std::vector<std::uint8_t>{1, 1, 1, 0, 1, 0});

  auto comp = parse_set_spec("complement:3,7,15");
  CHECK(characteristic_series(comp, 8).bits ==
        std::vector<std::uint8_t>{1, 1, 1, 0, 1, 1, 1, 0, 1});

  auto comp_rule = parse_set_spec("complement:rule:pow2minus1(offset=2)");
  CHECK(characteristic_series(comp_rule, 8).bits ==
        std::vector<std::uint8_t>{1, 1, 1, 0, 1, 1, 1, 0, 1});

  auto rule = parse_set_spec("rule:pow2minus1");
  auto bits = characteristic_series(rule, 16).bits;
  CHECK(bits[3]);
  CHECK(bits[7]);
  CHECK(bits[15]);

  auto offset = parse_set_spec("rule:pow2minus1(offset=1)");
  auto bits1 = characteristic_series(offset, 16).bits;
  CHECK(bits1[1]);
  CHECK(bits1[3]);

  CHECK_THROWS_AS(parse_set_spec("members:1,2"), ParseError);
  CHECK_THROWS_AS(parse_set_spec("list:2,1"), PreconditionError);
  CHECK_THROWS_AS(parse_set_spec("list:1,,2"), ParseError);
  CHECK_THROWS_AS(parse_set_spec("rule:pow2minus1(shift=1)"), ParseError);
}

TEST_CASE("automaton-backed set specification") {
  std::string path = temp_path("member_dfa.json");
  save_json_file(path, dfa_to_json(testutil::forbidden_dfa()));
  auto spec = parse_set_spec("automaton:" + path);
  auto bits = characteristic_series(spec, 16).bits;
  for (std::uint64_t n = 0; n <= 16; ++n)
    CHECK(bits[n] == (n == 3 || n == 7 || n == 15 ? 1 : 0));
  std::remove(path.c_str());
}

TEST_CASE("reports are deterministic apart from timing") {
  auto a = cmd_table1(20).to_json(false).dump();
  auto b = cmd_table1(20).to_json(false).dump();
  CHECK(a == b);
}

TEST_CASE("report text rendering names the failing step") {
  VerificationReport rep;
  rep.command = "demo";
  rep.add_step("first").status = "pass";
  rep.add_step("second").status = "fail";
  CHECK_FALSE(rep.passed());
  auto text = rep.to_text();
  CHECK(text.find("[FAIL] second") != std::string::npos);
  CHECK(text.find("result: FAIL") != std::string::npos);
}

TEST_CASE("table1 command checks the embedded values") {
  auto rep = cmd_table1(30);
  CHECK(rep.passed());
  CHECK_THROWS_AS(cmd_table1(5), PreconditionError);
}

TEST_CASE("table1 CSV export writes the table") {
  std::string path = temp_path("table1.csv");
  auto rep = cmd_table1(17, path);
  CHECK(rep.passed());
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "n,count");
  CHECK(first == "0,1");
  std::remove(path.c_str());
}

TEST_CASE("positivity command") {
  auto rep = cmd_positivity(4096);
  INFO(rep.to_text());
  CHECK(rep.passed());
  CHECK_THROWS_AS(cmd_positivity(5), PreconditionError);
}

TEST_CASE("identity command") {
  auto pass = cmd_identity(3, parse_set_spec("rule:pow2minus1"), 500);
  CHECK(pass.passed());
  auto bad = cmd_identity(3, parse_set_spec("list:0,3,7"), 100);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("explore command reports observations") {
  auto rep = cmd_explore(3, parse_set_spec("rule:pow2minus1"), 4096);
  CHECK(rep.passed());
  bool found = false;
  for (const auto& s : rep.steps)
    if (s.name == "difference-sequence") {
      found = true;
      CHECK(s.detail.at("strictly_positive_from") == 0);
    }
  CHECK(found);
}

TEST_CASE("pipeline negative control: corrupted reference automaton") {
  // Redirect the data directory to a copy with a wrong output value.
  std::string dir = temp_path("datadir");
  std::filesystem::create_directories(dir);
  for (const char* name : {"table1_values.json", "e_linrep_rank10.json"}) {
    std::filesystem::copy_file(data_file(name), dir + "/" + name,
                               std::filesystem::copy_options::overwrite_existing);
  }
  json j = load_json_file(data_file("e_dfao_28.json"));
  j["outputs"]["27"] = 3;  // was -3
  save_json_file(dir + "/e_dfao_28.json", j);

  ::setenv("ADDREP_DATA_DIR", dir.c_str(), 1);
  auto rep = run_pipeline(1 << 8);
  ::unsetenv("ADDREP_DATA_DIR");

  CHECK_FALSE(rep.passed());
  bool failed_at_iso = false;
  for (const auto& s : rep.steps)
    if (s.name == "reference-automaton-isomorphism" && s.status == "fail") failed_at_iso = true;
  CHECK(failed_at_iso);
  std::filesystem::remove_all(dir);
}
