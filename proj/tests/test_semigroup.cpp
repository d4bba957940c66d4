#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>

#include "addrep/json_io.hpp"
#include "addrep/semigroup.hpp"
#include "helpers.hpp"

using namespace addrep;

namespace {

LinearRepresentation reference_rep() {
  return load_linrep_file(data_file("e_linrep_rank10.json"));
}

LinearRepresentation constant_rep(long value) {
  LinearRepresentation lr;
  lr.base = 2;
  lr.rank = 1;
  lr.v = {Rational(1)};
  lr.w = {Rational(value)};
  lr.gamma.assign(2, RationalMatrix::identity(1));
  return lr;
}

}  // namespace

TEST_CASE("vector closure of the reference representation") {
  auto d = semigroup_trick(reference_rep());
  CHECK(d.num_states == 28);
  auto m = minimize_dfao(d);
  CHECK(m.num_states == 28);
  CHECK(isomorphic(m, load_dfao_file(data_file("e_dfao_28.json"))));
}

TEST_CASE("closure outputs take the expected finite set of values") {
  auto d = semigroup_trick(reference_rep());
  const std::vector<std::int64_t> allowed{-3, -1, 0, 2, 3, 6, 9, 10, 12, 13, 15};
  for (std::int64_t out : d.output)
    CHECK(std::find(allowed.begin(), allowed.end(), out) != allowed.end());
}

TEST_CASE("closure automaton reproduces the representation everywhere") {
  auto lr = reference_rep();
  auto d = semigroup_trick(lr);
  auto vals = eval_linrep_range(lr, 1 << 12);
  auto outs = eval_dfao_range(d, 1 << 12);
  for (std::uint64_t n = 0; n <= (1 << 12); ++n)
    REQUIRE(Rational(static_cast<long>(outs[n])) == vals[n]);
}

TEST_CASE("closure of a constant sequence is a single state") {
  auto d = semigroup_trick(constant_rep(5));
  CHECK(d.num_states == 1);
  CHECK(d.output[0] == 5);
  CHECK(eval_dfao(d, 0) == 5);
  CHECK(eval_dfao(d, 12345) == 5);
}

TEST_CASE("unbounded sequences hit the closure cap") {
  // n + 1 takes infinitely many values, so the closure cannot stabilize.
  auto lr = counting_linrep(project_to_n(leq_relation(2)));
  CHECK_THROWS_AS(semigroup_trick(lr, 1000), ResourceError);
}

TEST_CASE("non-integer outputs are a contract violation naming the prefix") {
  LinearRepresentation half = constant_rep(1);
  half.v = {Rational(1, 2)};
  try {
    semigroup_trick(half);
    FAIL("expected a contract error");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("1/2") != std::string::npos);
  }
}

TEST_CASE("closure construction is deterministic") {
  auto a = semigroup_trick(reference_rep());
  auto b = semigroup_trick(reference_rep());
  CHECK(a == b);
}

TEST_CASE("closure of the zero representation") {
  auto d = semigroup_trick(zero_linrep(2));
  CHECK(d.num_states == 1);
  CHECK(d.output[0] == 0);
}
