#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "testutil.hpp"

using namespace poctl;
using testutil::states_named;
using testutil::treatment_model;
using testutil::val;

namespace {

StateResolver resolver_for(const PossibilisticKripkeStructure& m) {
  return [&m](const StateFormulaPtr& f) { return oracle_sat(m, f); };
}

}  // namespace

TEST_CASE("oracle values on the example model") {
  const auto m = treatment_model();
  const auto resolve = resolver_for(m);
  const std::size_t poor = m.state_index("poor");

  const auto recovery = parse_poctl("Po=1 [ F \"excellent\" ]");
  CHECK(oracle_po(m, poor, recovery->path, resolve).value == val("1"));

  const auto stuck = parse_poctl("Po=1 [ G !\"excellent\" ]");
  CHECK(oracle_po(m, poor, stuck->path, resolve).value == val("0.5"));

  const auto never_back = parse_poctl("Po=1 [ G !\"poor\" ]");
  CHECK(oracle_po(m, poor, never_back->path, resolve).value == val("0"));

  const auto next = parse_poctl("Po=1 [ X \"excellent\" ]");
  CHECK(oracle_po(m, poor, next->path, resolve).value == val("1"));
  CHECK(oracle_po(m, m.state_index("excellent"), next->path, resolve).value == val("0.5"));
}

TEST_CASE("bounded witnesses stop at the step bound") {
  const auto m = treatment_model();
  const auto resolve = resolver_for(m);
  const std::size_t poor = m.state_index("poor");

  const auto hit0 = parse_poctl("Po=1 [ \"poor\" U<=0 \"excellent\" ]");
  CHECK(oracle_po(m, poor, hit0->path, resolve).value == val("0"));
  CHECK(oracle_po(m, m.state_index("excellent"), hit0->path, resolve).value == val("1"));

  const auto hit7 = parse_poctl("Po=1 [ \"poor\" U<=7 \"excellent\" ]");
  CHECK(oracle_po(m, poor, hit7->path, resolve).value == val("1"));

  // only the one-step witness fits the bound
  PossibilisticKripkeStructure chain;
  chain.states = {"x", "y", "z"};
  chain.transitions = testutil::matrix_of(3, {"0", "1", "0.1",  //
                                              "0", "0", "1",    //
                                              "0", "0", "1"});
  chain.initial = PossibilityVector(3);
  chain.initial[0] = Possibility::one();
  chain.atomic_props = {"a", "b"};
  chain.labels = {{"a"}, {"a"}, {"b"}};
  REQUIRE(validate(chain).empty());
  const auto tight = parse_poctl("Po=1 [ \"a\" U<=1 \"b\" ]");
  CHECK(oracle_po(chain, 0, tight->path, resolver_for(chain)).value == val("0.1"));
  const auto loose = parse_poctl("Po=1 [ \"a\" U<=2 \"b\" ]");
  CHECK(oracle_po(chain, 0, loose->path, resolver_for(chain)).value == val("1"));
}

TEST_CASE("repeated reachability and persistence on the example model") {
  const auto m = treatment_model();
  const std::size_t poor = m.state_index("poor");

  CHECK(oracle_repeated(m, poor, states_named(m, {"excellent"}),
                        RepetitionMode::RepeatedReachability)
            .value == val("1"));
  CHECK(oracle_repeated(m, poor, StateSet(3, true), RepetitionMode::RepeatedReachability).value ==
        val("1"));
  CHECK(oracle_repeated(m, poor, StateSet(3, true), RepetitionMode::Persistence).value ==
        val("1"));
  CHECK(oracle_repeated(m, poor, StateSet(3, false), RepetitionMode::RepeatedReachability).value ==
        val("0"));
  // persisting inside {poor} means looping on the 0.2 self-edge
  CHECK(oracle_repeated(m, poor, states_named(m, {"poor"}), RepetitionMode::Persistence).value ==
        val("0.2"));
}

TEST_CASE("oracle satisfaction matches the documented example") {
  const auto m = treatment_model();
  CHECK(oracle_sat(m, parse_poctl("true")) == StateSet(3, true));
  const auto bounded = oracle_sat(m, parse_poctl("Po=1 [ \"poor\" U<=7 \"excellent\" ]"));
  CHECK(bounded[m.state_index("poor")]);
  CHECK_THROWS_AS(oracle_sat(m, parse_poctl("\"nope\"")), std::invalid_argument);
}

TEST_CASE("default budgets are exact; doubling them changes nothing") {
  std::mt19937 rng(61);
  for (int i = 0; i < 60; ++i) {
    const auto m = testutil::random_model(rng);
    const auto resolve = resolver_for(m);
    const std::size_t n = m.state_count();
    const OracleBudget doubled{2 * n, 2 * n, 2 * n};
    for (int k = 0; k < 4; ++k) {
      const auto f = testutil::random_poctl(rng, 2);
      if (f->kind != StateKind::Po) continue;
      for (std::size_t s = 0; s < n; ++s) {
        const auto base = oracle_po(m, s, f->path, resolve);
        const auto wide = oracle_po(m, s, f->path, resolve, doubled);
        CHECK(base.exact);
        CHECK(base.value == wide.value);
      }
    }
  }
}

TEST_CASE("possibility of a union of path events is the max") {
  // {reach a or b} is the union of {reach a} and {reach b}, so its
  // possibility is the max of the two; likewise for the next step
  std::mt19937 rng(62);
  for (int i = 0; i < 40; ++i) {
    const auto m = testutil::random_model(rng);
    const auto resolve = resolver_for(m);
    const auto either = make_or(make_atom("a"), make_atom("b"));
    const auto reach_either = make_until(make_true(), either);
    const auto reach_a = make_until(make_true(), make_atom("a"));
    const auto reach_b = make_until(make_true(), make_atom("b"));
    for (std::size_t s = 0; s < m.state_count(); ++s) {
      CHECK(oracle_po(m, s, reach_either, resolve).value ==
            std::max(oracle_po(m, s, reach_a, resolve).value,
                     oracle_po(m, s, reach_b, resolve).value));
      CHECK(oracle_po(m, s, make_next(either), resolve).value ==
            std::max(oracle_po(m, s, make_next(make_atom("a")), resolve).value,
                     oracle_po(m, s, make_next(make_atom("b")), resolve).value));
    }
  }
}

TEST_CASE("starved budgets flag lower bounds") {
  const auto m = treatment_model();
  const auto resolve = resolver_for(m);
  const auto f = parse_poctl("Po=1 [ F \"excellent\" ]");
  const auto starved = oracle_po(m, m.state_index("poor"), f->path, resolve, {1, 1, 1});
  CHECK_FALSE(starved.exact);
  const auto exact = oracle_po(m, m.state_index("poor"), f->path, resolve);
  CHECK(exact.exact);
  CHECK(starved.value <= exact.value);
}
