#include <catch2/catch_amalgamated.hpp>

#include "poctl/possibility.hpp"

using poctl::Possibility;

TEST_CASE("decimal literals parse exactly") {
  CHECK(Possibility::parse("0") == Possibility(0, 1));
  CHECK(Possibility::parse("1") == Possibility(1, 1));
  CHECK(Possibility::parse("0.5") == Possibility(1, 2));
  CHECK(Possibility::parse(".25") == Possibility(1, 4));
  CHECK(Possibility::parse("0.2") == Possibility(1, 5));
  CHECK(Possibility::parse("1.000000000") == Possibility::one());
  CHECK(Possibility::parse("0.000000001") == Possibility(1, 1000000000));
}

TEST_CASE("bad literals are rejected") {
  CHECK_THROWS_AS(Possibility::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Possibility::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Possibility::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Possibility::parse("2"), std::invalid_argument);
  CHECK_THROWS_AS(Possibility::parse("0.0000000001"), std::invalid_argument);
  CHECK_THROWS_AS(Possibility::parse("0.5x"), std::invalid_argument);
  CHECK_THROWS_AS(Possibility(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(Possibility(-1, 2), std::invalid_argument);
  CHECK_THROWS_AS(Possibility(1, 0), std::invalid_argument);
}

TEST_CASE("values are reduced and compare exactly") {
  CHECK(Possibility(2, 4) == Possibility(1, 2));
  CHECK(Possibility(1, 3) < Possibility(1, 2));
  CHECK(Possibility(7, 10) > Possibility(1, 2));
  CHECK(std::max(Possibility(1, 5), Possibility(1, 2)) == Possibility(1, 2));
  CHECK(std::min(Possibility(1, 5), Possibility(1, 2)) == Possibility(1, 5));
  CHECK(Possibility::zero().is_zero());
  CHECK(Possibility::one().is_one());
}

TEST_CASE("printing is exact") {
  CHECK(Possibility::parse("0.5").str() == "0.5");
  CHECK(Possibility::parse("0.2").str() == "0.2");
  CHECK(Possibility::parse("1").str() == "1");
  CHECK(Possibility::parse("0").str() == "0");
  CHECK(Possibility::parse("0.125").str() == "0.125");
  CHECK(Possibility(1, 3).str() == "1/3");
  CHECK(Possibility(5, 6).str() == "5/6");
  // printing round-trips through parse for terminating values
  for (const char* text : {"0", "1", "0.7", "0.25", "0.000000001"}) {
    const auto p = Possibility::parse(text);
    CHECK(Possibility::parse(p.str()) == p);
  }
}
