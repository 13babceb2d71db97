#include <catch2/catch_amalgamated.hpp>

#include <omegad/rational.hpp>

#include "support.hpp"

using namespace omegad;

TEST_CASE("parse_rat accepts fractions, decimals, and integers") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-7/2") == Rat(-7, 2));
  CHECK(parse_rat("0.25") == Rat(1, 4));
  CHECK(parse_rat("-0.5") == Rat(-1, 2));
  CHECK(parse_rat("12") == Rat(12));
  CHECK(parse_rat("1.414213") == make_rat(Int(1414213), Int(1000000)));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
}

TEST_CASE("to_decimal brackets the value per rounding direction") {
  auto rng = testsupport::test_rng(11);
  std::uniform_int_distribution<long> num(-999999, 999999);
  std::uniform_int_distribution<long> den(1, 999999);
  for (int i = 0; i < 200; ++i) {
    Rat x = make_rat(Int(num(rng)), Int(den(rng)));
    Rat lo = parse_rat(to_decimal(x, 8, RoundDir::down));
    Rat hi = parse_rat(to_decimal(x, 8, RoundDir::up));
    CHECK(lo <= x);
    CHECK(x <= hi);
    CHECK(hi - lo <= make_rat(Int(1), pow_int(Int(10), 8)));
  }
  CHECK(to_decimal(Rat(1, 3), 5, RoundDir::down) == "0.33333");
  CHECK(to_decimal(Rat(1, 3), 5, RoundDir::up) == "0.33334");
  CHECK(to_decimal(Rat(1, 2), 3, RoundDir::down) == "0.500");
}

TEST_CASE("floor ceil and integer roots") {
  CHECK(floor_rat(Rat(7, 2)) == 3);
  CHECK(floor_rat(Rat(-7, 2)) == -4);
  CHECK(ceil_rat(Rat(7, 2)) == 4);
  CHECK(ceil_rat(Rat(-7, 2)) == -3);
  CHECK(isqrt_floor(Int(48)) == 6);
  CHECK(isqrt_floor(Int(49)) == 7);
  CHECK(root_floor(Int(26), 3) == 2);
  CHECK(root_floor(Int(27), 3) == 3);
  auto rng = testsupport::test_rng(12);
  std::uniform_int_distribution<long> v(0, 1000000);
  for (int i = 0; i < 100; ++i) {
    Int x(v(rng));
    Int r = isqrt_floor(x);
    CHECK(r * r <= x);
    CHECK((r + 1) * (r + 1) > x);
  }
}

TEST_CASE("pow helpers") {
  CHECK(pow_int(Int(3), 5) == 243);
  CHECK(pow_int(Int(10), 0) == 1);
  CHECK(pow_rat(Rat(2, 3), 3) == Rat(8, 27));
}

TEST_CASE("budget errors are distinguishable from config errors") {
  budget_error e("node budget of 5 exceeded");
  CHECK(std::string(e.what()).find("budget") != std::string::npos);
  bool caught = false;
  try {
    throw budget_error("x");
  } catch (const std::invalid_argument&) {
  } catch (const budget_error&) {
    caught = true;
  }
  CHECK(caught);
}
