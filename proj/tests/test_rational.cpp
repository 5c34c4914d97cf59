#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mwcut/rational.hpp"

using mwcut::Rat;

TEST_CASE("construction normalizes", "[rational]") {
  CHECK(Rat(2, 4).str() == "1/2");
  CHECK(Rat(-2, 4).str() == "-1/2");
  CHECK(Rat(2, -4).str() == "-1/2");
  CHECK(Rat(-2, -4).str() == "1/2");
  CHECK(Rat(0, 7).str() == "0");
  CHECK(Rat(6, 3).str() == "2");
  CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("integers print without a slash", "[rational]") {
  CHECK(Rat(5).str() == "5");
  CHECK(Rat(5).is_integer());
  CHECK_FALSE(Rat(5, 3).is_integer());
  CHECK(Rat(10, 5).is_integer());
}

TEST_CASE("parse accepts both forms and round-trips", "[rational]") {
  CHECK(Rat::parse("3/4") == Rat(3, 4));
  CHECK(Rat::parse("-3/4") == Rat(-3, 4));
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat::parse("-7") == Rat(-7));
  CHECK_THROWS(Rat::parse(""));
  CHECK_THROWS(Rat::parse("1/"));
  CHECK_THROWS(Rat::parse("/2"));
  CHECK_THROWS(Rat::parse("a"));
  CHECK_THROWS(Rat::parse("1/0"));
  for (long long n = -12; n <= 12; ++n)
    for (long long d = 1; d <= 9; ++d) {
      Rat r(n, d);
      CHECK(Rat::parse(r.str()) == r);
    }
}

TEST_CASE("field arithmetic", "[rational]") {
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(Rat(2, 3) / Rat(4, 9) == Rat(3, 2));
  CHECK_THROWS(Rat(1) / Rat(0));
  CHECK(Rat(1, 3) + Rat(2, 3) == Rat(1));
}

TEST_CASE("ordering by cross multiplication", "[rational]") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(7, 7) == Rat(1));
  CHECK(Rat(2, 3) <= Rat(2, 3));
  CHECK(Rat(5, 4) > Rat(1));
  CHECK(Rat(0) >= Rat(-1, 100));
}

TEST_CASE("randomized field laws", "[rational]") {
  std::mt19937_64 rng(20240816);
  auto pick = [&] {
    long long n = static_cast<long long>(rng() % 41) - 20;
    long long d = 1 + static_cast<long long>(rng() % 12);
    return Rat(n, d);
  };
  for (int i = 0; i < 2000; ++i) {
    Rat a = pick(), b = pick(), c = pick();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rat(0));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("overflow is detected, not wrapped", "[rational]") {
  Rat big(1LL << 62);
  CHECK_THROWS(big * big);
  CHECK_THROWS(big + big);
  Rat fine(1LL << 30);
  CHECK(fine * Rat(2) == Rat(1LL << 31));
}

TEST_CASE("sign helpers", "[rational]") {
  CHECK(Rat(0).is_zero());
  CHECK(Rat(1, 9).is_positive());
  CHECK_FALSE(Rat(-1, 9).is_positive());
  CHECK_FALSE(Rat(0).is_positive());
}
