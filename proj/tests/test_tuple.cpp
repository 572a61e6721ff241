#include <doctest.h>

#include "cylalg/error.hpp"
#include "cylalg/tuple.hpp"

using namespace cylalg;

TEST_CASE("extends") {
  CHECK(extends(Tuple{1, 5}, Tuple{1}));
  CHECK(extends(Tuple{1}, Tuple{1}));
  CHECK_FALSE(extends(Tuple{2}, Tuple{1}));
  CHECK(extends(Tuple{3}, Tuple{}));
  CHECK_FALSE(properly_extends(Tuple{1}, Tuple{1}));
  CHECK(properly_extends(Tuple{1, 0}, Tuple{1}));
}

TEST_CASE("compatibility") {
  CHECK(compatibility(Tuple{1, 5}, Tuple{1}) == Compatibility::AExtendsB);
  CHECK(compatibility(Tuple{1}, Tuple{1, 5}) == Compatibility::BProperlyExtendsA);
  CHECK(compatibility(Tuple{1}, Tuple{2}) == Compatibility::Disjoint);
  CHECK(compatibility(Tuple{1}, Tuple{1}) == Compatibility::AExtendsB);
}

TEST_CASE("trichotomy over short tuples") {
  std::vector<Tuple> all{Tuple{}};
  for (std::uint64_t x = 0; x < 3; ++x) {
    all.push_back(Tuple{x});
    for (std::uint64_t y = 0; y < 3; ++y) all.push_back(Tuple{x, y});
  }
  for (const auto& a : all) {
    for (const auto& b : all) {
      const int count = int(extends(a, b)) + int(properly_extends(b, a)) +
                        int(!extends(a, b) && !extends(b, a));
      CHECK(count == 1);
      const auto c = compatibility(a, b);
      CHECK((c == Compatibility::AExtendsB) == extends(a, b));
      CHECK((c == Compatibility::BProperlyExtendsA) == properly_extends(b, a));
    }
  }
}

TEST_CASE("member uses the tail") {
  const SequenceDesc x{Tuple{1, 2}, Label{0}};
  CHECK(member(x, Tuple{1}));
  CHECK(member(x, Tuple{1, 2, 0, 0}));
  CHECK_FALSE(member(x, Tuple{1, 3}));
  CHECK_FALSE(member(x, Tuple{1, 2, 0, 1}));
  CHECK(member(x, Tuple{}));
}

TEST_CASE("cylinder monotonicity") {
  const SequenceDesc x{Tuple{4, 1}, Label{2}};
  for (const Tuple& a : {Tuple{4, 1, 2}, Tuple{4, 1}, Tuple{4}}) {
    for (const Tuple& b : {Tuple{4}, Tuple{}, Tuple{4, 1}}) {
      if (extends(a, b) && member(x, a)) CHECK(member(x, b));
    }
  }
}

TEST_CASE("coordinates are 1-indexed") {
  const Tuple t{7, 8, 9};
  CHECK(t.at(1) == Label{7});
  CHECK(t.at(3) == Label{9});
  CHECK_THROWS_AS(t.at(0), PreconditionError);
  CHECK_THROWS_AS(t.at(4), PreconditionError);
  const SequenceDesc x{Tuple{1}, Label{5}};
  CHECK(x.coordinate(1) == Label{1});
  CHECK(x.coordinate(9) == Label{5});
  CHECK(x.initial(3) == Tuple{1, 5, 5});
}

TEST_CASE("sequences compare by the sequence they denote") {
  CHECK(SequenceDesc{Tuple{1, 0, 0}, Label{0}} == SequenceDesc{Tuple{1}, Label{0}});
  CHECK_FALSE(SequenceDesc{Tuple{1, 0}, Label{1}} == SequenceDesc{Tuple{1}, Label{1}});
  CHECK(SequenceDesc{Tuple{2, 2}, Label{2}}.canonical().prefix == Tuple{});
}

TEST_CASE("tuple text") {
  CHECK(to_string(Tuple{1, 5, 2}) == "(1,5,2)");
  CHECK(to_string(Tuple{}) == "()");
  CHECK(parse_tuple(" ( 1 , 5 ,2 ) ") == Tuple{1, 5, 2});
  CHECK(parse_tuple("()") == Tuple{});
  CHECK(parse_tuple("(18446744073709551615)") == Tuple{18446744073709551615ull});
  CHECK_THROWS_AS(parse_tuple("(18446744073709551616)"), ParseError);
  CHECK_THROWS_AS(parse_tuple("(1,)"), ParseError);
  CHECK_THROWS_AS(parse_tuple("(1 2)"), ParseError);
  CHECK_THROWS_AS(parse_tuple("(-1)"), ParseError);
  CHECK_THROWS_AS(parse_tuple("(1) x"), ParseError);

  const auto x = parse_sequence("(1,2)/0");
  CHECK(x.prefix == Tuple{1, 2});
  CHECK(x.tail == Label{0});
  CHECK(parse_sequence("(3)").tail == Label{0});
  CHECK(to_string(parse_sequence("(3) / 4")) == "(3)/4");
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_tuple("(1,\n  x)");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}
