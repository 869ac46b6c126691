#include <doctest.h>

#include "avc/model.hpp"

using namespace avc;

TEST_CASE("configuration report lists collisions and out-of-range walkers") {
  CHECK(validate_configuration(Configuration(5, {1, 2, 3})).ok);
  const auto r = validate_configuration(Configuration(4, {2, 5, 2, 0}));
  CHECK_FALSE(r.ok);
  REQUIRE(r.collisions.size() == 1);
  CHECK(r.collisions[0] == std::pair<WalkerId, WalkerId>{1, 3});
  CHECK(r.out_of_range == std::vector<WalkerId>{2, 4});
}

TEST_CASE("move orders convert between positions and sequences") {
  const std::vector<WalkerId> seq{3, 1, 2};
  const auto o = MoveOrder::from_sequence(seq);
  CHECK(o.position(3) == 1);
  CHECK(o.position(1) == 2);
  CHECK(o.sequence() == seq);
  CHECK_THROWS_AS(MoveOrder({1, 1, 2}), ParameterError);
  CHECK_THROWS_AS(MoveOrder({0, 1}), ParameterError);
}

TEST_CASE("partial orders reject cycles and check move orders") {
  CHECK_THROWS_AS(PartialOrder(3, {{1, 2}, {2, 3}, {3, 1}}), ParameterError);
  CHECK_THROWS_AS(PartialOrder(2, {{1, 1}}), ParameterError);
  CHECK_THROWS_AS(PartialOrder(2, {{1, 3}}), ParameterError);
  const PartialOrder r(3, {{1, 2}});
  CHECK(order_respects(MoveOrder::from_sequence(std::vector<WalkerId>{3, 1, 2}), r));
  CHECK(order_respects(MoveOrder::from_sequence(std::vector<WalkerId>{1, 3, 2}), r));
  CHECK_FALSE(order_respects(MoveOrder::from_sequence(std::vector<WalkerId>{2, 3, 1}), r));
  CHECK_THROWS_AS(order_respects(MoveOrder::identity(2), r), ParameterError);

  const auto chain = PartialOrder::chain(3);
  CHECK(order_respects(MoveOrder::identity(3), chain));
  CHECK_FALSE(order_respects(MoveOrder::from_sequence(std::vector<WalkerId>{1, 3, 2}), chain));
  const auto wider = r.with_extra_walkers(1);
  CHECK(wider.k() == 4);
  CHECK(wider.relations() == r.relations());
}

TEST_CASE("trajectory stores frames flat and validates their shape") {
  Trajectory t(5, 2, true);
  const std::vector<Vertex> c0{1, 2}, c1{3, 1};
  const std::vector<int> o{1, 2};
  const std::vector<Vertex> l{1, 2, 3, 4, 5};
  t.push(c0, o, l);
  t.push(c1, o, l);
  CHECK(t.size() == 2);
  CHECK(t.frame(1).config[0] == 3);
  CHECK(t.frame(1).t == 1);
  CHECK(t.labels(0).size() == 5);
  CHECK_THROWS_AS(t.push(c0, o), ParameterError);
  const std::vector<Vertex> three{1, 2, 3};
  CHECK_THROWS_AS(t.push(three, o, l), ParameterError);
}
