#include <doctest.h>

#include "infoscale/errors.hpp"
#include "infoscale/json_io.hpp"

using namespace infoscale;

TEST_SUITE("json_io") {

TEST_CASE("distributions and observables") {
  const DiscreteDistribution p = parse_distribution(R"({"weights": [0.25, 0.75]})", "p.json");
  CHECK(p[1] == 0.75);
  CHECK(parse_distribution(R"({"weights": [1, 3]})", "p.json", Normalize::yes)[0] == 0.25);
  CHECK_THROWS_WITH_AS(parse_distribution(R"({"weights": [1, 3]})", "p.json"), doctest::Contains("p.json"), ParseError);
  CHECK_THROWS_WITH_AS(parse_distribution(R"({"w": [1]})", "p.json"), doctest::Contains("field 'weights'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_distribution(R"({"weights": [0.5, "x"]})", "p.json"), doctest::Contains("weights[1]"), ParseError);
  CHECK_THROWS_WITH_AS(parse_distribution("{\n  \"weights\": [0.5,\n  0.5\n", "p.json"), doctest::Contains("p.json:4"), ParseError);
  CHECK_THROWS_WITH_AS(parse_distribution("{\n  \"weights\": [0.5, x]\n}\n", "p.json"), doctest::Contains("p.json:2"), ParseError);
  CHECK(parse_observable(R"({"values": [1, -2]})", "f.json")[1] == -2.0);
  CHECK_THROWS_AS(parse_observable("[1, 2]", "f.json"), ParseError);
  CHECK_THROWS_AS(load_distribution("/nonexistent/p.json"), ParseError);
}

TEST_CASE("chains") {
  const TransitionMatrix t = parse_chain(R"({"rows": [[0.9, 0.1], [0.2, 0.8]], "labels": ["a", "b"]})", "c.json");
  CHECK(t(0, 1) == 0.1);
  CHECK(t.labels()[1] == "b");
  CHECK_THROWS_WITH_AS(parse_chain(R"({"rows": [[1, 0], [0, 1]]})", "c.json"), doctest::Contains("reducible"), ParseError);
  CHECK_THROWS_WITH_AS(parse_chain(R"({"rows": [[1, 0], [0, "a"]]})", "c.json"), doctest::Contains("rows[1]"), ParseError);
}

TEST_CASE("interactions") {
  const Interaction phi = parse_interaction(R"({"d": 1, "clusters": [
      {"type": "pair_product", "offsets": [[0], [1]], "coeff": -0.5},
      {"type": "field", "coeff": 0.25}]})", "i.json");
  const Interaction ref = Interaction::nearest_neighbor_ising(1, 0.5, 1.0, -0.5);
  REQUIRE(phi.clusters().size() == ref.clusters().size());
  for (std::size_t i = 0; i < ref.clusters().size(); ++i) CHECK(phi.clusters()[i].table == ref.clusters()[i].table);
  const Interaction potts = parse_interaction(R"({"d": 2, "spins": [0, 1, 2], "clusters": [
      {"type": "table", "offsets": [[0, 0], [1, 0]], "table": [1, 0, 0, 0, 1, 0, 0, 0, 1]}]})", "i.json");
  CHECK(potts.spins().size() == 3);
  CHECK(potts.triple_norm() == 1.0);
  CHECK_THROWS_WITH_AS(parse_interaction(R"({"d": 1, "clusters": [{"type": "magic", "offsets": [[0]]}]})", "i.json"),
                       doctest::Contains("clusters[0].type"), ParseError);
  CHECK_THROWS_WITH_AS(parse_interaction(R"({"d": 1, "clusters": [{"type": "product", "offsets": [[0], [1.5]], "coeff": 1}]})", "i.json"),
                       doctest::Contains("clusters[0].offsets[1]"), ParseError);
  CHECK_THROWS_AS(parse_interaction(R"({"d": 1.5, "clusters": []})", "i.json"), ParseError);
}

TEST_CASE("models") {
  const ModelSpec a = parse_model(R"({"kind": "ising1d", "beta": 1.0, "J": 1.0, "h": 0.2})", "m.json");
  CHECK(std::get<Ising1DParams>(a).h == 0.2);
  const ModelSpec b = parse_model(R"({"kind": "meanfield", "beta": 1.0, "J": 2.0, "h": 0.0, "d": 1, "branch": "lower"})", "m.json");
  CHECK(std::get<MeanFieldParams>(b).branch == Branch::negative);
  CHECK(std::get<MeanFieldParams>(b).J == 2.0);
  const ModelSpec c = parse_model(R"({"kind": "ising2d", "beta": 1.0, "J": 1.0, "branch": "minus"})", "m.json");
  CHECK(std::get<Ising2DParams>(c).branch == Branch::negative);
  CHECK(std::get<Ising2DParams>(parse_model(R"({"kind": "ising2d", "branch": "plus"})", "m.json")).branch == Branch::positive);
  CHECK_THROWS_WITH_AS(parse_model(R"({"kind": "ising2d", "h": 0.1})", "m.json"), doctest::Contains("field 'h'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_model(R"({"kind": "potts"})", "m.json"), doctest::Contains("field 'kind'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_model(R"({"kind": "meanfield", "branch": "up"})", "m.json"), doctest::Contains("field 'branch'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_model(R"({"kind": "meanfield", "d": "two"})", "m.json"), doctest::Contains("field 'd'"), ParseError);
}

}  // TEST_SUITE
