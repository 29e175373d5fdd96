#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "polis/economy.hpp"
#include "polis/errors.hpp"
#include "polis/rng.hpp"

using namespace polis;

TEST_CASE("generate_map honors counts and bounds") {
  const EconomyMap map = generate_map(7, 100, 5, 100);
  REQUIRE(map.n_firms() == 100);
  REQUIRE(map.n_markets() == 5);
  for (const auto& p : map.firms) {
    CHECK(p.x >= 0);
    CHECK(p.x < 100);
    CHECK(p.y >= 0);
    CHECK(p.y < 100);
  }
  validate(map);
}

TEST_CASE("generate_map is deterministic in the seed") {
  CHECK(generate_map(3, 20, 4, 50) == generate_map(3, 20, 4, 50));
  CHECK(generate_map(3, 20, 4, 50) != generate_map(4, 20, 4, 50));
}

TEST_CASE("single-tile grid forces every point to the origin") {
  const EconomyMap map = generate_map(9, 1, 1, 1);
  CHECK(map.firms == std::vector<GridPoint>{{0, 0}});
  CHECK(map.markets == std::vector<GridPoint>{{0, 0}});
}

TEST_CASE("generate_map rejects zero counts and grid") {
  CHECK_THROWS_AS(generate_map(1, 0, 5, 100), InvalidConfig);
  CHECK_THROWS_AS(generate_map(1, 100, 0, 100), InvalidConfig);
  CHECK_THROWS_AS(generate_map(1, 100, 5, 0), InvalidConfig);
}

TEST_CASE("distance basics") {
  CHECK(distance({0, 0}, {0, 0}) == 0.0);
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  CHECK(distance({10, 10}, {13, 14}) == 5.0);
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
  Pcg32 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const GridPoint a{static_cast<int>(rng.uniform_int(100)), static_cast<int>(rng.uniform_int(100))};
    const GridPoint b{static_cast<int>(rng.uniform_int(100)), static_cast<int>(rng.uniform_int(100))};
    const GridPoint c{static_cast<int>(rng.uniform_int(100)), static_cast<int>(rng.uniform_int(100))};
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST_CASE("market_price applies linear demand, negative prices allowed") {
  const MarketParams params = MarketParams::uniform(5);
  CHECK(market_price(params, 0, 0.0) == 200.0);
  CHECK(market_price(params, 2, 20.0) == 140.0);
  CHECK(market_price(params, 4, 100.0) == -100.0);
}

TEST_CASE("profit reduces to price minus transport under the zero policy") {
  const MarketParams params = MarketParams::uniform(5);
  const TaxPolicy zero = TaxPolicy::zero(5);
  CHECK(profit(params, zero, 0, 140.0, 50.0) == 90.0);

  TaxPolicy policy = TaxPolicy::zero(5);
  policy.rate[1] = 0.1;
  policy.fixed[1] = 10.0;
  CHECK(profit(params, policy, 1, 140.0, 50.0) == doctest::Approx(114.0).epsilon(1e-12));

  TaxPolicy boundary = TaxPolicy::zero(5);
  boundary.rate[3] = -0.25;
  boundary.fixed[3] = -50.0;
  CHECK(profit(params, boundary, 3, 0.0, 0.0) == -50.0);
}

TEST_CASE("profit is affine in price and distance with the stated coefficients") {
  const MarketParams params = MarketParams::uniform(3, 150.0, 2.0, 1.5);
  TaxPolicy policy = TaxPolicy::zero(3);
  policy.rate = {0.2, -0.1, 0.0};
  policy.fixed = {5.0, -3.0, 1.0};
  Pcg32 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t j = rng.uniform_int(3);
    const double price = rng.uniform_real(-100.0, 300.0);
    const double dist = rng.uniform_real(0.0, 140.0);
    const double base = profit(params, policy, j, price, dist);
    const double dp = profit(params, policy, j, price + 1.0, dist) - base;
    const double dd = profit(params, policy, j, price, dist + 1.0) - base;
    CHECK(dp == doctest::Approx(1.0 + policy.rate[j]).epsilon(1e-9));
    CHECK(dd == doctest::Approx(-params.transport_rate).epsilon(1e-9));
    const TaxPolicy zero = TaxPolicy::zero(3);
    CHECK(profit(params, zero, j, price, dist) ==
          doctest::Approx(price - params.transport_rate * dist).epsilon(1e-12));
  }
}

TEST_CASE("economy map JSON round-trips exactly") {
  const EconomyMap map = generate_map(17, 23, 3, 40);
  nlohmann::json j = map;
  CHECK(j.at("grid_size") == 40);
  CHECK(j.at("firms").size() == 23);
  const auto back = j.get<EconomyMap>();
  CHECK(back == map);
  // Through text as the CLI would write it.
  const auto reparsed = nlohmann::json::parse(j.dump(2)).get<EconomyMap>();
  CHECK(reparsed == map);
}

TEST_CASE("map JSON validation rejects out-of-grid points") {
  nlohmann::json j = {{"grid_size", 10},
                      {"firms", {{3, 4}, {10, 0}}},
                      {"markets", {{1, 1}}}};
  CHECK_THROWS_AS(j.get<EconomyMap>(), InvalidConfig);
}

TEST_CASE("tax policy JSON round-trips and validates lengths") {
  TaxPolicy policy;
  policy.rate = {0.1, -0.2};
  policy.fixed = {5.0, -7.5};
  nlohmann::json j = policy;
  CHECK(j.get<TaxPolicy>() == policy);
  nlohmann::json bad = {{"rate", {0.1}}, {"fixed", {1.0, 2.0}}};
  CHECK_THROWS_AS(bad.get<TaxPolicy>(), ParseError);
}
