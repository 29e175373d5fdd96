#include "polis/economy.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "polis/errors.hpp"

namespace polis {

MarketParams MarketParams::uniform(std::size_t n_markets, double intercept,
                                   double slope, double transport_rate) {
  MarketParams p;
  p.intercept.assign(n_markets, intercept);
  p.slope.assign(n_markets, slope);
  p.transport_rate = transport_rate;
  return p;
}

TaxPolicy TaxPolicy::zero(std::size_t n_markets) {
  TaxPolicy p;
  p.rate.assign(n_markets, 0.0);
  p.fixed.assign(n_markets, 0.0);
  return p;
}

EconomyMap generate_map(std::uint64_t seed, std::size_t n_firms,
                        std::size_t n_markets, int grid_size) {
  if (n_firms < 1 || n_markets < 1 || grid_size < 1) {
    throw InvalidConfig("generate_map: firm count, market count and grid size must be >= 1");
  }
  Pcg32 rng(seed, kStreamMap);
  const auto g = static_cast<std::uint32_t>(grid_size);
  auto draw_point = [&] {
    const int x = static_cast<int>(rng.uniform_int(g));
    const int y = static_cast<int>(rng.uniform_int(g));
    return GridPoint{x, y};
  };
  EconomyMap map;
  map.grid_size = grid_size;
  map.firms.reserve(n_firms);
  map.markets.reserve(n_markets);
  for (std::size_t i = 0; i < n_firms; ++i) map.firms.push_back(draw_point());
  for (std::size_t j = 0; j < n_markets; ++j) map.markets.push_back(draw_point());
  return map;
}

double distance(GridPoint a, GridPoint b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double market_price(const MarketParams& params, std::size_t market,
                    double total_quantity) {
  return params.intercept.at(market) - params.slope.at(market) * total_quantity;
}

double profit(const MarketParams& params, const TaxPolicy& policy,
              std::size_t market, double price, double dist) {
  return (1.0 + policy.rate.at(market)) * price + policy.fixed.at(market) -
         params.transport_rate * dist;
}

void validate(const EconomyMap& map) {
  if (map.grid_size < 1) throw InvalidConfig("map: grid_size must be >= 1");
  if (map.firms.empty()) throw InvalidConfig("map: at least one firm required");
  if (map.markets.empty()) throw InvalidConfig("map: at least one market required");
  auto inside = [&](GridPoint p) {
    return p.x >= 0 && p.x < map.grid_size && p.y >= 0 && p.y < map.grid_size;
  };
  for (const auto& p : map.firms) {
    if (!inside(p)) throw InvalidConfig("map: firm outside the grid");
  }
  for (const auto& p : map.markets) {
    if (!inside(p)) throw InvalidConfig("map: market outside the grid");
  }
}

void to_json(nlohmann::json& j, const GridPoint& p) {
  j = nlohmann::json::array({p.x, p.y});
}

void from_json(const nlohmann::json& j, GridPoint& p) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("grid point must be a two-element array [x, y]");
  }
  p.x = j.at(0).get<int>();
  p.y = j.at(1).get<int>();
}

void to_json(nlohmann::json& j, const EconomyMap& map) {
  j = nlohmann::json{{"grid_size", map.grid_size},
                     {"firms", map.firms},
                     {"markets", map.markets}};
}

void from_json(const nlohmann::json& j, EconomyMap& map) {
  map.grid_size = j.at("grid_size").get<int>();
  map.firms = j.at("firms").get<std::vector<GridPoint>>();
  map.markets = j.at("markets").get<std::vector<GridPoint>>();
  validate(map);
}

void to_json(nlohmann::json& j, const TaxPolicy& policy) {
  j = nlohmann::json{{"rate", policy.rate}, {"fixed", policy.fixed}};
}

void from_json(const nlohmann::json& j, TaxPolicy& policy) {
  policy.rate = j.at("rate").get<std::vector<double>>();
  policy.fixed = j.at("fixed").get<std::vector<double>>();
  if (policy.rate.size() != policy.fixed.size()) {
    throw ParseError("policy: rate and fixed must have one entry per market");
  }
}

}  // namespace polis
