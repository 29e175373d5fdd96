#ifndef POLIS_ECONOMY_HPP
#define POLIS_ECONOMY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "polis/rng.hpp"

namespace polis {

struct GridPoint {
  int x = 0;
  int y = 0;
  bool operator==(const GridPoint&) const = default;
};

// Static geography: firm and market tiles on a square grid.
struct EconomyMap {
  int grid_size = 100;
  std::vector<GridPoint> firms;
  std::vector<GridPoint> markets;

  std::size_t n_firms() const { return firms.size(); }
  std::size_t n_markets() const { return markets.size(); }
  bool operator==(const EconomyMap&) const = default;
};

// Per-market linear inverse demand p_j = intercept_j - slope_j * Q_j, plus the
// shared transport cost rate per tile of Euclidean distance.
struct MarketParams {
  std::vector<double> intercept;
  std::vector<double> slope;
  double transport_rate = 1.0;

  std::size_t n_markets() const { return intercept.size(); }
  bool operator==(const MarketParams&) const = default;

  static MarketParams uniform(std::size_t n_markets, double intercept = 200.0,
                              double slope = 3.0, double transport_rate = 1.0);
};

// Per-market policy: `rate` scales the price a seller pockets, `fixed` is a
// lump transfer. Positive values are subsidies, negative values taxes.
struct TaxPolicy {
  std::vector<double> rate;
  std::vector<double> fixed;

  std::size_t n_markets() const { return rate.size(); }
  bool operator==(const TaxPolicy&) const = default;

  static TaxPolicy zero(std::size_t n_markets);
};

// Uniform independent placement on integer tiles; deterministic in the seed.
// Firms drawn first, then markets; x before y for each point.
EconomyMap generate_map(std::uint64_t seed, std::size_t n_firms,
                        std::size_t n_markets, int grid_size);

double distance(GridPoint a, GridPoint b);

// May be negative; demand is applied unconditionally.
double market_price(const MarketParams& params, std::size_t market,
                    double total_quantity);

// Profit of one unit sold in `market`: (1 + rate) * price + fixed - c * dist.
double profit(const MarketParams& params, const TaxPolicy& policy,
              std::size_t market, double price, double dist);

// Throws InvalidConfig when points fall outside the grid or a side is empty.
void validate(const EconomyMap& map);

void to_json(nlohmann::json& j, const GridPoint& p);
void from_json(const nlohmann::json& j, GridPoint& p);
void to_json(nlohmann::json& j, const EconomyMap& map);
void from_json(const nlohmann::json& j, EconomyMap& map);
void to_json(nlohmann::json& j, const TaxPolicy& policy);
void from_json(const nlohmann::json& j, TaxPolicy& policy);

}  // namespace polis

#endif  // POLIS_ECONOMY_HPP
