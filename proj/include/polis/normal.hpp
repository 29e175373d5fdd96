#ifndef POLIS_NORMAL_HPP
#define POLIS_NORMAL_HPP

namespace polis {

// Standard normal CDF.
double normal_cdf(double x);

// P(Z > z), computed without cancellation for large z.
double normal_upper_tail(double z);

// Standard normal quantile (inverse CDF) for p in (0, 1), via Wichura's
// AS 241 rational approximations; absolute error below 1e-15 in double.
double normal_quantile(double p);

// z such that P(|Z| <= z) = confidence, i.e. the half-width multiplier of a
// two-sided normal interval.
double normal_two_sided_z(double confidence);

}  // namespace polis

#endif  // POLIS_NORMAL_HPP
