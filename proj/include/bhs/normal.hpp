#pragma once

namespace bhs {

//! Standard normal density.
double normal_pdf(double z);

//! Standard normal CDF, accurate in the lower tail (erfc based).
double normal_cdf(double z);

//! Standard normal survival function 1 - CDF, accurate in the upper tail.
double normal_sf(double z);

//! Standard normal quantile (Wichura's PPND16 rational approximation).
//! Accepts p in (0, 1); relative error is near machine precision across
//! the full range, including subnormal tail probabilities.
double normal_quantile(double p);

//! Inverse-CDF draw from N(mean, sd^2) truncated to [lo, hi], driven by a
//! uniform u in (0, 1). Either bound may be infinite. The tail whose
//! probabilities are smallest is parameterized through the survival function,
//! so draws remain accurate for intervals many standard deviations out.
//! Throws if the interval is empty.
double truncated_normal_inverse_cdf(double mean, double sd, double lo,
                                    double hi, double u);

//! Unnormalized moments of N(mean, sd^2) restricted to [lo, hi]:
//! mass = P(lo <= X <= hi), m1 = E[X; lo<=X<=hi], m2 = E[X^2; lo<=X<=hi].
struct TruncatedMoments {
  double mass = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};
TruncatedMoments truncated_normal_moments(double mean, double sd, double lo,
                                          double hi);

}  // namespace bhs
