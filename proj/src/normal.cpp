#include "bhs/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bhs {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double horner7(const double* c, double r) {
  double acc = c[7];
  for (int i = 6; i >= 0; --i) acc = acc * r + c[i];
  return acc;
}

}  // namespace

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

// Wichura (1988), algorithm AS 241, PPND16. Three rational approximations:
// a central one in p, and two tail ones in sqrt(-log(tail probability)).
double normal_quantile(double p) {
  static const double a[8] = {
      3.3871328727963666080e0, 1.3314166789178437745e2,
      1.9715909503065514427e3, 1.3731693765509461125e4,
      4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3};
  static const double b[8] = {
      1.0,                     4.2313330701600911252e1,
      6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4,
      2.8729085735721942674e4, 5.2264952788528545610e3};
  static const double c[8] = {
      1.42343711074968357734e0,  4.63033784615654529590e0,
      5.76949722146069140550e0,  3.64784832476320460504e0,
      1.27045825245236838258e0,  2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static const double d[8] = {
      1.0,                       2.05319162663775882187e0,
      1.67638483018380384940e0,  6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static const double e[8] = {
      6.65790464350110377720e0,  5.46378491116411436990e0,
      1.78482653991729133580e0,  2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static const double f[8] = {
      1.0,                       5.99832206555887937690e-1,
      1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * horner7(a, r) / horner7(b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = horner7(c, r) / horner7(d, r);
  } else {
    r -= 5.0;
    x = horner7(e, r) / horner7(f, r);
  }
  return q < 0.0 ? -x : x;
}

double truncated_normal_inverse_cdf(double mean, double sd, double lo,
                                    double hi, double u) {
  if (!(sd > 0.0)) throw std::invalid_argument("truncated normal: sd <= 0");
  if (!(lo < hi)) throw std::invalid_argument("truncated normal: empty interval");
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("truncated normal: u outside (0, 1)");

  const double alpha = (lo - mean) / sd;
  const double beta = (hi - mean) / sd;

  double z;
  if (alpha > 0.0) {
    // Right tail: both survival values are small and accurately computed.
    const double sa = normal_sf(alpha);
    const double sb = std::isinf(beta) ? 0.0 : normal_sf(beta);
    const double s = sa - u * (sa - sb);
    if (s <= 0.0) return hi;  // interval mass below double resolution
    z = -normal_quantile(s);
  } else if (beta < 0.0) {
    // Left tail, mirrored.
    const double ca = std::isinf(alpha) ? 0.0 : normal_cdf(alpha);
    const double cb = normal_cdf(beta);
    const double cdfv = ca + u * (cb - ca);
    if (cdfv <= 0.0) return lo;
    z = normal_quantile(cdfv);
  } else {
    // Interval straddles the mean; plain CDF interpolation is well scaled.
    const double ca = std::isinf(alpha) ? 0.0 : normal_cdf(alpha);
    const double cb = std::isinf(beta) ? 1.0 : normal_cdf(beta);
    z = normal_quantile(ca + u * (cb - ca));
  }
  // Clamp against rounding past the truncation bounds.
  z = std::min(std::max(z, alpha), beta);
  return mean + sd * z;
}

TruncatedMoments truncated_normal_moments(double mean, double sd, double lo,
                                          double hi) {
  if (!(sd > 0.0)) throw std::invalid_argument("truncated normal: sd <= 0");
  TruncatedMoments out;
  if (!(lo < hi)) return out;

  const double alpha = (lo - mean) / sd;
  const double beta = (hi - mean) / sd;
  const double phi_a = std::isinf(alpha) ? 0.0 : normal_pdf(alpha);
  const double phi_b = std::isinf(beta) ? 0.0 : normal_pdf(beta);

  double mass;
  if (alpha > 0.0)
    mass = normal_sf(alpha) - (std::isinf(beta) ? 0.0 : normal_sf(beta));
  else if (beta < 0.0)
    mass = normal_cdf(beta) - (std::isinf(alpha) ? 0.0 : normal_cdf(alpha));
  else
    mass = (std::isinf(beta) ? 1.0 : normal_cdf(beta)) -
           (std::isinf(alpha) ? 0.0 : normal_cdf(alpha));
  mass = std::max(mass, 0.0);

  // With x = mean + sd z:  E[x; .] = mean*mass + sd(phi(alpha) - phi(beta)),
  // E[x^2; .] = (mean^2 + sd^2) mass + sd((lo+mean)phi(alpha) - (hi+mean)phi(beta)),
  // where the boundary terms vanish at infinite limits.
  const double ta = std::isinf(alpha) ? 0.0 : (lo + mean) * phi_a;
  const double tb = std::isinf(beta) ? 0.0 : (hi + mean) * phi_b;
  out.mass = mass;
  out.m1 = mean * mass + sd * (phi_a - phi_b);
  out.m2 = (mean * mean + sd * sd) * mass + sd * (ta - tb);
  return out;
}

}  // namespace bhs
