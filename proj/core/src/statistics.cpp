#include "bog/statistics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "bog/error.hpp"

namespace bog {
namespace {

// Continued fraction for I_x(a, b), modified Lentz evaluation. Converges
// quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void require_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidInput("confidence level must be in (0,1)");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidInput("incomplete_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("incomplete_beta: x must be in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw InvalidInput("student_t_cdf: df must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, int df) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("student_t_quantile: p must be in (0,1)");
  if (df < 1) throw InvalidInput("student_t_quantile: df must be >= 1");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, df);

  const double nu = static_cast<double>(df);
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, nu) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (student_t_cdf(mid, nu) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ConfidenceInterval aggregate_replications(std::span<const double> per_replication_means,
                                          double level) {
  require_level(level);
  const std::size_t n = per_replication_means.size();
  if (n < 2) throw InvalidInput("aggregate_replications needs at least two replications");
  const double mean = mean_of(per_replication_means);
  const double s = sample_sd(per_replication_means, mean);
  const double t = student_t_quantile((1.0 + level) / 2.0, static_cast<int>(n - 1));
  const double half = t * s / std::sqrt(static_cast<double>(n));
  return {mean, mean - half, mean + half};
}

PairedDiffInterval paired_diff_interval(std::span<const double> per_class_a,
                                        std::span<const double> per_class_b, double level,
                                        std::string system_a, std::string system_b,
                                        Metric metric) {
  require_level(level);
  if (per_class_a.size() != per_class_b.size()) {
    throw InvalidInput("paired_diff_interval: " + std::to_string(per_class_a.size()) + " vs " +
                       std::to_string(per_class_b.size()) + " classes");
  }
  if (per_class_a.size() < 2) throw InvalidInput("paired_diff_interval needs at least two classes");
  std::vector<double> diff(per_class_a.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = per_class_a[i] - per_class_b[i];
  const ConfidenceInterval ci = aggregate_replications(diff, level);
  return {std::move(system_a), std::move(system_b), metric, ci.mean, ci.lo, ci.hi,
          excludes_zero(ci.lo, ci.hi)};
}

}  // namespace bog
