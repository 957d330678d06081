#pragma once

#include <span>
#include <string>

namespace bog {

/// Regularised incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Student's t cumulative distribution function.
double student_t_cdf(double t, double df);

/// Inverse CDF of Student's t. Throws InvalidInput unless 0 < p < 1 and
/// df >= 1.
double student_t_quantile(double p, int df);

struct ConfidenceInterval {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  double half_width() const noexcept { return hi - mean; }
};

/// mean +/- t_{(1+level)/2, n-1} * s / sqrt(n), sample standard deviation s.
/// Throws InvalidInput for fewer than two values.
ConfidenceInterval aggregate_replications(std::span<const double> per_replication_means,
                                          double level = 0.99);

enum class Metric { MAP, P10 };

struct PairedDiffInterval {
  std::string system_a;
  std::string system_b;
  Metric metric = Metric::MAP;
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool significant = false;  ///< interval excludes zero
};

/// Interval on mean(a_i - b_i), paired by class.
PairedDiffInterval paired_diff_interval(std::span<const double> per_class_a,
                                        std::span<const double> per_class_b,
                                        double level = 0.99, std::string system_a = "A",
                                        std::string system_b = "B", Metric metric = Metric::MAP);

/// True iff [lo, hi] excludes zero.
inline bool excludes_zero(double lo, double hi) noexcept { return lo > 0.0 || hi < 0.0; }

}  // namespace bog
