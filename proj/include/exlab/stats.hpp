#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace exlab::stats {

/// Sorted copy of a sample with a right-continuous ECDF.
class EmpiricalDistribution {
public:
  explicit EmpiricalDistribution(std::span<const double> samples);

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }
  /// Fraction of samples <= x.
  double cdf(double x) const;
  /// Empirical quantile, lower interpolation-free order statistic.
  double quantile(double p) const;

private:
  std::vector<double> sorted_;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov survival function P(K > lambda).
double kolmogorov_survival(double lambda);

/// Two-sample KS distance with asymptotic p-value at effective size nm/(n+m).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample KS distance against a continuous CDF.
double ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

Estimate mean_estimate(std::span<const double> xs);

/// Mean and standard error of exp(-alpha x - beta y) over aligned samples.
Estimate empirical_joint_lt(std::span<const double> xs, std::span<const double> ys, double alpha,
                            double beta);

/// Sample fraction of true values with its binomial standard error.
Estimate proportion(std::span<const char> flags);

} // namespace exlab::stats
