#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hdl {

/// A Monte Carlo mean with its standard error (sample standard deviation / sqrt(samples)).
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    double dt = 0.0;
    std::string notes;
};

/// Mean and standard error accumulated in index order.
[[nodiscard]] Estimate estimate_mean(std::span<const double> values, double dt = 0.0, std::string notes = {});

/// Unbiased sample variance in index order.
[[nodiscard]] double sample_variance(std::span<const double> values);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t samples = 0;
};

/// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
[[nodiscard]] double kolmogorov_q(double lambda) noexcept;

/// One-sample test of `values` against the standard normal. Input need not be sorted.
[[nodiscard]] KsResult ks_test_normal(std::vector<double> values);
/// Two-sample Kolmogorov-Smirnov test.
[[nodiscard]] KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);
/// One-sample test against Uniform(lo, hi).
[[nodiscard]] KsResult ks_test_uniform(std::vector<double> values, double lo, double hi);

[[nodiscard]] double normal_cdf(double x) noexcept;

}  // namespace hdl
