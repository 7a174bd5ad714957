#include "hdl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "hdl/error.hpp"

namespace hdl {

Estimate estimate_mean(std::span<const double> values, double dt, std::string notes) {
    Estimate e;
    e.samples = values.size();
    e.dt = dt;
    e.notes = std::move(notes);
    if (values.empty()) return e;
    double sum = 0.0;
    for (double v : values) sum += v;
    e.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) e.std_error = std::sqrt(sample_variance(values) / static_cast<double>(values.size()));
    return e;
}

double sample_variance(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(values.size() - 1);
}

double kolmogorov_q(double lambda) noexcept {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Stephens' small-sample correction to the asymptotic Kolmogorov law.
double ks_p_value(double d, double effective_n) {
    const double sn = std::sqrt(effective_n);
    return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

KsResult one_sample(std::vector<double> values, const std::function<double(double)>& cdf) {
    if (values.empty()) throw DomainError("KS test needs at least one sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return {d, ks_p_value(d, n), values.size()};
}

}  // namespace

KsResult ks_test_normal(std::vector<double> values) { return one_sample(std::move(values), normal_cdf); }

KsResult ks_test_uniform(std::vector<double> values, double lo, double hi) {
    return one_sample(std::move(values), [lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); });
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("two-sample KS test needs nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return {d, ks_p_value(d, na * nb / (na + nb)), a.size() + b.size()};
}

}  // namespace hdl
