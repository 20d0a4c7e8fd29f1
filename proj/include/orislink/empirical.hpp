#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace orislink {

struct KsResult {
    double statistic = 0.0;  // sup |F_n - F|
    double p_value = 0.0;    // asymptotic two-sided Kolmogorov p-value
};

/// Asymptotic Kolmogorov tail P[sqrt(n) D > ...] with the usual
/// (sqrt(n) + 0.12 + 0.11/sqrt(n)) small-sample correction.
double kolmogorov_p_value(double statistic, std::size_t n);

/// Step-function CDF of a sample plus a one-sample KS test.
class EmpiricalCdf {
public:
    /// Throws std::invalid_argument for fewer than 1000 samples or NaNs.
    explicit EmpiricalCdf(std::vector<double> samples);

    double operator()(double x) const;
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted() const { return sorted_; }

    KsResult ks_test(const std::function<double(double)>& reference_cdf) const;

private:
    std::vector<double> sorted_;
};

inline constexpr std::size_t kMinEmpiricalSamples = 1000;

}  // namespace orislink
