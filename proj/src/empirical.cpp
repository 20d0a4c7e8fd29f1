#include "orislink/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orislink {

double kolmogorov_p_value(double statistic, std::size_t n) {
    const double root_n = std::sqrt(static_cast<double>(n));
    const double lambda = (root_n + 0.12 + 0.11 / root_n) * statistic;
    if (lambda < 1e-3) return 1.0;
    // Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2)
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum) || term == 0.0) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.size() < kMinEmpiricalSamples) {
        throw std::invalid_argument("EmpiricalCdf: at least 1000 samples are required");
    }
    if (std::any_of(sorted_.begin(), sorted_.end(), [](double v) { return std::isnan(v); })) {
        throw std::invalid_argument("EmpiricalCdf: NaN sample");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

KsResult EmpiricalCdf::ks_test(const std::function<double(double)>& reference_cdf) const {
    const double n = static_cast<double>(sorted_.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_.size(); ++i) {
        const double f = reference_cdf(sorted_[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, kolmogorov_p_value(d, sorted_.size())};
}

}  // namespace orislink
