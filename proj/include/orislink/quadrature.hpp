#pragma once

#include <functional>
#include <span>
#include <vector>

namespace orislink::quad {

/// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
public:
    explicit GaussLegendre(int points);

    int size() const { return static_cast<int>(nodes_.size()); }
    /// Integral of f over [a, b] with this rule.
    double apply(const std::function<double(double)>& f, double a, double b) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Adaptive composite Gauss-Legendre over the panels delimited by `breaks`
/// (strictly increasing). Each panel is bisected until the one-panel and
/// two-half-panel estimates agree to rel_tol of the running total (or to
/// abs_tol), with at most max_depth bisections.
Result integrate(const std::function<double(double)>& f, std::span<const double> breaks, int points,
                 double rel_tol, double abs_tol = 0.0, int max_depth = 30);

}  // namespace orislink::quad
