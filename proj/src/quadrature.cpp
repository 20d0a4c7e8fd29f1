#include "orislink/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orislink::quad {

GaussLegendre::GaussLegendre(int points) {
    if (points < 1) throw std::invalid_argument("GaussLegendre: points must be >= 1");
    const int n = points;
    nodes_.resize(n);
    weights_.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and its derivative.
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        weights_[i] = w;
        weights_[n - 1 - i] = w;
    }
    if (n == 1) {
        nodes_[0] = 0.0;
        weights_[0] = 2.0;
    }
}

double GaussLegendre::apply(const std::function<double(double)>& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
    return half * sum;
}

namespace {

struct Refiner {
    const std::function<double(double)>& f;
    const GaussLegendre& rule;
    int max_depth;
    Result out{};

    void refine(double a, double b, double whole, double tol, int depth) {
        const double mid = 0.5 * (a + b);
        const double left = rule.apply(f, a, mid);
        const double right = rule.apply(f, mid, b);
        const double diff = std::abs(left + right - whole);
        if (diff <= tol || depth >= max_depth || !(mid > a && mid < b)) {
            out.value += left + right;
            out.error_estimate += diff;
            if (diff > tol) out.converged = false;
            return;
        }
        refine(a, mid, left, 0.5 * tol, depth + 1);
        refine(mid, b, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

Result integrate(const std::function<double(double)>& f, std::span<const double> breaks, int points,
                 double rel_tol, double abs_tol, int max_depth) {
    if (breaks.size() < 2) throw std::invalid_argument("quad::integrate: need at least two breakpoints");
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        if (!(breaks[i] > breaks[i - 1])) throw std::invalid_argument("quad::integrate: breaks must increase");
    }
    const GaussLegendre rule(points);
    std::vector<double> coarse(breaks.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        coarse[i] = rule.apply(f, breaks[i], breaks[i + 1]);
        total += coarse[i];
    }
    const double span = breaks.back() - breaks.front();
    const double budget = std::max(rel_tol * std::abs(total), abs_tol);
    Refiner refiner{f, rule, max_depth};
    refiner.out.converged = true;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        // Share the error budget across panels, with a floor so tiny panels
        // near a singular endpoint are not held to an absurd standard.
        const double share = std::max(budget * (breaks[i + 1] - breaks[i]) / span,
                                      budget / static_cast<double>(4 * (breaks.size() - 1)));
        refiner.refine(breaks[i], breaks[i + 1], coarse[i], share, 0);
    }
    if (!std::isfinite(refiner.out.value)) refiner.out.converged = false;
    return refiner.out;
}

}  // namespace orislink::quad
