#pragma once

// Optical-channel oracles built from the component densities by quadrature.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "orislink/fso_channel.hpp"

namespace oracle {

inline double normal_pdf(double x, double mean, double var) {
    return std::exp(-(x - mean) * (x - mean) / (2 * var)) / std::sqrt(2 * std::numbers::pi * var);
}

// h density as the h_a-mixture of the conditional pointing density, in t = ln h_a.
inline double mixture_pdf(const orislink::FsoLink& link, double h) {
    const auto& g = link.geometry;
    const double s2 = g.sigma_x_sq;
    const double base = g.a0 * g.h_l;
    const double lo = std::log(h / base);
    const double mean = -2 * s2;
    const double sd = 2 * std::sqrt(s2);
    const double hi = std::max(lo, mean) + 40 * sd;
    const auto integrand = [&](double t) {
        return g.rho * std::pow(h, g.rho - 1) * std::exp(-g.rho * (std::log(base) + t)) * normal_pdf(t, mean, 4 * s2);
    };
    std::vector<double> cuts;
    for (int k = -8; k <= 8; ++k) cuts.push_back(mean + k * sd);
    return piecewise(integrand, lo, hi, cuts);
}

// int_0^h pdf, in y = ln h.
inline double pdf_integral(const orislink::FsoLink& link, double h) {
    const double top = std::log(h);
    const auto integrand = [&](double y) { return orislink::fading_pdf(link, std::exp(y)) * std::exp(y); };
    const std::vector<double> cuts{top - 200, top - 60, top - 20, top - 8, top - 3, top - 1};
    return piecewise(integrand, top - 400, top, cuts);
}

}  // namespace oracle
