#include "orislink/fso_channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orislink/errors.hpp"
#include "orislink/specfun.hpp"

namespace orislink {

FsoLink FsoLink::from(const SystemParams& params) {
    FsoLink link;
    link.geometry = derive(params);
    link.sigma_theta = params.sigma_theta;
    link.sigma_beta = params.sigma_beta;
    link.l_ro = params.l_ro;
    link.l_ou = params.l_ou;
    link.alpha_m = params.alpha_m;
    link.mu_k = params.mu_k;
    link.delta = params.delta;
    link.pt = params.pt;
    link.sigma_nk_sq = params.sigma_nk_sq;
    link.check();
    return link;
}

void FsoLink::check() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!(positive(l_ro) && positive(l_ou) && positive(alpha_m) && positive(mu_k) && positive(delta) &&
          positive(pt) && positive(sigma_nk_sq))) {
        throw ParameterError("FsoLink: distances, coefficients, power and noise must be > 0");
    }
    if (!(sigma_theta >= 0.0 && sigma_beta >= 0.0)) throw ParameterError("FsoLink: jitter must be >= 0");
    if (!(positive(geometry.a0) && positive(geometry.w_zeq_sq) && positive(geometry.h_l) &&
          geometry.sigma_x_sq >= 0.0 && geometry.rho > 0.0)) {
        throw ParameterError("FsoLink: inconsistent derived geometry");
    }
}

double FsoLink::jitter_variance() const {
    const double lever = 1.0 + l_ro / l_ou;
    return lever * lever * sigma_theta * sigma_theta + 4.0 * sigma_beta * sigma_beta;
}

double jitter_angle_pdf(const FsoLink& link, double theta_u) {
    if (!(theta_u > 0.0) || std::isinf(theta_u)) return 0.0;
    const double s2 = link.jitter_variance();
    return theta_u / s2 * std::exp(-theta_u * theta_u / (2.0 * s2));
}

double jitter_angle_cdf(const FsoLink& link, double theta_u) {
    if (!(theta_u > 0.0)) return 0.0;
    return -std::expm1(-theta_u * theta_u / (2.0 * link.jitter_variance()));
}

double displacement(const FsoLink& link, double theta_u) { return theta_u * link.l_ou; }

double pointing_loss(const DerivedGeometry& geometry, double r) {
    return geometry.a0 * std::exp(-2.0 * r * r / geometry.w_zeq_sq);
}

double pointing_loss(const FsoLink& link, double r) { return pointing_loss(link.geometry, r); }

double pointing_loss_pdf(const FsoLink& link, double hp) {
    const double a0 = link.geometry.a0;
    const double rho = link.geometry.rho;
    if (!(hp > 0.0) || hp > a0) return 0.0;
    return rho / a0 * std::pow(hp / a0, rho - 1.0);
}

double pointing_loss_cdf(const FsoLink& link, double hp) {
    if (!(hp > 0.0)) return 0.0;
    if (hp >= link.geometry.a0) return 1.0;
    return std::pow(hp / link.geometry.a0, link.geometry.rho);
}

double turbulence_pdf(const FsoLink& link, double ha) {
    if (!(ha > 0.0) || std::isinf(ha)) return 0.0;
    const double s2 = link.geometry.sigma_x_sq;
    const double shifted = std::log(ha) + 2.0 * s2;
    return 1.0 / (2.0 * ha * std::sqrt(2.0 * std::numbers::pi * s2)) * std::exp(-shifted * shifted / (8.0 * s2));
}

double turbulence_cdf(const FsoLink& link, double ha) {
    if (!(ha > 0.0)) return 0.0;
    const double s2 = link.geometry.sigma_x_sq;
    return 0.5 * specfun::erfc(-(std::log(ha) + 2.0 * s2) / std::sqrt(8.0 * s2));
}

namespace {

// CDF of h as a function of L = ln(h / (A0 h_l)).
double composite_cdf(double log_ratio, double rho, double s2) {
    if (s2 == 0.0) return log_ratio >= 0.0 ? 1.0 : std::exp(rho * log_ratio);
    const double scale = std::sqrt(8.0 * s2);
    // No jitter: h_p == A0 and only the scintillation spreads h.
    if (std::isinf(rho)) return 0.5 * specfun::erfc((-log_ratio - 2.0 * s2) / scale);
    const double log_first = rho * log_ratio + 2.0 * rho * s2 + 2.0 * rho * rho * s2 +
                             specfun::log_erfc((log_ratio + 2.0 * s2 + 4.0 * rho * s2) / scale);
    const double first = 0.5 * std::exp(log_first);
    const double second = 0.5 * specfun::erfc((-log_ratio - 2.0 * s2) / scale);
    return std::clamp(first + second, 0.0, 1.0);
}

}  // namespace

double fading_pdf(const FsoLink& link, double h) {
    if (!(h > 0.0) || std::isinf(h)) return 0.0;
    const auto& g = link.geometry;
    const double rho = g.rho;
    const double s2 = g.sigma_x_sq;
    const double log_ratio = std::log(h / (g.a0 * g.h_l));
    if (s2 == 0.0) {
        if (log_ratio > 0.0) return 0.0;
        return rho / h * std::exp(rho * log_ratio);
    }
    if (std::isinf(rho)) {
        const double shifted = log_ratio + 2.0 * s2;
        return 1.0 / (2.0 * h * std::sqrt(2.0 * std::numbers::pi * s2)) * std::exp(-shifted * shifted / (8.0 * s2));
    }
    const double arg = (log_ratio + 2.0 * s2 + 4.0 * rho * s2) / (2.0 * std::numbers::sqrt2 * std::sqrt(s2));
    const double log_pdf = std::log(rho) - std::numbers::ln2 + rho * log_ratio - std::log(h) +
                           specfun::log_erfc(arg) + 2.0 * s2 * rho * (1.0 + rho);
    return std::exp(log_pdf);
}

double fading_cdf(const FsoLink& link, double h) {
    if (!(h > 0.0)) return 0.0;
    if (std::isinf(h)) return 1.0;
    const auto& g = link.geometry;
    return composite_cdf(std::log(h / (g.a0 * g.h_l)), g.rho, g.sigma_x_sq);
}

double optical_snr(const FsoLink& link, double h) {
    const double amp = link.mu_k * link.alpha_m * h * link.delta * link.pt;
    return 2.0 * amp * amp / link.sigma_nk_sq;
}

double gain_for_snr(const FsoLink& link, double gamma) {
    return std::sqrt(gamma * link.sigma_nk_sq / 2.0) / (link.mu_k * link.alpha_m * link.delta * link.pt);
}

double optical_snr_cdf(const FsoLink& link, double gamma) {
    if (!(gamma > 0.0)) return 0.0;
    if (std::isinf(gamma)) return 1.0;
    const auto& g = link.geometry;
    const double eta = 0.5 * std::log(gamma / 2.0) +
                       std::log(std::sqrt(link.sigma_nk_sq) /
                                (g.a0 * link.pt * link.delta * link.alpha_m * link.mu_k * g.h_l));
    return composite_cdf(eta, g.rho, g.sigma_x_sq);
}

double sample_turbulence(const FsoLink& link, RandomStream& rng) {
    const double s2 = link.geometry.sigma_x_sq;
    return std::exp(-2.0 * s2 + 2.0 * std::sqrt(s2) * rng.normal());
}

FadingDraw sample_fading_components(const FsoLink& link, RandomStream& rng) {
    FadingDraw d;
    const double s = std::sqrt(link.jitter_variance());
    const double gx = rng.normal();
    const double gy = rng.normal();
    d.theta_u = s * std::hypot(gx, gy);
    d.r = displacement(link, d.theta_u);
    d.hp = pointing_loss(link, d.r);
    d.ha = sample_turbulence(link, rng);
    d.h = link.geometry.h_l * d.hp * d.ha;
    return d;
}

double sample_fading(const FsoLink& link, RandomStream& rng) { return sample_fading_components(link, rng).h; }

}  // namespace orislink
