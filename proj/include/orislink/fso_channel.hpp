#pragma once

#include "orislink/params.hpp"
#include "orislink/random.hpp"

namespace orislink {

/// Relay -> ORIS -> user optical hop.
///
/// The total gain is h = h_l * h_p * h_a: deterministic path loss, pointing
/// loss from transmitter and ORIS jitter, and unit-mean log-normal
/// scintillation with ln h_a ~ N(-2 sigma_x^2, 4 sigma_x^2).
struct FsoLink {
    DerivedGeometry geometry;
    double sigma_theta = 0.0;
    double sigma_beta = 0.0;
    double l_ro = 0.0;
    double l_ou = 0.0;
    double alpha_m = 0.0;
    double mu_k = 0.0;
    double delta = 0.0;
    double pt = 0.0;
    double sigma_nk_sq = 0.0;

    static FsoLink from(const SystemParams& params);
    /// Throws ParameterError if a field is non-positive or non-finite.
    void check() const;

    /// Per-axis variance s^2 of the received jitter angle theta_u.
    double jitter_variance() const;
};

// Pointing error. theta_u is Rayleigh with per-axis variance s^2.
double jitter_angle_pdf(const FsoLink& link, double theta_u);
double jitter_angle_cdf(const FsoLink& link, double theta_u);
/// Small-angle displacement R = theta_u * l_ou.
double displacement(const FsoLink& link, double theta_u);
/// Collected fraction A0 * exp(-2 r^2 / w_zeq^2).
double pointing_loss(const DerivedGeometry& geometry, double r);
double pointing_loss(const FsoLink& link, double r);
/// (rho/A0) (hp/A0)^(rho-1) on (0, A0]; zero elsewhere.
double pointing_loss_pdf(const FsoLink& link, double hp);
double pointing_loss_cdf(const FsoLink& link, double hp);

// Scintillation.
double turbulence_pdf(const FsoLink& link, double ha);
double turbulence_cdf(const FsoLink& link, double ha);

// Composite gain h = h_l h_p h_a. Both are evaluated in log space so the
// exp(+large) * erfc(+large) products never form 0 * inf.
double fading_pdf(const FsoLink& link, double h);
double fading_cdf(const FsoLink& link, double h);

/// Electrical SNR at the user: 2 mu^2 alpha^2 h^2 delta^2 pt^2 / sigma_nk^2.
double optical_snr(const FsoLink& link, double h);
/// Gain h that yields the given SNR (inverse of optical_snr).
double gain_for_snr(const FsoLink& link, double gamma);
/// CDF of the optical SNR, written in terms of
/// eta = ln(gamma/2)/2 + ln(sigma_nk / (A0 pt delta alpha mu h_l)).
double optical_snr_cdf(const FsoLink& link, double gamma);

struct FadingDraw {
    double theta_u = 0.0;
    double r = 0.0;
    double hp = 0.0;
    double ha = 0.0;
    double h = 0.0;
};

/// Log-normal scintillation draw.
double sample_turbulence(const FsoLink& link, RandomStream& rng);
/// Analytic-model draw: Rayleigh theta_u -> R -> h_p, times h_a and h_l.
FadingDraw sample_fading_components(const FsoLink& link, RandomStream& rng);
double sample_fading(const FsoLink& link, RandomStream& rng);

}  // namespace orislink
