#pragma once

#include "orislink/params.hpp"
#include "orislink/random.hpp"

namespace orislink {

/// Rice-faded base-station -> relay hop.
struct RfLink {
    double a_peak = 0.0;      // line-of-sight amplitude A (normalized)
    double sigma_m_sq = 0.0;  // diffuse multipath power (normalized)
    double sigma_nr_sq = 0.0; // relay noise variance [W]
    double pt = 0.0;          // transmit power [W]

    static RfLink from(const SystemParams& params);
    /// Throws ParameterError unless sigma_m_sq > 0, a_peak >= 0, pt > 0, sigma_nr_sq > 0.
    void check() const;
};

/// Rice density of the received envelope nu (unit transmit power).
double envelope_pdf(const RfLink& link, double v);

/// Density of the relay SNR gamma = pt * nu^2 / sigma_nr^2.
double snr_pdf(const RfLink& link, double gamma);

/// P[gamma <= x] = 1 - Q1(A/sigma_m, (sigma_nr/sigma_m) sqrt(x/pt)).
double snr_cdf(const RfLink& link, double x);
/// P[gamma > x], computed directly so it keeps precision as the CDF nears 1.
double snr_ccdf(const RfLink& link, double x);

/// Draws nu as |A + sigma_m (g1 + j g2)| from two standard normals.
double sample_envelope(const RfLink& link, RandomStream& rng);

/// Relay SNR for a given envelope.
double rf_snr(const RfLink& link, double nu);

}  // namespace orislink
