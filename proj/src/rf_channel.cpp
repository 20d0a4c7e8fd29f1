#include "orislink/rf_channel.hpp"

#include <cmath>
#include <limits>

#include "orislink/errors.hpp"
#include "orislink/specfun.hpp"

namespace orislink {

RfLink RfLink::from(const SystemParams& params) {
    RfLink link{params.rice_amplitude(), params.sigma_m_sq, params.sigma_nr_sq, params.pt};
    link.check();
    return link;
}

void RfLink::check() const {
    if (!(sigma_m_sq > 0.0) || !std::isfinite(sigma_m_sq)) throw ParameterError("RfLink: sigma_m_sq must be > 0");
    if (!(a_peak >= 0.0) || !std::isfinite(a_peak)) throw ParameterError("RfLink: A must be >= 0");
    if (!(pt > 0.0) || !std::isfinite(pt)) throw ParameterError("RfLink: pt must be > 0");
    if (!(sigma_nr_sq > 0.0) || !std::isfinite(sigma_nr_sq)) throw ParameterError("RfLink: sigma_nr_sq must be > 0");
}

double envelope_pdf(const RfLink& link, double v) {
    if (!(v > 0.0)) return 0.0;
    if (std::isinf(v)) return 0.0;
    const double s2 = link.sigma_m_sq;
    const double x = v * link.a_peak / s2;
    // exp(-(v^2+A^2)/(2 s2)) I0(x) == exp(-(v-A)^2/(2 s2)) * [exp(-x) I0(x)]
    const double d = v - link.a_peak;
    return (v / s2) * std::exp(-d * d / (2.0 * s2)) * specfun::bessel_i_scaled(0, x);
}

double snr_pdf(const RfLink& link, double gamma) {
    if (gamma < 0.0 || std::isinf(gamma)) return 0.0;
    const double s2 = link.sigma_m_sq;
    const double v = std::sqrt(link.sigma_nr_sq * gamma / link.pt);
    const double x = v * link.a_peak / s2;
    const double d = v - link.a_peak;
    return link.sigma_nr_sq / (2.0 * link.pt * s2) * std::exp(-d * d / (2.0 * s2)) *
           specfun::bessel_i_scaled(0, x);
}

double snr_cdf(const RfLink& link, double x) {
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double sigma_m = std::sqrt(link.sigma_m_sq);
    const double b = std::sqrt(link.sigma_nr_sq / link.sigma_m_sq) * std::sqrt(x / link.pt);
    return specfun::marcum_q1_complement(link.a_peak / sigma_m, b);
}

double snr_ccdf(const RfLink& link, double x) {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double sigma_m = std::sqrt(link.sigma_m_sq);
    const double b = std::sqrt(link.sigma_nr_sq / link.sigma_m_sq) * std::sqrt(x / link.pt);
    return specfun::marcum_q1(link.a_peak / sigma_m, b);
}

double sample_envelope(const RfLink& link, RandomStream& rng) {
    const double sigma_m = std::sqrt(link.sigma_m_sq);
    const double in_phase = link.a_peak + sigma_m * rng.normal();
    const double quadrature = sigma_m * rng.normal();
    return std::hypot(in_phase, quadrature);
}

double rf_snr(const RfLink& link, double nu) { return link.pt * nu * nu / link.sigma_nr_sq; }

}  // namespace orislink
