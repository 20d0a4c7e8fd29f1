#pragma once

#include <span>
#include <string>
#include <vector>

#include "orislink/fso_channel.hpp"
#include "orislink/params.hpp"
#include "orislink/rf_channel.hpp"

namespace orislink {

/// Conditional bit-error model of each hop.
/// Optical hop: kappa * Q(sqrt(zeta * gamma)). Relay: Q(sqrt(rf_ber_scale * gamma)).
struct Modulation {
    double kappa = 1.0;
    double zeta = 0.5;
    double rf_ber_scale = 2.0;
};

/// Decode-and-forward pair of hops driven by the same transmit power.
struct LinkPair {
    RfLink rf;
    FsoLink fso;
    Modulation modulation;

    static LinkPair from(const SystemParams& params);
    /// Throws ParameterError if the hops disagree on pt or a hop is invalid.
    void check() const;
};

/// 1 - (1 - f_rf)(1 - f_fso): the link is up only if both hops are up.
double compose_outage(double f_rf, double f_fso);
/// p_rf + p_fso - 2 p_rf p_fso: the bit survives if neither or both hops flip it.
double compose_ber(double p_rf, double p_fso);

/// Exact outage at SNR threshold gamma_th (linear).
double outage_exact(const LinkPair& pair, double gamma_th);

/// High-SNR pieces shared by the asymptotic expressions:
///   optical = (sigma_nk / (A0 pt delta alpha mu h_l))^rho * exp(2 rho sx2 (1 + rho))
///   rf      = sigma_nr^2 (A^4 + 4 sigma_m^4 - 2 sigma_m^2 A^2) / (8 sigma_m^6 pt)
struct AsymptoticFactors {
    double optical = 0.0;
    double rf = 0.0;
};
AsymptoticFactors asymptotic_factors(const LinkPair& pair);

/// gamma_th^{rho/2} / 2^{rho/2+1} * optical + rf * gamma_th.
/// Not clamped; it legitimately exceeds 1 at low power.
double outage_asymptotic(const LinkPair& pair, double gamma_th);

/// rho gamma^{rho/2-1} / 2^{rho/2+2} * optical + rf.
double snr_pdf_asymptotic(const LinkPair& pair, double gamma);

/// kappa Gamma((rho+1)/2) / (4 sqrt(pi) zeta^{rho/2}) * optical + kappa rf / (2 zeta).
double ber_asymptotic(const LinkPair& pair);

struct HopBer {
    double rf = 0.0;
    double fso = 0.0;
    double rf_error = 0.0;
    double fso_error = 0.0;
};

/// Per-hop average BER by quadrature against the exact SNR distributions.
/// Uses E[kappa Q(sqrt(zeta g))] = kappa * int_0^inf F_g(u^2/zeta) phi(u) du.
/// Throws NumericalError (with the achieved error estimate) if the
/// adaptive rule does not converge.
HopBer hop_ber_numeric(const LinkPair& pair, int quad_points = 64);

/// Decode-and-forward end-to-end BER from hop_ber_numeric.
double ber_exact_numeric(const LinkPair& pair, int quad_points = 64);

enum class BerModel { asymptotic, exact_numeric };

/// Transmit power (dBm) at which the chosen BER curve crosses `target`,
/// found by bisection on [lo_dbm, hi_dbm]. BER decreases with power; throws
/// NumericalError if the target is not bracketed.
double pt_dbm_at_ber(const SystemParams& base, double target, BerModel model, double lo_dbm = -30.0,
                     double hi_dbm = 250.0);

/// Closed-form series over a transmit-power axis.
struct PerformanceCurve {
    std::vector<double> pt_dbm;
    std::vector<double> outage_exact;
    std::vector<double> outage_asymptotic;
    std::vector<double> ber_asymptotic;
    std::vector<double> ber_exact_numeric;
    /// Empty when the point evaluated cleanly; otherwise the failure.
    /// Failed points carry NaN in every series.
    std::vector<std::string> errors;

    std::size_t size() const { return pt_dbm.size(); }
    bool has_gaps() const;
};

/// Evaluates every closed-form series at each power (dBm) of a strictly
/// increasing, nonempty axis. gamma_th is linear.
PerformanceCurve sweep(const SystemParams& base, std::span<const double> pt_dbm, double gamma_th,
                       int quad_points = 64);

}  // namespace orislink
