#pragma once

#include <optional>
#include <string>
#include <vector>

namespace orislink {

/// Which pointing-error exponent the analytic formulas use.
///
/// paper_printed: ORIS jitter term scales with the relay->ORIS distance
///   squared, as the closed-form pointing PDF is usually quoted.
/// self_consistent: ORIS jitter term scales with the ORIS->user distance
///   squared, which is what the jitter-angle PDF and the small-angle
///   displacement R = theta_u * l_ou imply (and what the ray tracer produces).
enum class GeometryMode { paper_printed, self_consistent };

std::string to_string(GeometryMode mode);
GeometryMode geometry_mode_from_string(const std::string& text);

/// Every physical input of the dual-hop link. All quantities in SI units
/// (watts, meters, radians); dB conversions happen at the config boundary.
struct SystemParams {
    double pt = 0.1;  // base-station transmit power [W]

    // Rice hop: either (rice_a, sigma_m_sq) or (rice_k, sigma_m_sq).
    std::optional<double> rice_a;
    double sigma_m_sq = 0.5;
    std::optional<double> rice_k = 10.0;  // linear, A^2 / (2 sigma_m^2)

    double sigma_nr_sq = 1e-4;  // relay noise variance [W]
    double sigma_nk_sq = 1e-4;  // user receiver noise variance [W]
    double delta = 0.8;         // optical power conversion coefficient
    double alpha_m = 0.95;      // ORIS attenuation
    double mu_k = 1.0;          // mu_{r,m} * mu_{m,k}

    double l_sr = 100.0;  // informational only
    double l_ro = 50.0;
    double l_ou = 100.0;

    double sigma_theta = 5e-3;
    double sigma_beta = 2e-3;
    double phi = 8e-3;
    double aperture_radius = 0.1;
    double wavelength = 1550e-9;

    // Turbulence: exactly one of the two.
    std::optional<double> cn2;
    std::optional<double> rytov_sq = 0.25;

    double hl_per_km = 0.1;  // dB/km over l_ro + l_ou
    double mod_kappa = 1.0;
    double mod_zeta = 0.5;

    GeometryMode geometry_mode = GeometryMode::paper_printed;

    // Simulation-only knobs.
    double incidence_angle = 0.7853981633974483;  // 45 deg
    double rf_ber_scale = 2.0;  // relay bit error probability Q(sqrt(scale * gamma))

    /// Line-of-sight amplitude A, from rice_a or from rice_k.
    double rice_amplitude() const;
    /// Rice factor K = A^2 / (2 sigma_m^2).
    double rice_factor() const;
    double link_length() const { return l_ro + l_ou; }
};

/// Constants computed once from SystemParams.
struct DerivedGeometry {
    double w_z = 0.0;         // beam radius at the receiver [m]
    double z_ratio = 0.0;     // sqrt(pi/2) a / w_z
    double a0 = 0.0;          // on-axis collected power fraction
    double w_zeq_sq = 0.0;    // equivalent beam width squared [m^2]
    double rho = 0.0;         // pointing-error exponent (+inf without jitter)
    double sigma_x_sq = 0.0;  // log-amplitude variance
    double rytov_sq = 0.0;
    double h_l = 0.0;         // deterministic path-loss gain
    double wavenumber = 0.0;  // 2 pi / lambda [rad/m]
};

struct Diagnostic {
    enum class Level { warning, error };
    Level level = Level::warning;
    std::string message;
};

/// Hard-checks every field; throws ParameterError on the first violation.
/// Returns the soft warnings (approximation validity, regime stretch).
std::vector<Diagnostic> validate(const SystemParams& params);

/// Computes the derived constants. Throws ParameterError for invalid input
/// and NumericalError if anything comes out non-finite.
DerivedGeometry derive(const SystemParams& params);

/// Pointing exponent for an explicit mode (derive() uses params.geometry_mode).
double pointing_exponent(const SystemParams& params, double w_zeq_sq, GeometryMode mode);

/// Log-amplitude variance via the 0.30545 k^{7/6} Cn^2 L^{11/6} prefactor.
/// Only meaningful when cn2 is set; kept as a cross-check of rytov/4.
double log_amplitude_variance_direct(const SystemParams& params);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

}  // namespace orislink
