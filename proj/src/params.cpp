#include "orislink/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "orislink/errors.hpp"
#include "orislink/specfun.hpp"

namespace orislink {

namespace {

constexpr double kApproxValidityRatio = 6.0;
constexpr double kNegligiblePointingRho = 20.0;
constexpr double kWeakTurbulenceLimit = 1.0;
// Incidence angles closer than this to pi/2 are treated as grazing.
constexpr double kGrazingMargin = 1e-3;

void require(bool ok, const std::string& message) {
    if (!ok) throw ParameterError(message);
}

void require_positive(double v, const char* name) {
    require(std::isfinite(v) && v > 0.0, fmt::format("{} must be finite and > 0 (got {})", name, v));
}

void require_nonneg(double v, const char* name) {
    require(std::isfinite(v) && v >= 0.0, fmt::format("{} must be finite and >= 0 (got {})", name, v));
}

void require_unit_interval(double v, const char* name) {
    require(std::isfinite(v) && v > 0.0 && v <= 1.0, fmt::format("{} must lie in (0, 1] (got {})", name, v));
}

void check_hard(const SystemParams& p) {
    require_positive(p.pt, "pt");
    require_positive(p.sigma_m_sq, "sigma_m_sq");
    require(p.rice_a.has_value() != p.rice_k.has_value(), "exactly one of rice_a or rice_k must be given");
    if (p.rice_a) require_nonneg(*p.rice_a, "rice_a");
    if (p.rice_k) require_nonneg(*p.rice_k, "rice_k");
    require_positive(p.sigma_nr_sq, "sigma_nr_sq");
    require_positive(p.sigma_nk_sq, "sigma_nk_sq");
    require_unit_interval(p.delta, "delta");
    require_unit_interval(p.alpha_m, "alpha_m");
    require_unit_interval(p.mu_k, "mu_k");
    require_positive(p.l_sr, "l_sr");
    require_positive(p.l_ro, "l_ro");
    require_positive(p.l_ou, "l_ou");
    require_nonneg(p.sigma_theta, "sigma_theta");
    require_nonneg(p.sigma_beta, "sigma_beta");
    require_positive(p.phi, "phi");
    require_positive(p.aperture_radius, "aperture_radius");
    require_positive(p.wavelength, "wavelength");
    require(p.cn2.has_value() != p.rytov_sq.has_value(), "exactly one of cn2 or rytov_sq must be given");
    if (p.cn2) require_nonneg(*p.cn2, "cn2");
    if (p.rytov_sq) require_nonneg(*p.rytov_sq, "rytov_sq");
    require_nonneg(p.hl_per_km, "hl_per_km");
    require_positive(p.mod_kappa, "mod_kappa");
    require_positive(p.mod_zeta, "mod_zeta");
    require(std::isfinite(p.incidence_angle) && p.incidence_angle >= 0.0 &&
                p.incidence_angle < std::numbers::pi / 2 - kGrazingMargin,
            fmt::format("incidence_angle must lie in [0, pi/2) and not be grazing (got {})", p.incidence_angle));
    require_positive(p.rf_ber_scale, "rf_ber_scale");
}

}  // namespace

std::string to_string(GeometryMode mode) {
    return mode == GeometryMode::paper_printed ? "paper-printed" : "self-consistent";
}

GeometryMode geometry_mode_from_string(const std::string& text) {
    if (text == "paper-printed") return GeometryMode::paper_printed;
    if (text == "self-consistent") return GeometryMode::self_consistent;
    throw ParameterError("geometry_mode must be 'paper-printed' or 'self-consistent' (got '" + text + "')");
}

double SystemParams::rice_amplitude() const {
    if (rice_a) return *rice_a;
    if (rice_k) return std::sqrt(2.0 * *rice_k * sigma_m_sq);
    throw ParameterError("neither rice_a nor rice_k is set");
}

double SystemParams::rice_factor() const {
    const double a = rice_amplitude();
    return a * a / (2.0 * sigma_m_sq);
}

double pointing_exponent(const SystemParams& p, double w_zeq_sq, GeometryMode mode) {
    const double length = p.link_length();
    const double oris_lever = mode == GeometryMode::paper_printed ? p.l_ro : p.l_ou;
    const double denom = 4.0 * p.sigma_theta * p.sigma_theta * length * length +
                         16.0 * p.sigma_beta * p.sigma_beta * oris_lever * oris_lever;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return w_zeq_sq / denom;
}

double log_amplitude_variance_direct(const SystemParams& p) {
    if (!p.cn2) throw ParameterError("log_amplitude_variance_direct needs cn2");
    const double k = 2.0 * std::numbers::pi / p.wavelength;
    return 0.30545 * std::pow(k, 7.0 / 6.0) * *p.cn2 * std::pow(p.link_length(), 11.0 / 6.0);
}

namespace {

DerivedGeometry compute(const SystemParams& p) {
    DerivedGeometry g;
    const double length = p.link_length();
    g.w_z = p.phi * length;
    g.z_ratio = std::sqrt(std::numbers::pi / 2.0) * p.aperture_radius / g.w_z;
    const double erf_z = specfun::erf(g.z_ratio);
    g.a0 = erf_z * erf_z;
    g.w_zeq_sq = g.w_z * g.w_z * std::sqrt(std::numbers::pi) * erf_z /
                 (2.0 * g.z_ratio * std::exp(-g.z_ratio * g.z_ratio));
    g.rho = pointing_exponent(p, g.w_zeq_sq, p.geometry_mode);
    g.wavenumber = 2.0 * std::numbers::pi / p.wavelength;
    if (p.cn2) {
        g.rytov_sq = 1.23 * *p.cn2 * std::pow(g.wavenumber, 7.0 / 6.0) * std::pow(length, 11.0 / 6.0);
    } else {
        g.rytov_sq = *p.rytov_sq;
    }
    g.sigma_x_sq = g.rytov_sq / 4.0;
    g.h_l = std::pow(10.0, -(p.hl_per_km * length / 1000.0) / 10.0);

    for (double v : {g.w_z, g.z_ratio, g.a0, g.w_zeq_sq, g.sigma_x_sq, g.rytov_sq, g.h_l, g.wavenumber}) {
        if (!std::isfinite(v)) throw NumericalError("derive: non-finite derived constant");
    }
    // rho is +inf only when both jitter deviations are zero (no pointing error).
    if (std::isnan(g.rho) || (std::isinf(g.rho) && (p.sigma_theta > 0.0 || p.sigma_beta > 0.0))) {
        throw NumericalError("derive: non-finite pointing exponent");
    }
    return g;
}

}  // namespace

DerivedGeometry derive(const SystemParams& params) {
    check_hard(params);
    return compute(params);
}

std::vector<Diagnostic> validate(const SystemParams& params) {
    check_hard(params);
    const DerivedGeometry g = compute(params);
    std::vector<Diagnostic> out;
    const double ratio = g.w_z / params.aperture_radius;
    if (ratio <= kApproxValidityRatio) {
        out.push_back({Diagnostic::Level::warning,
                       fmt::format("beam/aperture ratio {:.3g} <= 6: Gaussian pointing-loss approximation is loose", ratio)});
    }
    if (g.rho >= kNegligiblePointingRho) {
        out.push_back({Diagnostic::Level::warning,
                       fmt::format("pointing exponent rho = {:.3g} >= 20: pointing error is negligible", g.rho)});
    }
    if (g.rytov_sq > kWeakTurbulenceLimit) {
        out.push_back({Diagnostic::Level::warning,
                       fmt::format("Rytov variance {:.3g} > 1: log-normal weak-turbulence model is stretched", g.rytov_sq)});
    }
    return out;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace orislink
