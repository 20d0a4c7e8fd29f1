#include "orislink/performance.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "orislink/errors.hpp"
#include "orislink/quadrature.hpp"
#include "orislink/specfun.hpp"

namespace orislink {

LinkPair LinkPair::from(const SystemParams& params) {
    LinkPair pair{RfLink::from(params), FsoLink::from(params),
                  Modulation{params.mod_kappa, params.mod_zeta, params.rf_ber_scale}};
    pair.check();
    return pair;
}

void LinkPair::check() const {
    rf.check();
    fso.check();
    if (rf.pt != fso.pt) throw ParameterError("LinkPair: RF and optical hops must share pt");
    if (!(modulation.kappa > 0.0 && modulation.zeta > 0.0 && modulation.rf_ber_scale > 0.0)) {
        throw ParameterError("LinkPair: modulation constants must be > 0");
    }
}

double compose_outage(double f_rf, double f_fso) { return f_rf + f_fso - f_rf * f_fso; }

double compose_ber(double p_rf, double p_fso) { return p_rf + p_fso - 2.0 * p_rf * p_fso; }

double outage_exact(const LinkPair& pair, double gamma_th) {
    const double f_rf = snr_cdf(pair.rf, gamma_th);
    const double f_fso = optical_snr_cdf(pair.fso, gamma_th);
    if (f_rf + f_fso < 0.5) return compose_outage(f_rf, f_fso);
    // Near certain outage: multiply survivals so the result stays monotone.
    return 1.0 - snr_ccdf(pair.rf, gamma_th) * (1.0 - f_fso);
}

AsymptoticFactors asymptotic_factors(const LinkPair& pair) {
    const auto& f = pair.fso;
    const auto& g = f.geometry;
    const double rho = g.rho;
    const double s2 = g.sigma_x_sq;
    const double base = std::sqrt(f.sigma_nk_sq) / (g.a0 * f.pt * f.delta * f.alpha_m * f.mu_k * g.h_l);

    const double a2 = pair.rf.a_peak * pair.rf.a_peak;
    const double m2 = pair.rf.sigma_m_sq;
    const double n2 = pair.rf.sigma_nr_sq;
    const double rf_num = a2 * a2 * n2 + 4.0 * m2 * m2 * n2 - 2.0 * m2 * n2 * a2;

    return {std::exp(rho * std::log(base) + 2.0 * rho * s2 + 2.0 * rho * rho * s2),
            rf_num / (8.0 * m2 * m2 * m2 * pair.rf.pt)};
}

double outage_asymptotic(const LinkPair& pair, double gamma_th) {
    const auto k = asymptotic_factors(pair);
    const double rho = pair.fso.geometry.rho;
    return std::pow(gamma_th, rho / 2.0) / std::pow(2.0, rho / 2.0 + 1.0) * k.optical + k.rf * gamma_th;
}

double snr_pdf_asymptotic(const LinkPair& pair, double gamma) {
    const auto k = asymptotic_factors(pair);
    const double rho = pair.fso.geometry.rho;
    return rho * std::pow(gamma, rho / 2.0 - 1.0) / std::pow(2.0, rho / 2.0 + 2.0) * k.optical + k.rf;
}

double ber_asymptotic(const LinkPair& pair) {
    const auto k = asymptotic_factors(pair);
    const double rho = pair.fso.geometry.rho;
    const double kappa = pair.modulation.kappa;
    const double zeta = pair.modulation.zeta;
    return kappa * specfun::gamma_fn((rho + 1.0) / 2.0) /
               (4.0 * std::sqrt(std::numbers::pi) * std::pow(zeta, rho / 2.0)) * k.optical +
           kappa * k.rf / (2.0 * zeta);
}

namespace {

// Panels in u for int_0^inf F(u^2/scale) phi(u) du. F ~ u^rho near zero, so
// the first panels are geometric; phi(u) underflows before u = 40.
constexpr std::array<double, 27> kBreaks = {0.0,  1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3,
                                            1e-2, 0.05,  0.1,  0.25, 0.5,  1.0,  1.5,  2.0,  3.0,
                                            4.0,  5.0,   6.0,  8.0,  10.0, 14.0, 20.0, 28.0, 40.0};
constexpr double kRelTol = 1e-10;

template <class Cdf>
quad::Result gaussian_weighted(Cdf&& cdf, double scale, int points) {
    const auto integrand = [&](double u) {
        const double phi = std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
        return phi == 0.0 ? 0.0 : cdf(u * u / scale) * phi;
    };
    return quad::integrate(integrand, kBreaks, points, kRelTol, 1e-300);
}

}  // namespace

HopBer hop_ber_numeric(const LinkPair& pair, int quad_points) {
    if (quad_points < 64) throw ParameterError("hop_ber_numeric: quad_points must be >= 64");
    const auto rf = gaussian_weighted([&](double g) { return snr_cdf(pair.rf, g); },
                                      pair.modulation.rf_ber_scale, quad_points);
    const auto fso = gaussian_weighted([&](double g) { return optical_snr_cdf(pair.fso, g); },
                                       pair.modulation.zeta, quad_points);
    if (!rf.converged) throw NumericalError("relay-hop BER quadrature did not converge", rf.error_estimate);
    if (!fso.converged) throw NumericalError("optical-hop BER quadrature did not converge", fso.error_estimate);
    return {rf.value, pair.modulation.kappa * fso.value, rf.error_estimate, pair.modulation.kappa * fso.error_estimate};
}

double ber_exact_numeric(const LinkPair& pair, int quad_points) {
    const auto hops = hop_ber_numeric(pair, quad_points);
    return compose_ber(hops.rf, hops.fso);
}

double pt_dbm_at_ber(const SystemParams& base, double target, BerModel model, double lo_dbm, double hi_dbm) {
    auto ber_at = [&](double dbm) {
        SystemParams params = base;
        params.pt = dbm_to_watts(dbm);
        const auto pair = LinkPair::from(params);
        return model == BerModel::asymptotic ? ber_asymptotic(pair) : ber_exact_numeric(pair);
    };
    // Compare in log space; the curves span many decades.
    const double log_target = std::log(target);
    auto excess = [&](double dbm) { return std::log(ber_at(dbm)) - log_target; };
    double lo = lo_dbm;
    double hi = hi_dbm;
    if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
        throw NumericalError(fmt::format("BER target {} not bracketed by [{}, {}] dBm", target, lo_dbm, hi_dbm));
    }
    for (int i = 0; i < 80 && hi - lo > 1e-9; ++i) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool PerformanceCurve::has_gaps() const {
    for (const auto& e : errors) {
        if (!e.empty()) return true;
    }
    return false;
}

PerformanceCurve sweep(const SystemParams& base, std::span<const double> pt_dbm, double gamma_th, int quad_points) {
    if (pt_dbm.empty()) throw ParameterError("sweep: axis must be nonempty");
    for (std::size_t i = 1; i < pt_dbm.size(); ++i) {
        if (!(pt_dbm[i] > pt_dbm[i - 1])) throw ParameterError("sweep: axis must be strictly increasing");
    }
    if (!(gamma_th > 0.0) || !std::isfinite(gamma_th)) throw ParameterError("sweep: gamma_th must be > 0");

    PerformanceCurve curve;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double dbm : pt_dbm) {
        curve.pt_dbm.push_back(dbm);
        SystemParams params = base;
        params.pt = dbm_to_watts(dbm);
        try {
            const auto pair = LinkPair::from(params);
            const double oe = outage_exact(pair, gamma_th);
            const double oa = outage_asymptotic(pair, gamma_th);
            const double ba = ber_asymptotic(pair);
            const double be = ber_exact_numeric(pair, quad_points);
            for (double v : {oe, oa, ba, be}) {
                if (!std::isfinite(v)) throw NumericalError("non-finite closed-form value");
            }
            curve.outage_exact.push_back(oe);
            curve.outage_asymptotic.push_back(oa);
            curve.ber_asymptotic.push_back(ba);
            curve.ber_exact_numeric.push_back(be);
            curve.errors.emplace_back();
        } catch (const std::exception& e) {
            curve.outage_exact.push_back(nan);
            curve.outage_asymptotic.push_back(nan);
            curve.ber_asymptotic.push_back(nan);
            curve.ber_exact_numeric.push_back(nan);
            curve.errors.push_back(fmt::format("pt = {} dBm: {}", dbm, e.what()));
        }
    }
    return curve;
}

}  // namespace orislink
