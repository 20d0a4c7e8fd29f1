#include "orislink/mc_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "orislink/config.hpp"
#include "orislink/errors.hpp"

namespace orislink {

SimModel SimModel::make(const SystemParams& params) {
    return make(params, build_scene(params, params.incidence_angle));
}

SimModel SimModel::make(const SystemParams& params, const SceneGeometry& scene) {
    return {params, derive(params), LinkPair::from(params), scene};
}

namespace {

TrialOutcome finish_trial(const SimModel& model, RandomStream& rng, int bit, TrialOutcome t) {
    const auto& fso = model.links.fso;

    // Relay: antipodal decision on sqrt(scale * gamma) + N(0, 1).
    const double rf_amplitude = std::sqrt(model.links.modulation.rf_ber_scale * t.gamma_rf);
    const double rf_symbol = bit ? rf_amplitude : -rf_amplitude;
    const int relayed = (rf_symbol + rng.normal()) > 0.0 ? 1 : 0;
    t.rf_bit_error = relayed != bit;

    // User: OOK at {0, 2 P_o} scaled by alpha mu h, threshold at the midpoint.
    t.gamma_fso = optical_snr(fso, t.h_total);
    const double p_o = fso.delta * fso.pt;
    const double gain = fso.alpha_m * fso.mu_k * t.h_total;
    const double received = gain * (relayed ? 2.0 * p_o : 0.0) + std::sqrt(fso.sigma_nk_sq) * rng.normal();
    const int decided = received > gain * p_o ? 1 : 0;
    t.fso_bit_error = decided != relayed;
    return t;
}

TrialOutcome draw_rf(const SimModel& model, RandomStream& rng) {
    TrialOutcome t;
    const double nu = sample_envelope(model.links.rf, rng);
    t.gamma_rf = rf_snr(model.links.rf, nu);
    return t;
}

}  // namespace

TrialOutcome run_trial(const SimModel& model, RandomStream& rng, int bit) {
    TrialOutcome t = draw_rf(model, rng);
    const auto g = sample_fso_geometry(model.scene, model.params, model.derived, rng);
    t.displacement_r = g.displacement_r;
    t.hp = g.hp;
    t.ha = sample_turbulence(model.links.fso, rng);
    t.h_total = model.derived.h_l * t.hp * t.ha;
    return finish_trial(model, rng, bit, t);
}

TrialOutcome run_trial_with_gain(const SimModel& model, RandomStream& rng, int bit, double h_total) {
    TrialOutcome t = draw_rf(model, rng);
    t.h_total = h_total;
    return finish_trial(model, rng, bit, t);
}

std::string to_string(Metric metric) { return metric == Metric::outage ? "outage" : "ber"; }

Metric metric_from_string(const std::string& text) {
    if (text == "outage") return Metric::outage;
    if (text == "ber") return Metric::ber;
    throw ParameterError("metric must be 'outage' or 'ber' (got '" + text + "')");
}

Interval wilson_interval(std::uint64_t events, std::uint64_t trials, double z) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(events) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    // Wilson always covers p; min/max only absorbs rounding at p = 0 or 1.
    return {std::clamp(std::min(center - half, p), 0.0, 1.0), std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

CampaignResult run_campaign(const SimModel& model, Metric metric, double gamma_th, std::uint64_t trials,
                            std::uint64_t seed, unsigned workers) {
    if (trials < kMinCampaignTrials) throw ParameterError("run_campaign: trials must be >= 10000");
    if (workers == 0) throw ParameterError("run_campaign: workers must be >= 1");
    if (!(gamma_th >= 0.0) || !std::isfinite(gamma_th)) throw ParameterError("run_campaign: gamma_th must be >= 0");

    const std::uint64_t blocks = (trials + kCampaignBlock - 1) / kCampaignBlock;
    std::vector<std::uint64_t> block_events(blocks, 0);
    std::atomic<std::uint64_t> next{0};

    auto work = [&]() {
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            RandomStream rng(campaign_block_seed(seed, b));
            const std::uint64_t first = b * kCampaignBlock;
            const std::uint64_t last = std::min(trials, first + kCampaignBlock);
            std::uint64_t events = 0;
            for (std::uint64_t i = first; i < last; ++i) {
                const int bit = static_cast<int>(rng.bits() & 1u);
                const TrialOutcome t = run_trial(model, rng, bit);
                if (metric == Metric::outage) {
                    events += (t.gamma_rf < gamma_th || t.gamma_fso < gamma_th) ? 1 : 0;
                } else {
                    events += (t.rf_bit_error != t.fso_bit_error) ? 1 : 0;
                }
            }
            block_events[b] = events;
        }
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work);
    }

    CampaignResult result;
    result.metric = metric;
    result.trials = trials;
    result.seed = seed;
    result.config_digest = config_digest(model.params);
    for (auto e : block_events) result.events += e;
    result.estimate = static_cast<double>(result.events) / static_cast<double>(trials);
    const auto ci = wilson_interval(result.events, trials, kZ99);
    result.ci_low = ci.low;
    result.ci_high = ci.high;
    return result;
}

}  // namespace orislink
