#pragma once

#include <cstdint>
#include <string>

#include "orislink/params.hpp"
#include "orislink/performance.hpp"
#include "orislink/random.hpp"
#include "orislink/scene.hpp"

namespace orislink {

/// Everything a trial needs, derived once from SystemParams.
struct SimModel {
    SystemParams params;
    DerivedGeometry derived;
    LinkPair links;
    SceneGeometry scene;

    /// Uses build_scene(params, params.incidence_angle).
    static SimModel make(const SystemParams& params);
    static SimModel make(const SystemParams& params, const SceneGeometry& scene);
};

struct TrialOutcome {
    double gamma_rf = 0.0;
    double gamma_fso = 0.0;
    bool rf_bit_error = false;
    bool fso_bit_error = false;
    double displacement_r = 0.0;  // +inf when the ray missed
    double hp = 0.0;
    double ha = 0.0;
    double h_total = 0.0;
};

/// One transmitted bit through both hops.
///
/// Relay: Rice envelope draw, gamma_rf = pt nu^2 / sigma_nr^2, antipodal
/// decision with an explicit unit-variance noise draw so the flip
/// probability is Q(sqrt(rf_ber_scale * gamma_rf)).
/// User: ray-traced pointing loss, log-normal scintillation, OOK levels
/// {0, 2 P_o} through alpha mu h plus N(0, sigma_nk^2) noise, threshold at
/// alpha mu h P_o (genie channel knowledge). The user receives whatever
/// bit the relay decoded.
TrialOutcome run_trial(const SimModel& model, RandomStream& rng, int bit);

/// Same as run_trial but with the optical gain forced to `h_total`
/// (pointing and scintillation draws skipped).
TrialOutcome run_trial_with_gain(const SimModel& model, RandomStream& rng, int bit, double h_total);

enum class Metric { outage, ber };
std::string to_string(Metric metric);
Metric metric_from_string(const std::string& text);

struct CampaignResult {
    Metric metric = Metric::outage;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string config_digest;
    std::uint64_t events = 0;

    double ci_halfwidth() const { return 0.5 * (ci_high - ci_low); }
};

/// Wilson score interval at the given two-sided z.
struct Interval {
    double low = 0.0;
    double high = 0.0;
};
Interval wilson_interval(std::uint64_t events, std::uint64_t trials, double z);
inline constexpr double kZ99 = 2.5758293035489004;

/// Trials are grouped in blocks of kCampaignBlock consecutive indices.
/// Block b draws from RandomStream(campaign_block_seed(seed, b)), so the
/// numbers consumed by trial i depend only on (seed, i) and never on how
/// many workers share the blocks.
inline constexpr std::uint64_t kCampaignBlock = 1u << 16;
constexpr std::uint64_t campaign_block_seed(std::uint64_t seed, std::uint64_t block) {
    return mix_seed(mix_seed(seed) + block);
}

inline constexpr std::uint64_t kMinCampaignTrials = 10000;

/// Runs `trials` independent trials and estimates the metric with a 99%
/// Wilson interval. Outage: gamma_rf < gamma_th or gamma_fso < gamma_th.
/// BER: exactly one hop flipped the bit. Throws ParameterError for
/// trials < 10^4 or workers == 0.
CampaignResult run_campaign(const SimModel& model, Metric metric, double gamma_th, std::uint64_t trials,
                            std::uint64_t seed, unsigned workers = 1);

}  // namespace orislink
