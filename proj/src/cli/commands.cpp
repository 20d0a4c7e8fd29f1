#include "orislink/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "orislink/cli_output.hpp"
#include "orislink/config.hpp"
#include "orislink/digest.hpp"
#include "orislink/errors.hpp"
#include "orislink/performance.hpp"

namespace orislink::cli {

namespace fs = std::filesystem;

namespace {

double parse_number(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ParameterError(fmt::format("{}: '{}' is not a number", what, text));
    }
    return value;
}

struct LoadedConfig {
    SystemParams params;
    std::string sha256;
};

LoadedConfig load(const fs::path& path, std::ostream& err) {
    const std::string text = read_text_file(path);
    LoadedConfig c{parse_config(text), sha256_hex(text)};
    for (const auto& d : validate(c.params)) err << "warning: " << d.message << '\n';
    return c;
}

RunManifest begin_manifest(const char* command, const fs::path& config, const LoadedConfig& cfg) {
    RunManifest m;
    m.command = command;
    m.config_path = config;
    m.config_sha256 = cfg.sha256;
    m.effective_digest = config_digest(cfg.params);
    m.timestamp = utc_timestamp();
    return m;
}

double threshold_linear(double gamma_th_db) {
    if (!std::isfinite(gamma_th_db)) throw ParameterError("--gamma-th must be finite");
    return db_to_linear(gamma_th_db);
}

double emit(double value, const char* column, double pt_dbm, RunManifest& manifest) {
    bool clamped = false;
    const double v = clamp_probability(value, clamped);
    if (clamped) manifest.clamped.push_back(fmt::format("{}@pt_dbm={}={}", column, format_double(pt_dbm), format_double(value)));
    return v;
}

void report_failures(const PerformanceCurve& curve, std::ostream& err) {
    for (const auto& e : curve.errors) {
        if (!e.empty()) err << "error: " << e << '\n';
    }
}

double z_score(double estimate, double expected, std::uint64_t trials) {
    const double n = static_cast<double>(trials);
    const double var = expected * (1.0 - expected) / n;
    if (var <= 0.0) return estimate == expected ? 0.0 : std::copysign(INFINITY, estimate - expected);
    return (estimate - expected) / std::sqrt(var);
}

template <class F>
int guarded(F&& body, std::ostream& err) {
    try {
        return body();
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnexpected;
    }
}

}  // namespace

SweepAxis SweepAxis::parse(std::string_view text) {
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
        throw ParameterError(fmt::format("--pt-sweep: expected start:stop:step, got '{}'", text));
    }
    SweepAxis axis{parse_number(text.substr(0, a), "--pt-sweep start"),
                   parse_number(text.substr(a + 1, b - a - 1), "--pt-sweep stop"),
                   parse_number(text.substr(b + 1), "--pt-sweep step")};
    if (!(axis.step > 0.0)) throw ParameterError("--pt-sweep: step must be > 0");
    if (axis.stop < axis.start) throw ParameterError("--pt-sweep: stop must be >= start");
    return axis;
}

std::vector<double> SweepAxis::points() const {
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

unsigned resolve_workers(std::optional<unsigned> flag) {
    if (flag) {
        if (*flag == 0) throw ParameterError("--workers must be >= 1");
        return *flag;
    }
    if (const char* env = std::getenv("ORIS_LINK_THREADS"); env && *env) {
        unsigned n = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0) {
            throw ParameterError(fmt::format("ORIS_LINK_THREADS: '{}' is not a positive integer", s));
        }
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(
        [&] {
            const auto cfg = load(opts.config, err);
            const auto axis = opts.sweep.points();
            const double gamma_th = threshold_linear(opts.gamma_th_db);
            const auto mpath = manifest_path(opts.out);
            check_overwrite(opts.out, opts.force);
            check_overwrite(mpath, opts.force);

            auto manifest = begin_manifest("analyze", opts.config, cfg);
            manifest.outputs = {opts.out, mpath};
            write_file_atomic(mpath, manifest.to_json());

            const auto curve = sweep(cfg.params, axis, gamma_th);
            if (curve.has_gaps()) {
                report_failures(curve, err);
                return static_cast<int>(kExitNumerical);
            }

            std::string csv = "pt_dbm,outage_exact,outage_asymptotic,ber_asymptotic,ber_exact_numeric\n";
            for (std::size_t i = 0; i < curve.size(); ++i) {
                const double p = curve.pt_dbm[i];
                const double oa = emit(curve.outage_asymptotic[i], "outage_asymptotic", p, manifest);
                const double ba = emit(curve.ber_asymptotic[i], "ber_asymptotic", p, manifest);
                csv += fmt::format("{},{},{},{},{}\n", format_double(p), format_double(curve.outage_exact[i]),
                                   format_double(oa), format_double(ba), format_double(curve.ber_exact_numeric[i]));
            }
            write_file_atomic(opts.out, csv);
            write_file_atomic(mpath, manifest.to_json());
            out << fmt::format("wrote {} rows to {}\n", curve.size(), opts.out.string());
            return static_cast<int>(kExitOk);
        },
        err);
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(
        [&] {
            auto cfg = load(opts.config, err);
            if (opts.pt_dbm) cfg.params.pt = dbm_to_watts(*opts.pt_dbm);
            const double gamma_th = threshold_linear(opts.gamma_th_db);
            const unsigned workers = resolve_workers(opts.workers);
            if (opts.max_ci_halfwidth && !(*opts.max_ci_halfwidth > 0.0)) {
                throw ParameterError("--max-ci-halfwidth must be > 0");
            }
            const auto mpath = manifest_path(opts.out);
            check_overwrite(opts.out, opts.force);
            check_overwrite(mpath, opts.force);
            const auto model = SimModel::make(cfg.params);

            auto manifest = begin_manifest("simulate", opts.config, cfg);
            manifest.seeds = {opts.seed};
            manifest.outputs = {opts.out, mpath};
            write_file_atomic(mpath, manifest.to_json());

            const auto result = run_campaign(model, opts.metric, gamma_th, opts.trials, opts.seed, workers);
            write_file_atomic(opts.out, campaign_json(result));
            out << fmt::format("{} = {} [{}, {}] over {} trials\n", to_string(result.metric),
                               format_double(result.estimate), format_double(result.ci_low),
                               format_double(result.ci_high), result.trials);
            if (opts.max_ci_halfwidth && result.ci_halfwidth() > *opts.max_ci_halfwidth) {
                err << fmt::format("precision unmet: CI half-width {} > {}\n", format_double(result.ci_halfwidth()),
                                   format_double(*opts.max_ci_halfwidth));
                return static_cast<int>(kExitPrecision);
            }
            return static_cast<int>(kExitOk);
        },
        err);
}

int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(
        [&] {
            const auto cfg = load(opts.config, err);
            const auto axis = opts.sweep.points();
            const double gamma_th = threshold_linear(opts.gamma_th_db);
            const unsigned workers = resolve_workers(opts.workers);
            if (opts.trials < kMinCampaignTrials) throw ParameterError("--trials must be >= 10000");
            const auto mpath = manifest_path(opts.out);
            check_overwrite(opts.out, opts.force);
            check_overwrite(mpath, opts.force);

            auto manifest = begin_manifest("compare", opts.config, cfg);
            manifest.seeds = {opts.seed};
            manifest.outputs = {opts.out, mpath};
            write_file_atomic(mpath, manifest.to_json());

            const auto curve = sweep(cfg.params, axis, gamma_th);
            if (curve.has_gaps()) {
                report_failures(curve, err);
                return static_cast<int>(kExitNumerical);
            }

            const bool variant_gap_possible =
                cfg.params.geometry_mode == GeometryMode::paper_printed && cfg.params.sigma_beta > 0.0;
            const double floor = 10.0 / static_cast<double>(opts.trials);

            std::string csv =
                "pt_dbm,outage_exact,outage_asymptotic,outage_mc,outage_mc_ci_low,outage_mc_ci_high,"
                "ber_asymptotic,ber_exact_numeric,ber_mc,ber_mc_ci_low,ber_mc_ci_high\n";
            std::string table = fmt::format("{:>10} {:>10} {:>10}  notes\n", "pt_dbm", "z_outage", "z_ber");
            double worst = 0.0;
            std::string worst_at = "none";

            for (std::size_t i = 0; i < curve.size(); ++i) {
                const double p = curve.pt_dbm[i];
                SystemParams params = cfg.params;
                params.pt = dbm_to_watts(p);
                const auto model = SimModel::make(params);
                const auto mc_out = run_campaign(model, Metric::outage, gamma_th, opts.trials, opts.seed, workers);
                const auto mc_ber = run_campaign(model, Metric::ber, gamma_th, opts.trials, opts.seed, workers);

                const double oa = emit(curve.outage_asymptotic[i], "outage_asymptotic", p, manifest);
                const double ba = emit(curve.ber_asymptotic[i], "ber_asymptotic", p, manifest);
                csv += fmt::format(
                    "{},{},{},{},{},{},{},{},{},{},{}\n", format_double(p), format_double(curve.outage_exact[i]),
                    format_double(oa), format_double(mc_out.estimate), format_double(mc_out.ci_low),
                    format_double(mc_out.ci_high), format_double(ba),
                    format_double(curve.ber_exact_numeric[i]), format_double(mc_ber.estimate),
                    format_double(mc_ber.ci_low), format_double(mc_ber.ci_high));

                const double z_out = z_score(mc_out.estimate, curve.outage_exact[i], opts.trials);
                const double z_ber = z_score(mc_ber.estimate, curve.ber_exact_numeric[i], opts.trials);
                std::vector<std::string> notes;
                const bool sparse_out = curve.outage_exact[i] < floor;
                const bool sparse_ber = curve.ber_exact_numeric[i] < floor;
                if (sparse_out) notes.emplace_back("outage undersampled");
                if (sparse_ber) notes.emplace_back("ber undersampled");
                const bool off = (!sparse_out && std::abs(z_out) > 3.0) || (!sparse_ber && std::abs(z_ber) > 3.0);
                if (off) notes.emplace_back(variant_gap_possible ? "model-variant gap" : "mismatch");
                for (auto [z, name] : {std::pair{z_out, "outage"}, std::pair{z_ber, "ber"}}) {
                    if (std::abs(z) > std::abs(worst)) {
                        worst = z;
                        worst_at = fmt::format("{} at pt = {} dBm", name, format_double(p));
                    }
                }
                table += fmt::format("{:>10} {:>10.3f} {:>10.3f}  {}\n", format_double(p), z_out, z_ber,
                                     fmt::join(notes, ", "));
            }
            write_file_atomic(opts.out, csv);
            write_file_atomic(mpath, manifest.to_json());

            out << table;
            out << fmt::format("largest |z|: {:.3f} ({})\n", worst, worst_at);
            try {
                SystemParams halved = cfg.params;
                halved.mu_k = 0.5 * cfg.params.mu_k;
                const double full = pt_dbm_at_ber(cfg.params, 1e-3, BerModel::exact_numeric);
                const double half = pt_dbm_at_ber(halved, 1e-3, BerModel::exact_numeric);
                out << fmt::format("mu_k -> mu_k/2 shift at BER 1e-3: {:.3f} dB\n", half - full);
            } catch (const std::exception& e) {
                out << fmt::format("mu_k -> mu_k/2 shift at BER 1e-3: n/a ({})\n", e.what());
            }
            return static_cast<int>(kExitOk);
        },
        err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dual-hop RF/optical link analysis and Monte Carlo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    AnalyzeOptions analyze;
    SimulateOptions simulate;
    CompareOptions compare;
    std::string analyze_sweep;
    std::string compare_sweep;
    std::string metric = "outage";
    unsigned sim_workers = 0;
    unsigned cmp_workers = 0;
    double max_halfwidth = 0.0;
    double pt_dbm = 0.0;

    auto* a = app.add_subcommand("analyze", "Closed-form sweep over transmit power");
    a->add_option("config", analyze.config, "Config file")->required();
    a->add_option("--pt-sweep", analyze_sweep, "start:stop:step in dBm")->required();
    a->add_option("--gamma-th", analyze.gamma_th_db, "SNR threshold in dB")->capture_default_str();
    a->add_option("--out", analyze.out, "CSV path")->required();
    a->add_flag("--force", analyze.force, "Overwrite existing outputs");

    auto* s = app.add_subcommand("simulate", "Monte Carlo campaign at one operating point");
    s->add_option("config", simulate.config, "Config file")->required();
    s->add_option("--metric", metric, "outage or ber")->check(CLI::IsMember({"outage", "ber"}))->capture_default_str();
    s->add_option("--trials", simulate.trials, "Number of trials (>= 10000)")->capture_default_str();
    s->add_option("--seed", simulate.seed, "Base seed")->capture_default_str();
    auto* sw = s->add_option("--workers", sim_workers, "Worker threads");
    auto* spt = s->add_option("--pt-dbm", pt_dbm, "Override transmit power (dBm)");
    s->add_option("--gamma-th", simulate.gamma_th_db, "SNR threshold in dB")->capture_default_str();
    auto* shw = s->add_option("--max-ci-halfwidth", max_halfwidth, "Fail with exit 4 above this CI half-width");
    s->add_option("--out", simulate.out, "JSON path")->required();
    s->add_flag("--force", simulate.force, "Overwrite existing outputs");

    auto* c = app.add_subcommand("compare", "Closed form against Monte Carlo over a sweep");
    c->add_option("config", compare.config, "Config file")->required();
    c->add_option("--pt-sweep", compare_sweep, "start:stop:step in dBm")->required();
    c->add_option("--gamma-th", compare.gamma_th_db, "SNR threshold in dB")->capture_default_str();
    c->add_option("--trials", compare.trials, "Trials per point and metric")->capture_default_str();
    c->add_option("--seed", compare.seed, "Base seed")->capture_default_str();
    auto* cw = c->add_option("--workers", cmp_workers, "Worker threads");
    c->add_option("--out", compare.out, "CSV path")->required();
    c->add_flag("--force", compare.force, "Overwrite existing outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitConfig;
    }

    return guarded(
        [&] {
            if (a->parsed()) {
                analyze.sweep = SweepAxis::parse(analyze_sweep);
                return cmd_analyze(analyze, out, err);
            }
            if (s->parsed()) {
                simulate.metric = metric_from_string(metric);
                if (*sw) simulate.workers = sim_workers;
                if (*spt) simulate.pt_dbm = pt_dbm;
                if (*shw) simulate.max_ci_halfwidth = max_halfwidth;
                return cmd_simulate(simulate, out, err);
            }
            compare.sweep = SweepAxis::parse(compare_sweep);
            if (*cw) compare.workers = cmp_workers;
            return cmd_compare(compare, out, err);
        },
        err);
}

}  // namespace orislink::cli
