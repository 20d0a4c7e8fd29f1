#include "orislink/cli_output.hpp"

#include <chrono>
#include <fstream>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>
#include <unistd.h>

#include "orislink/errors.hpp"

namespace orislink::cli {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view content) {
    const fs::path tmp = fs::path(path).concat(fmt::format(".tmp.{}", ::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ParameterError(fmt::format("cannot write '{}'", tmp.string()));
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw ParameterError(fmt::format("short write to '{}'", tmp.string()));
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ParameterError(fmt::format("cannot move output into '{}'", path.string()));
    }
}

void check_overwrite(const fs::path& path, bool force) {
    if (!force && fs::exists(path)) {
        throw ParameterError(fmt::format("'{}' exists; pass --force to overwrite", path.string()));
    }
}

std::string utc_timestamp() {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                       tm.tm_hour, tm.tm_min, tm.tm_sec);
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config_path"] = config_path.string();
    j["config_sha256"] = config_sha256;
    j["effective_digest"] = effective_digest;
    j["timestamp"] = timestamp;
    j["tool_version"] = tool_version;
    j["seeds"] = seeds;
    auto outs = nlohmann::ordered_json::array();
    for (const auto& p : outputs) outs.push_back(p.string());
    j["outputs"] = outs;
    j["clamped"] = clamped;
    return j.dump(2) + "\n";
}

fs::path manifest_path(const fs::path& out) { return fs::path(out).concat(".manifest.json"); }

std::string campaign_json(const CampaignResult& result) {
    nlohmann::ordered_json j;
    j["metric"] = to_string(result.metric);
    j["estimate"] = result.estimate;
    j["ci_low"] = result.ci_low;
    j["ci_high"] = result.ci_high;
    j["trials"] = result.trials;
    j["seed"] = result.seed;
    j["config_digest"] = result.config_digest;
    return j.dump(2) + "\n";
}

double clamp_probability(double value, bool& clamped) {
    clamped = false;
    if (value > 1.0) {
        clamped = true;
        return 1.0;
    }
    if (value < 0.0) {
        clamped = true;
        return 0.0;
    }
    return value;
}

}  // namespace orislink::cli
