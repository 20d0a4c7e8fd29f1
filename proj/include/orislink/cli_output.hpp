#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "orislink/mc_sim.hpp"

namespace orislink::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Throws ParameterError if `path` exists and overwriting was not requested.
void check_overwrite(const std::filesystem::path& path, bool force);

/// Current UTC time as RFC 3339, second resolution.
std::string utc_timestamp();

/// Where a run came from and what it produced.
struct RunManifest {
    std::string command;
    std::filesystem::path config_path;
    std::string config_sha256;     // raw bytes of the file that was read
    std::string effective_digest;  // config_digest() of the parameters actually used
    std::string timestamp;
    std::string tool_version = kToolVersion;
    std::vector<std::uint64_t> seeds;
    std::vector<std::filesystem::path> outputs;
    /// Emission-time clamps, as "column@pt_dbm=value".
    std::vector<std::string> clamped;

    std::string to_json() const;
};

/// Manifest sits next to the primary output.
std::filesystem::path manifest_path(const std::filesystem::path& out);

/// JSON with exactly: metric, estimate, ci_low, ci_high, trials, seed, config_digest.
std::string campaign_json(const CampaignResult& result);

/// Clamps a probability into [0, 1] for emission; reports whether it moved.
double clamp_probability(double value, bool& clamped);

}  // namespace orislink::cli
