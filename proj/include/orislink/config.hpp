#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "orislink/params.hpp"

namespace orislink {

/// Parses `key = value` configuration text on top of the built-in defaults.
///
/// Keys are the SystemParams field names. `#` starts a comment. Values may
/// carry a unit suffix where it makes sense: `W`/`dBm` for powers and noise
/// variances, `rad`/`mrad`/`deg` for angles, `m`/`cm`/`mm`/`nm` for lengths,
/// `dB` for rice_k, `dB/km` for hl_per_km. Unknown or repeated keys, bad
/// numbers and wrong suffixes throw ParameterError naming the line.
///
/// Supplying rice_a (or cn2) replaces the default rice_k (or rytov_sq);
/// supplying both members of either pair is an error.
SystemParams parse_config(std::string_view text);

/// Reads and parses a config file. Throws ParameterError if unreadable.
SystemParams load_config(const std::filesystem::path& path);

/// Reads a file into a string; throws ParameterError on failure.
std::string read_text_file(const std::filesystem::path& path);

/// Canonical rendering of the effective parameters: one `key = value` per
/// line, keys sorted, SI units, shortest round-trip decimals. Parsing the
/// result yields bit-identical parameters.
std::string canonical_config_text(const SystemParams& params);

/// Lowercase hex SHA-256 of canonical_config_text(params).
std::string config_digest(const SystemParams& params);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

}  // namespace orislink
