#include "orislink/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "orislink/digest.hpp"
#include "orislink/errors.hpp"

namespace orislink {

namespace {

enum class Unit { none, power, angle, length, rice_factor, path_loss };

struct Field {
    const char* name;
    Unit unit;
    std::function<void(SystemParams&, double)> set;
    std::function<std::optional<double>(const SystemParams&)> get;
};

#define ORIS_PLAIN_FIELD(key, unit)                                       \
    Field {                                                               \
        #key, unit, [](SystemParams& p, double v) { p.key = v; },         \
            [](const SystemParams& p) -> std::optional<double> { return p.key; } \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        ORIS_PLAIN_FIELD(alpha_m, Unit::none),
        ORIS_PLAIN_FIELD(aperture_radius, Unit::length),
        ORIS_PLAIN_FIELD(cn2, Unit::none),
        ORIS_PLAIN_FIELD(delta, Unit::none),
        ORIS_PLAIN_FIELD(hl_per_km, Unit::path_loss),
        ORIS_PLAIN_FIELD(incidence_angle, Unit::angle),
        ORIS_PLAIN_FIELD(l_ou, Unit::length),
        ORIS_PLAIN_FIELD(l_ro, Unit::length),
        ORIS_PLAIN_FIELD(l_sr, Unit::length),
        ORIS_PLAIN_FIELD(mod_kappa, Unit::none),
        ORIS_PLAIN_FIELD(mod_zeta, Unit::none),
        ORIS_PLAIN_FIELD(mu_k, Unit::none),
        ORIS_PLAIN_FIELD(phi, Unit::angle),
        ORIS_PLAIN_FIELD(pt, Unit::power),
        ORIS_PLAIN_FIELD(rf_ber_scale, Unit::none),
        ORIS_PLAIN_FIELD(rice_a, Unit::none),
        ORIS_PLAIN_FIELD(rice_k, Unit::rice_factor),
        ORIS_PLAIN_FIELD(rytov_sq, Unit::none),
        ORIS_PLAIN_FIELD(sigma_beta, Unit::angle),
        ORIS_PLAIN_FIELD(sigma_m_sq, Unit::none),
        ORIS_PLAIN_FIELD(sigma_nk_sq, Unit::power),
        ORIS_PLAIN_FIELD(sigma_nr_sq, Unit::power),
        ORIS_PLAIN_FIELD(sigma_theta, Unit::angle),
        ORIS_PLAIN_FIELD(wavelength, Unit::length),
    };
    return table;
}

#undef ORIS_PLAIN_FIELD

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ParameterError(fmt::format("config line {}: {}", line, message));
}

double apply_unit(Unit unit, double value, std::string_view suffix, int line, std::string_view key) {
    auto bad = [&]() {
        fail(line, fmt::format("unit '{}' not accepted for '{}'", suffix, key));
    };
    if (suffix.empty()) return value;
    switch (unit) {
        case Unit::none:
            break;
        case Unit::power:
            if (suffix == "W") return value;
            if (suffix == "dBm") return dbm_to_watts(value);
            break;
        case Unit::angle:
            if (suffix == "rad") return value;
            if (suffix == "mrad") return value * 1e-3;
            if (suffix == "deg") return value * std::numbers::pi / 180.0;
            break;
        case Unit::length:
            if (suffix == "m") return value;
            if (suffix == "cm") return value * 1e-2;
            if (suffix == "mm") return value * 1e-3;
            if (suffix == "nm") return value * 1e-9;
            break;
        case Unit::rice_factor:
            if (suffix == "dB") return db_to_linear(value);
            break;
        case Unit::path_loss:
            if (suffix == "dB/km") return value;
            break;
    }
    bad();
    return value;
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw NumericalError("format_double: conversion failed");
    return std::string(buf.data(), end);
}

SystemParams parse_config(std::string_view text) {
    SystemParams params;
    std::set<std::string, std::less<>> seen;
    std::map<std::string_view, const Field*> by_name;
    for (const auto& f : fields()) by_name.emplace(f.name, &f);

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(line_no, "expected 'key = value'");
        if (seen.contains(key)) fail(line_no, fmt::format("duplicate key '{}'", key));
        seen.emplace(key);

        if (key == "geometry_mode") {
            try {
                params.geometry_mode = geometry_mode_from_string(std::string(value));
            } catch (const ParameterError& e) {
                fail(line_no, e.what());
            }
            continue;
        }

        const auto it = by_name.find(key);
        if (it == by_name.end()) fail(line_no, fmt::format("unknown key '{}'", key));

        double number = 0.0;
        const auto [num_end, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
        if (ec != std::errc{} || !std::isfinite(number)) {
            fail(line_no, fmt::format("'{}' is not a finite number", value));
        }
        const std::string_view suffix = trim(value.substr(static_cast<std::size_t>(num_end - value.data())));
        it->second->set(params, apply_unit(it->second->unit, number, suffix, line_no, key));
    }

    auto exclusive = [&](const char* a, const char* b, std::optional<double>& slot_a, std::optional<double>& slot_b) {
        const bool has_a = seen.contains(std::string_view(a));
        const bool has_b = seen.contains(std::string_view(b));
        if (has_a && has_b) throw ParameterError(fmt::format("config: give only one of '{}' and '{}'", a, b));
        if (has_a) slot_b.reset();
        if (has_b) slot_a.reset();
    };
    exclusive("rice_a", "rice_k", params.rice_a, params.rice_k);
    exclusive("cn2", "rytov_sq", params.cn2, params.rytov_sq);
    return params;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError(fmt::format("cannot read '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SystemParams load_config(const std::filesystem::path& path) { return parse_config(read_text_file(path)); }

std::string canonical_config_text(const SystemParams& params) {
    std::map<std::string, std::string> lines;
    for (const auto& f : fields()) {
        if (const auto v = f.get(params)) lines.emplace(f.name, format_double(*v));
    }
    lines.emplace("geometry_mode", to_string(params.geometry_mode));
    std::string out;
    for (const auto& [key, value] : lines) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

std::string config_digest(const SystemParams& params) { return sha256_hex(canonical_config_text(params)); }

}  // namespace orislink
