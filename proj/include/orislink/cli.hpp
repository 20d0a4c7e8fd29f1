#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "orislink/mc_sim.hpp"

namespace orislink::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUnexpected = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitPrecision = 4,
};

/// Inclusive transmit-power axis in dBm, written start:stop:step.
struct SweepAxis {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    static SweepAxis parse(std::string_view text);
    std::vector<double> points() const;
};

struct AnalyzeOptions {
    std::filesystem::path config;
    SweepAxis sweep;
    double gamma_th_db = 5.0;
    std::filesystem::path out;
    bool force = false;
};

struct SimulateOptions {
    std::filesystem::path config;
    Metric metric = Metric::outage;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::optional<unsigned> workers;
    std::optional<double> pt_dbm;
    double gamma_th_db = 5.0;
    std::optional<double> max_ci_halfwidth;
    std::filesystem::path out;
    bool force = false;
};

struct CompareOptions {
    std::filesystem::path config;
    SweepAxis sweep;
    double gamma_th_db = 5.0;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::optional<unsigned> workers;
    std::filesystem::path out;
    bool force = false;
};

/// Worker count: explicit flag, else ORIS_LINK_THREADS, else hardware threads.
unsigned resolve_workers(std::optional<unsigned> flag);

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orislink::cli
