#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fif/config.hpp"
#include "fif/metric.hpp"

namespace fif {

/// Process exit codes shared by every command.
enum ExitCode : int {
    kExitOk = 0,
    kExitMalformedConfig = 2,
    kExitInvalidSystem = 3,
    kExitNotConverged = 4,
    kExitVerifyFailed = 5,
};

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_interpolate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_attractor(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Loads `config_path`, applies the overrides and dispatches to the named command.
/// Malformed configs map to kExitMalformedConfig, builder failures to kExitInvalidSystem.
int run_command(const std::string& command, const std::filesystem::path& config_path, const Overrides& overrides,
                std::ostream& out, std::ostream& err);

/// `x,y` header then one "%.17g,%.17g" row per point, LF line endings.
std::string format_csv(std::span<const Point2> points);
std::vector<Point2> parse_csv(const std::string& text);

}  // namespace fif
