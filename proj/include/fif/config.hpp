#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fif/attractor.hpp"
#include "fif/data_system.hpp"
#include "fif/maps.hpp"

namespace fif {

/// Declarative sequence description as written in a config file.
struct SequenceConfig {
    std::string kind = "geometric";  ///< geometric | harmonic | constant | table
    double base = 2.0;
    double scale = -1.0;
    double offset = 1.0;
    double shift = 1.0;
    double value = 0.0;
    double limit = 0.0;
    std::vector<double> values;

    static SequenceConfig geometric(double base, double scale, double offset) {
        SequenceConfig s;
        s.base = base;
        s.scale = scale;
        s.offset = offset;
        return s;
    }

    /// Builds the sequence; InvalidInput for bad parameter values.
    SequenceSpec to_spec() const;
};

/// Everything a CLI run needs. Defaults describe the canonical instance:
/// x_n = 1 - 2^-n, y_n = 1 - 3^-n, N = 8, Y = [0, 1.25], family A with d_n = 2^-n.
struct RunConfig {
    SequenceConfig xs = SequenceConfig::geometric(2.0, -1.0, 1.0);
    SequenceConfig ys = SequenceConfig::geometric(3.0, -1.0, 1.0);
    std::size_t depth = 8;
    Interval y_space{0.0, 1.25};

    FamilyKind family = FamilyKind::A;
    std::optional<SequenceConfig> d;  ///< family A; default 2^-n
    std::size_t tail_scan = 10000;

    std::size_t grid = 4096;
    double tol = 1e-10;
    std::size_t max_iter = 10000;
    std::string seed_function = "chord";  ///< chord | plateau

    InitialSet initial = InitialSet::Nodes;
    double cloud_tol = 1e-4;
    double dedup_tol = 2.5e-5;
    std::size_t cloud_max_iter = 200;
    std::size_t budget = 200000;
    std::size_t graph_density = 4096;
    MetricKind metric = MetricKind::D1;

    std::uint64_t seed = 42;
    std::size_t point_pairs = 1000;
    std::size_t function_pairs = 100;
    double node_tol = 1e-9;
    double rakotch_slack = 1e-10;
    double contraction_slack = 1e-8;

    std::filesystem::path out_dir = "out";
    std::string format = "csv";  ///< csv | json | both
};

/// Command-line flags that override config values.
struct Overrides {
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::size_t> grid;
    std::optional<std::size_t> depth;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::optional<FamilyKind> family;
    std::optional<std::uint64_t> seed;
    std::optional<MetricKind> metric;
};

/// Parses a JSON config file. Missing sections keep their defaults; unknown
/// keys and wrong types raise ConfigError naming the offending field.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text);

void apply(RunConfig& cfg, const Overrides& overrides);

FamilyKind parse_family(const std::string& s);
MetricKind parse_metric(const std::string& s);

/// Data system + map system described by the config (throws the builders' errors).
MapSystem build_from_config(const RunConfig& cfg);

IterationConfig iteration_config(const RunConfig& cfg);

}  // namespace fif
