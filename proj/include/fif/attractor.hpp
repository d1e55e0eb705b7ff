#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fif/interp_operator.hpp"
#include "fif/maps.hpp"
#include "fif/metric.hpp"
#include "fif/tail_bound.hpp"

namespace fif {

enum class MetricKind { D1, DTheta };

ProductMetric make_metric(const MapSystem& ms, MetricKind kind);
std::string to_string(MetricKind kind);

enum class InitialSet {
    Nodes,      ///< the data points (x_n, y_n), n = 0..N
    SeedGraph,  ///< a dense sample of the graph of a seed function
    Endpoint,   ///< the single point (b, M)
    User,       ///< caller-supplied cloud
};

std::string to_string(InitialSet kind);

struct IterationConfig {
    InitialSet initial = InitialSet::Nodes;
    std::optional<SeedFunction> seed;  ///< SeedGraph only; defaults to the chord
    std::size_t seed_samples = 4097;
    std::vector<Point2> user_cloud;
    std::size_t max_iterations = 200;
    double tol = 1e-4;        ///< Hausdorff distance between successive clouds
    double dedup_tol = 2.5e-5;
    std::size_t budget = 200000;  ///< cloud size that triggers thinning
    MetricKind metric = MetricKind::D1;
};

/// Throws InvalidInput if a tolerance is not positive.
void validate(const IterationConfig& cfg);

struct AttractorApprox {
    PointSet cloud;
    std::size_t iteration = 0;
    std::vector<double> hausdorff_trace;
    bool converged = false;
    /// Dedup tolerance after thinning; equals the configured one if no thinning happened.
    double effective_dedup = 0.0;
    std::size_t thinning_events = 0;
};

/// Union of f_n(K) for n = 1..N, plus (b, M) standing in for the closure of
/// the discarded tail images, deduplicated at `dedup_tol`.
PointSet fractal_step(const PointSet& K, const MapSystem& ms, double dedup_tol);
inline PointSet fractal_step(const PointSet& K, const MapSystem& ms) { return fractal_step(K, ms, K.dedup_tol()); }

PointSet initial_cloud(const MapSystem& ms, const IterationConfig& cfg);

/// Iterates fractal_step until successive clouds are within cfg.tol.
/// Clouds larger than cfg.budget are thinned by doubling the dedup tolerance.
AttractorApprox iterate_attractor(const MapSystem& ms, const IterationConfig& cfg);

/// Graph points (x, f(x)) on `density` uniform intervals over [a,b] plus every node.
PointSet graph_sample(const Interpolant& f, const CountableDataSystem& sys, std::size_t density);

/// Hausdorff distance between a dense sample of the graph of f and the attractor cloud.
/// Throws InvalidInput if the attractor iteration did not converge.
double graph_vs_attractor(const Interpolant& f, const AttractorApprox& A, const CountableDataSystem& sys,
                          std::size_t density, const ProductMetric& metric);

/// tail_bound + 10 * grid spacing + 2 * cloud tolerance.
struct GraphAttractorBound {
    double tail = 0.0;
    double grid = 0.0;
    double cloud = 0.0;
    double total() const noexcept { return tail + grid + cloud; }
};

GraphAttractorBound graph_attractor_bound(const MapSystem& ms, double grid_spacing, double cloud_tol);

}  // namespace fif
