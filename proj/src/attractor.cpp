#include "fif/attractor.hpp"

#include <cmath>

#include "fif/errors.hpp"

namespace fif {

ProductMetric make_metric(const MapSystem& ms, MetricKind kind) {
    return kind == MetricKind::D1 ? ProductMetric::d1() : ProductMetric::weighted(ms.theta_metric());
}

std::string to_string(MetricKind kind) { return kind == MetricKind::D1 ? "d1" : "dtheta"; }

std::string to_string(InitialSet kind) {
    switch (kind) {
    case InitialSet::Nodes:
        return "nodes";
    case InitialSet::SeedGraph:
        return "seed_graph";
    case InitialSet::Endpoint:
        return "endpoint";
    case InitialSet::User:
        return "user";
    }
    return "nodes";
}

void validate(const IterationConfig& cfg) {
    if (!(cfg.tol > 0.0) || !(cfg.dedup_tol > 0.0)) {
        throw InvalidInput("attractor tolerances must be > 0");
    }
    if (cfg.max_iterations < 1 || cfg.budget < 1) {
        throw InvalidInput("attractor max_iterations and budget must be >= 1");
    }
    if (cfg.initial == InitialSet::User && cfg.user_cloud.empty()) {
        throw InvalidInput("user initial set is empty");
    }
}

PointSet fractal_step(const PointSet& K, const MapSystem& ms, double dedup_tol) {
    const auto& sys = ms.system();
    std::vector<Point2> out;
    out.reserve(K.size() * ms.depth() + 1);
    out.push_back({sys.b(), sys.M()});
    for (std::size_t n = 1; n <= ms.depth(); ++n) {
        for (const auto& p : K) {
            out.push_back(f_eval(ms, n, p));
        }
    }
    return PointSet(std::move(out), dedup_tol);
}

PointSet initial_cloud(const MapSystem& ms, const IterationConfig& cfg) {
    const auto& sys = ms.system();
    switch (cfg.initial) {
    case InitialSet::Nodes: {
        std::vector<Point2> pts;
        for (std::size_t n = 0; n <= sys.depth(); ++n) {
            pts.push_back(sys.node(n));
        }
        return PointSet(std::move(pts), cfg.dedup_tol);
    }
    case InitialSet::SeedGraph: {
        const SeedFunction seed = cfg.seed.value_or(SeedFunction::chord(sys));
        check_seed(sys, seed);
        const auto grid = make_grid(sys, cfg.seed_samples > 1 ? cfg.seed_samples - 1 : 1);
        std::vector<Point2> pts;
        pts.reserve(grid.size());
        for (double x : *grid.xs) {
            pts.push_back({x, seed(x)});
        }
        return PointSet(std::move(pts), cfg.dedup_tol);
    }
    case InitialSet::Endpoint:
        return PointSet({{sys.b(), sys.M()}}, cfg.dedup_tol);
    case InitialSet::User:
        return PointSet(cfg.user_cloud, cfg.dedup_tol);
    }
    throw InvalidInput("unknown initial set");
}

AttractorApprox iterate_attractor(const MapSystem& ms, const IterationConfig& cfg) {
    validate(cfg);
    const ProductMetric metric = make_metric(ms, cfg.metric);

    double dedup = cfg.dedup_tol;
    std::size_t thinning = 0;
    PointSet current = initial_cloud(ms, cfg);
    std::vector<double> trace;
    bool converged = false;
    std::size_t iteration = 0;

    while (iteration < cfg.max_iterations) {
        PointSet next = fractal_step(current, ms, dedup);
        while (next.size() > cfg.budget) {
            dedup *= 2.0;
            ++thinning;
            next = PointSet(std::vector<Point2>(next.begin(), next.end()), dedup);
        }
        ++iteration;
        const double h = hausdorff(next, current, metric);
        trace.push_back(h);
        current = std::move(next);
        if (h <= cfg.tol) {
            converged = true;
            break;
        }
    }
    return AttractorApprox{std::move(current), iteration, std::move(trace), converged, dedup, thinning};
}

PointSet graph_sample(const Interpolant& f, const CountableDataSystem& sys, std::size_t density) {
    const auto grid = make_grid(sys, density);
    std::vector<Point2> pts;
    pts.reserve(grid.size());
    for (double x : *grid.xs) {
        pts.push_back({x, f(x)});
    }
    return PointSet(std::move(pts));
}

double graph_vs_attractor(const Interpolant& f, const AttractorApprox& A, const CountableDataSystem& sys,
                          std::size_t density, const ProductMetric& metric) {
    if (!A.converged) {
        throw InvalidInput("graph_vs_attractor: attractor iteration has not converged");
    }
    return hausdorff(graph_sample(f, sys, density), A.cloud, metric);
}

GraphAttractorBound graph_attractor_bound(const MapSystem& ms, double grid_spacing, double cloud_tol) {
    return {tail_bound(ms).bound, 10.0 * grid_spacing, 2.0 * cloud_tol};
}

}  // namespace fif
