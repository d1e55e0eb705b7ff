#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fif/maps.hpp"

namespace fif {

/// A starting function for the iteration; must satisfy s(a) = m and s(b) = M.
class SeedFunction {
public:
    SeedFunction(std::string name, std::function<double(double)> f);

    /// Straight line through (a, m) and (b, M).
    static SeedFunction chord(const CountableDataSystem& sys);
    /// Rises linearly from m to M over the first `ramp` fraction of [a,b], then stays at M.
    static SeedFunction plateau(const CountableDataSystem& sys, double ramp = 0.1);
    /// Chord plus amplitude * sin(frequency * pi * t), clamped into Y.
    static SeedFunction bump(const CountableDataSystem& sys, double amplitude, int frequency = 1);
    /// Chord plus a few random sine modes, clamped into Y. Deterministic in `seed`.
    static SeedFunction random(const CountableDataSystem& sys, std::uint64_t seed, int modes = 4);

    double operator()(double x) const { return f_(x); }
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
    std::function<double(double)> f_;
};

/// Throws InvalidInput unless s(a) = m and s(b) = M within kMembershipTol.
void check_seed(const CountableDataSystem& sys, const SeedFunction& seed);

/// Strictly increasing abscissae over [a, b] containing every node x_0..x_N and b.
struct EvaluationGrid {
    std::shared_ptr<const std::vector<double>> xs;

    std::size_t size() const noexcept { return xs->size(); }
    /// Largest gap between neighbouring abscissae.
    double spacing() const;
};

/// R uniform intervals over [a, b] with every node inserted.
EvaluationGrid make_grid(const CountableDataSystem& sys, std::size_t resolution);

/// A computable approximation of a function in C([a,b]).
class Interpolant {
public:
    struct Grid {
        std::shared_ptr<const std::vector<double>> xs;
        std::vector<double> values;
    };
    struct Recursive {
        std::shared_ptr<const MapSystem> ms;
        SeedFunction seed;
        std::size_t depth;
    };

    static Interpolant on_grid(const EvaluationGrid& grid, std::vector<double> values);
    static Interpolant sample(const SeedFunction& f, const EvaluationGrid& grid);
    static Interpolant recursive(std::shared_ptr<const MapSystem> ms, SeedFunction seed, std::size_t depth);

    /// Piecewise-linear between grid samples, or (T^[k] seed)(x) for the recursive form.
    double operator()(double x) const;

    bool is_grid() const noexcept { return std::holds_alternative<Grid>(rep_); }
    const Grid& grid() const;
    EvaluationGrid evaluation_grid() const;

private:
    explicit Interpolant(std::variant<Grid, Recursive> rep) : rep_(std::move(rep)) {}
    std::variant<Grid, Recursive> rep_;
};

/// Uniform distance between two grid interpolants on their common grid.
double uniform_distance(const Interpolant& f, const Interpolant& g);

/// One application of T to a grid function. Values off the grid are read by
/// piecewise-linear interpolation; the tail (x_N, b] evaluates to M.
/// Throws ConfigError if the grid misses a node or b.
Interpolant apply_T(const Interpolant& f, const MapSystem& ms);

/// T_f(x) for an arbitrary callable f, with the interval chosen by find_interval.
double t_value(const MapSystem& ms, const std::function<double(double)>& f, double x);
/// T_f(x) through the explicit interval n (x must lie in [x_{n-1}, x_n]).
double t_value_via(const MapSystem& ms, const std::function<double(double)>& f, double x, std::size_t n);

/// (T^[k] seed)(x) evaluated exactly by unrolling f(l_n(u)) = W_n(u, f(u)) along
/// the pullback chain of x. Reaching the tail short-circuits to M.
double evaluate_recursive(const MapSystem& ms, double x, std::size_t depth, const SeedFunction& seed);

struct ResidualReport {
    std::size_t iterations = 0;
    double sup_residual = 0.0;
    std::vector<double> history;
    std::vector<double> node_errors;  ///< |f(x_n) - y_n| for n = 0..N
    double endpoint_error = 0.0;      ///< |f(b) - M|
    bool converged = false;
    double tol = 0.0;
};

struct PicardResult {
    Interpolant f;
    ResidualReport report;
};

/// Picard iteration of T from `seed` until successive iterates are within
/// `tol` uniformly on the grid, or `max_iter` applications.
PicardResult picard_iterate(const MapSystem& ms, const SeedFunction& seed, const EvaluationGrid& grid,
                            double tol = 1e-10, std::size_t max_iter = 10000);

struct InterpolationReport {
    std::vector<double> node_errors;
    double endpoint_error = 0.0;
    std::vector<std::size_t> failures;  ///< node indices with error > tol
    bool endpoint_ok = false;
    double max_error = 0.0;
    bool passed() const noexcept { return failures.empty() && endpoint_ok; }
};

InterpolationReport verify_interpolation(const Interpolant& f, const CountableDataSystem& sys, double tol);

struct ContractionReport {
    double dist_gh = 0.0;
    double dist_TgTh = 0.0;
    double phi_bound = 0.0;  ///< phi(dist_gh)
    double slack = 0.0;
    bool holds = false;
};

/// Checks d(Tg, Th) <= phi(d(g, h)) + slack on the grid shared by g and h.
/// Throws InvalidInput if g or h misses the boundary values m, M.
ContractionReport t_contraction_check(const MapSystem& ms, const Interpolant& g, const Interpolant& h,
                                      double slack = 1e-8);

struct GridStudy {
    std::size_t resolution = 0;
    double difference = 0.0;  ///< uniform distance between the last two resolutions
    bool stable = false;
    PicardResult result;
};

/// Doubles the grid resolution from `start` until the converged functions at
/// consecutive resolutions differ by at most `tol` on the coarser grid.
GridStudy refine_until_stable(const MapSystem& ms, const SeedFunction& seed, std::size_t start,
                              std::size_t max_resolution, double tol, double picard_tol = 1e-10,
                              std::size_t max_iter = 10000);

}  // namespace fif
