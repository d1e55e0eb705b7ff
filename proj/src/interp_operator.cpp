#include "fif/interp_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fif/errors.hpp"

namespace fif {

namespace {

double interp_linear(const std::vector<double>& xs, const std::vector<double>& values, double u) {
    if (u <= xs.front()) {
        return values.front();
    }
    if (u >= xs.back()) {
        return values.back();
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), u);
    const auto hi = static_cast<std::size_t>(it - xs.begin());
    const auto lo = hi - 1;
    if (u == xs[lo]) {
        return values[lo];
    }
    const double t = (u - xs[lo]) / (xs[hi] - xs[lo]);
    return values[lo] + t * (values[hi] - values[lo]);
}

void check_grid(const std::vector<double>& xs, const CountableDataSystem& sys) {
    if (xs.empty() || xs.front() != sys.a() || xs.back() != sys.b()) {
        throw ConfigError("evaluation grid must start at a and end at b");
    }
    for (std::size_t n = 0; n <= sys.depth(); ++n) {
        if (!std::binary_search(xs.begin(), xs.end(), sys.node_xs()[n])) {
            throw ConfigError("evaluation grid is missing node x_" + std::to_string(n));
        }
    }
}

void check_boundary(const Interpolant& f, const CountableDataSystem& sys, const char* name) {
    if (std::abs(f(sys.a()) - sys.m()) > kMembershipTol || std::abs(f(sys.b()) - sys.M()) > kMembershipTol) {
        throw InvalidInput(std::string(name) + " is not in C([a,b]): boundary values differ from m, M");
    }
}

double chord_value(const CountableDataSystem& sys, double x) {
    const double t = (x - sys.a()) / (sys.b() - sys.a());
    return sys.m() + t * (sys.M() - sys.m());
}

}  // namespace

SeedFunction::SeedFunction(std::string name, std::function<double(double)> f)
    : name_(std::move(name)), f_(std::move(f)) {
    if (!f_) {
        throw InvalidInput("seed function needs an evaluator");
    }
}

SeedFunction SeedFunction::chord(const CountableDataSystem& sys) {
    const double a = sys.a();
    const double b = sys.b();
    const double m = sys.m();
    const double M = sys.M();
    return SeedFunction("chord", [a, b, m, M](double x) {
        if (x >= b) {
            return M;
        }
        return m + (x - a) / (b - a) * (M - m);
    });
}

SeedFunction SeedFunction::plateau(const CountableDataSystem& sys, double ramp) {
    if (!(ramp > 0.0 && ramp <= 1.0)) {
        throw InvalidInput("plateau ramp fraction must lie in (0, 1]");
    }
    const double a = sys.a();
    const double w = ramp * (sys.b() - sys.a());
    const double m = sys.m();
    const double M = sys.M();
    return SeedFunction("plateau", [a, w, m, M](double x) { return m + std::min(1.0, (x - a) / w) * (M - m); });
}

SeedFunction SeedFunction::bump(const CountableDataSystem& sys, double amplitude, int frequency) {
    const double a = sys.a();
    const double b = sys.b();
    const Interval Y = sys.y_space();
    auto chord = SeedFunction::chord(sys);
    std::ostringstream name;
    name << "bump(" << amplitude << ", " << frequency << ")";
    return SeedFunction(name.str(), [=](double x) {
        if (x <= a || x >= b) {
            return chord(x);
        }
        const double t = (x - a) / (b - a);
        const double v = chord(x) + amplitude * std::sin(frequency * std::numbers::pi * t);
        return std::clamp(v, Y.lo, Y.hi);
    });
}

SeedFunction SeedFunction::random(const CountableDataSystem& sys, std::uint64_t seed, int modes) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-0.5, 0.5);
    std::vector<double> amplitudes(static_cast<std::size_t>(modes));
    const double scale = sys.y_space().diam();
    for (auto& v : amplitudes) {
        v = amp(rng) * scale;
    }
    const double a = sys.a();
    const double b = sys.b();
    const Interval Y = sys.y_space();
    const CountableDataSystem copy = sys;
    return SeedFunction("random(" + std::to_string(seed) + ")", [=](double x) {
        if (x <= a || x >= b) {
            return x <= a ? copy.m() : copy.M();
        }
        const double t = (x - a) / (b - a);
        double v = chord_value(copy, x);
        for (std::size_t k = 0; k < amplitudes.size(); ++k) {
            v += amplitudes[k] * std::sin(static_cast<double>(k + 1) * std::numbers::pi * t);
        }
        return std::clamp(v, Y.lo, Y.hi);
    });
}

void check_seed(const CountableDataSystem& sys, const SeedFunction& seed) {
    if (std::abs(seed(sys.a()) - sys.m()) > kMembershipTol || std::abs(seed(sys.b()) - sys.M()) > kMembershipTol) {
        throw InvalidInput("seed '" + seed.name() + "' must satisfy s(a) = m and s(b) = M");
    }
}

double EvaluationGrid::spacing() const {
    double gap = 0.0;
    for (std::size_t i = 1; i < xs->size(); ++i) {
        gap = std::max(gap, (*xs)[i] - (*xs)[i - 1]);
    }
    return gap;
}

EvaluationGrid make_grid(const CountableDataSystem& sys, std::size_t resolution) {
    if (resolution < 1) {
        throw InvalidInput("grid resolution must be >= 1");
    }
    const double a = sys.a();
    const double b = sys.b();
    const double snap = 1e-13 * (b - a);

    std::vector<double> xs;
    xs.reserve(resolution + sys.depth() + 2);
    for (std::size_t i = 0; i <= resolution; ++i) {
        xs.push_back(i == resolution ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(resolution));
    }
    for (double node : sys.node_xs()) {
        auto it = std::lower_bound(xs.begin(), xs.end(), node);
        if (it != xs.end() && std::abs(*it - node) <= snap) {
            *it = node;
        } else if (it != xs.begin() && std::abs(*(it - 1) - node) <= snap) {
            *(it - 1) = node;
        } else {
            xs.insert(it, node);
        }
    }
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return {std::make_shared<const std::vector<double>>(std::move(xs))};
}

Interpolant Interpolant::on_grid(const EvaluationGrid& grid, std::vector<double> values) {
    if (values.size() != grid.size()) {
        throw InvalidInput("grid interpolant needs one value per abscissa");
    }
    return Interpolant(Grid{grid.xs, std::move(values)});
}

Interpolant Interpolant::sample(const SeedFunction& f, const EvaluationGrid& grid) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (double x : *grid.xs) {
        values.push_back(f(x));
    }
    return on_grid(grid, std::move(values));
}

Interpolant Interpolant::recursive(std::shared_ptr<const MapSystem> ms, SeedFunction seed, std::size_t depth) {
    if (!ms) {
        throw InvalidInput("recursive interpolant needs a map system");
    }
    check_seed(ms->system(), seed);
    return Interpolant(Recursive{std::move(ms), std::move(seed), depth});
}

double Interpolant::operator()(double x) const {
    if (const auto* g = std::get_if<Grid>(&rep_)) {
        return interp_linear(*g->xs, g->values, x);
    }
    const auto& r = std::get<Recursive>(rep_);
    return evaluate_recursive(*r.ms, x, r.depth, r.seed);
}

const Interpolant::Grid& Interpolant::grid() const {
    if (const auto* g = std::get_if<Grid>(&rep_)) {
        return *g;
    }
    throw InvalidInput("interpolant is not grid-based");
}

EvaluationGrid Interpolant::evaluation_grid() const { return {grid().xs}; }

double uniform_distance(const Interpolant& f, const Interpolant& g) {
    const auto& fg = f.grid();
    const auto& gg = g.grid();
    if (fg.xs != gg.xs && *fg.xs != *gg.xs) {
        throw InvalidInput("uniform_distance needs interpolants on the same grid");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < fg.values.size(); ++i) {
        d = std::max(d, std::abs(fg.values[i] - gg.values[i]));
    }
    return d;
}

double t_value_via(const MapSystem& ms, const std::function<double(double)>& f, double x, std::size_t n) {
    const auto& l = ms.subinterval(n);
    const double u = l_inverse(l, x);
    return w_eval(ms.vertical(), n, u, f(u));
}

double t_value(const MapSystem& ms, const std::function<double(double)>& f, double x) {
    const auto& sys = ms.system();
    if (x == sys.b()) {
        return sys.M();
    }
    const auto where = find_interval(sys, x);
    if (std::holds_alternative<TailRegion>(where)) {
        return sys.M();
    }
    return t_value_via(ms, f, x, std::get<std::size_t>(where));
}

Interpolant apply_T(const Interpolant& f, const MapSystem& ms) {
    const auto& g = f.grid();
    const auto& sys = ms.system();
    check_grid(*g.xs, sys);

    const auto& xs = *g.xs;
    std::vector<double> out(xs.size());
    auto fhat = [&](double u) { return interp_linear(xs, g.values, u); };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = t_value(ms, fhat, xs[i]);
    }
    return Interpolant::on_grid(f.evaluation_grid(), std::move(out));
}

double evaluate_recursive(const MapSystem& ms, double x, std::size_t depth, const SeedFunction& seed) {
    const auto& sys = ms.system();
    if (!std::isfinite(x) || x < sys.a() || x > sys.b()) {
        throw DomainError("evaluate_recursive: x outside [a, b]");
    }

    struct Step {
        std::size_t n;
        double u;
    };
    std::vector<Step> chain;
    chain.reserve(depth);
    double cur = x;
    bool hit_tail = false;
    while (chain.size() < depth) {
        if (cur == sys.b()) {
            hit_tail = true;
            break;
        }
        const auto where = find_interval(sys, cur);
        if (std::holds_alternative<TailRegion>(where)) {
            hit_tail = true;
            break;
        }
        const std::size_t n = std::get<std::size_t>(where);
        cur = l_inverse(ms.subinterval(n), cur);
        chain.push_back({n, cur});
    }

    double value = hit_tail ? sys.M() : seed(cur);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        value = w_eval(ms.vertical(), it->n, it->u, value);
    }
    return value;
}

PicardResult picard_iterate(const MapSystem& ms, const SeedFunction& seed, const EvaluationGrid& grid, double tol,
                            std::size_t max_iter) {
    if (!(tol > 0.0)) {
        throw InvalidInput("picard_iterate: tol must be > 0");
    }
    if (max_iter < 1) {
        throw InvalidInput("picard_iterate: max_iter must be >= 1");
    }
    const auto& sys = ms.system();
    check_seed(sys, seed);

    Interpolant f = Interpolant::sample(seed, grid);
    ResidualReport report;
    report.tol = tol;
    for (std::size_t k = 0; k < max_iter; ++k) {
        Interpolant next = apply_T(f, ms);
        const double r = uniform_distance(next, f);
        f = std::move(next);
        report.history.push_back(r);
        report.iterations = k + 1;
        report.sup_residual = r;
        if (r <= tol) {
            report.converged = true;
            break;
        }
    }
    for (std::size_t n = 0; n <= sys.depth(); ++n) {
        const auto p = sys.node(n);
        report.node_errors.push_back(std::abs(f(p.x) - p.y));
    }
    report.endpoint_error = std::abs(f(sys.b()) - sys.M());
    return {std::move(f), std::move(report)};
}

InterpolationReport verify_interpolation(const Interpolant& f, const CountableDataSystem& sys, double tol) {
    InterpolationReport rep;
    for (std::size_t n = 0; n <= sys.depth(); ++n) {
        const auto p = sys.node(n);
        const double e = std::abs(f(p.x) - p.y);
        rep.node_errors.push_back(e);
        rep.max_error = std::max(rep.max_error, e);
        if (!(e <= tol)) {
            rep.failures.push_back(n);
        }
    }
    rep.endpoint_error = std::abs(f(sys.b()) - sys.M());
    rep.endpoint_ok = rep.endpoint_error <= tol;
    rep.max_error = std::max(rep.max_error, rep.endpoint_error);
    return rep;
}

ContractionReport t_contraction_check(const MapSystem& ms, const Interpolant& g, const Interpolant& h, double slack) {
    const auto& sys = ms.system();
    check_boundary(g, sys, "g");
    check_boundary(h, sys, "h");

    ContractionReport rep;
    rep.slack = slack;
    rep.dist_gh = uniform_distance(g, h);
    rep.dist_TgTh = uniform_distance(apply_T(g, ms), apply_T(h, ms));
    rep.phi_bound = ms.phi()(rep.dist_gh);
    rep.holds = rep.dist_TgTh <= rep.phi_bound + slack;
    return rep;
}

GridStudy refine_until_stable(const MapSystem& ms, const SeedFunction& seed, std::size_t start,
                              std::size_t max_resolution, double tol, double picard_tol, std::size_t max_iter) {
    std::size_t R = start;
    PicardResult coarse = picard_iterate(ms, seed, make_grid(ms.system(), R), picard_tol, max_iter);
    double diff = 0.0;
    bool stable = false;
    while (2 * R <= max_resolution) {
        PicardResult fine = picard_iterate(ms, seed, make_grid(ms.system(), 2 * R), picard_tol, max_iter);
        diff = 0.0;
        for (double x : *coarse.f.grid().xs) {
            diff = std::max(diff, std::abs(fine.f(x) - coarse.f(x)));
        }
        R *= 2;
        coarse = std::move(fine);
        if (diff <= tol) {
            stable = true;
            break;
        }
    }
    return GridStudy{R, diff, stable, std::move(coarse)};
}

}  // namespace fif
