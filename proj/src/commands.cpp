#include "fif/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fif/attractor.hpp"
#include "fif/errors.hpp"
#include "fif/interp_operator.hpp"
#include "fif/tail_bound.hpp"

namespace fif {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot write '" + path.string() + "'");
    }
    f << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

json points_json(std::span<const Point2> pts) {
    json xs = json::array();
    json ys = json::array();
    for (const auto& p : pts) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    return json{{"x", std::move(xs)}, {"y", std::move(ys)}};
}

void write_points(const RunConfig& cfg, const std::string& stem, std::span<const Point2> pts) {
    if (cfg.format == "csv" || cfg.format == "both") {
        write_file(cfg.out_dir / (stem + ".csv"), format_csv(pts));
    }
    if (cfg.format == "json" || cfg.format == "both") {
        write_json(cfg.out_dir / (stem + ".json"), points_json(pts));
    }
}

std::vector<Point2> grid_points(const Interpolant& f) {
    const auto& g = f.grid();
    std::vector<Point2> pts(g.values.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = {(*g.xs)[i], g.values[i]};
    }
    return pts;
}

std::string family_name(FamilyKind k) { return k == FamilyKind::A ? "A" : "B"; }

json system_json(const MapSystem& ms) {
    const auto& sys = ms.system();
    const TailBound tb = tail_bound(ms);
    return json{{"a", sys.a()},
                {"b", sys.b()},
                {"m", sys.m()},
                {"M", sys.M()},
                {"depth", sys.depth()},
                {"family", family_name(ms.family())},
                {"y_interval", {sys.y_space().lo, sys.y_space().hi}},
                {"sup_Ln", ms.sup_Ln()},
                {"L", ms.L()},
                {"theta", ms.theta()},
                {"phi", ms.phi().description()},
                {"tail_bound",
                 {{"bound", tb.bound},
                  {"argmax", tb.argmax},
                  {"value_bound", tb.value_bound},
                  {"scanned_to", tb.scanned_to},
                  {"non_increasing", tb.non_increasing}}}};
}

SeedFunction make_seed(const RunConfig& cfg, const CountableDataSystem& sys) {
    return cfg.seed_function == "plateau" ? SeedFunction::plateau(sys) : SeedFunction::chord(sys);
}

json residual_json(const ResidualReport& r) {
    return json{{"iterations", r.iterations}, {"sup_residual", r.sup_residual}, {"history", r.history},
                {"node_errors", r.node_errors}, {"endpoint_error", r.endpoint_error},
                {"converged", r.converged}, {"tol", r.tol}};
}

/// Largest distance from a node (x_n, y_n) to the nearest cloud point.
double node_containment(const MapSystem& ms, const PointSet& cloud) {
    const auto& sys = ms.system();
    const ProductMetric d1 = ProductMetric::d1();
    double worst = 0.0;
    for (std::size_t n = 0; n <= sys.depth(); ++n) {
        const Point2 node = sys.node(n);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : cloud) {
            best = std::min(best, d1(node, p));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

struct Check {
    std::string name;
    bool passed = false;
    std::string summary;
    json details;
};

}  // namespace

std::string format_csv(std::span<const Point2> points) {
    std::string s = "x,y\n";
    s.reserve(points.size() * 50 + 4);
    for (const auto& p : points) {
        s += fmt(p.x);
        s += ',';
        s += fmt(p.y);
        s += '\n';
    }
    return s;
}

std::vector<Point2> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "x,y") {
        throw InvalidInput("csv: expected header 'x,y'");
    }
    std::vector<Point2> pts;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InvalidInput("csv: malformed row '" + line + "'");
        }
        pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return pts;
}

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const MapSystem ms = build_from_config(cfg);
    const auto& sys = ms.system();
    const TailBound tb = tail_bound(ms);
    out << "family      " << family_name(ms.family()) << "\n"
        << "depth N     " << sys.depth() << "\n"
        << "a           " << fmt(sys.a()) << "\n"
        << "b           " << fmt(sys.b()) << "\n"
        << "m           " << fmt(sys.m()) << "\n"
        << "M           " << fmt(sys.M()) << "\n"
        << "Y           [" << fmt(sys.y_space().lo) << ", " << fmt(sys.y_space().hi) << "]\n"
        << "sup L_n     " << fmt(ms.sup_Ln()) << "\n"
        << "L           " << fmt(ms.L()) << "\n"
        << "theta       " << fmt(ms.theta()) << "\n"
        << "phi         " << ms.phi().description() << "\n"
        << "tail_bound  " << fmt(tb.bound) << " (n = " << tb.argmax << ")\n";
    return kExitOk;
}

int cmd_interpolate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const MapSystem ms = build_from_config(cfg);
    const auto grid = make_grid(ms.system(), cfg.grid);
    const auto seed = make_seed(cfg, ms.system());
    PicardResult res = picard_iterate(ms, seed, grid, cfg.tol, cfg.max_iter);
    const auto check = verify_interpolation(res.f, ms.system(), cfg.node_tol);

    write_points(cfg, "interpolant", grid_points(res.f));
    json report{{"command", "interpolate"},
                {"system", system_json(ms)},
                {"grid", {{"resolution", cfg.grid}, {"points", grid.size()}, {"spacing", grid.spacing()}}},
                {"seed_function", seed.name()},
                {"max_iter", cfg.max_iter},
                {"residual", residual_json(res.report)},
                {"interpolation", {{"node_tol", cfg.node_tol}, {"max_error", check.max_error}, {"passed", check.passed()}}}};
    write_json(cfg.out_dir / "interpolate_report.json", report);

    out << "iterations    " << res.report.iterations << "\n"
        << "sup residual  " << fmt(res.report.sup_residual) << "\n"
        << "node error    " << fmt(check.max_error) << "\n"
        << "output        " << cfg.out_dir.string() << "\n";
    if (!res.report.converged) {
        err << "error: Picard iteration did not reach tol " << fmt(cfg.tol) << " within " << cfg.max_iter
            << " iterations\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_attractor(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const MapSystem ms = build_from_config(cfg);
    const auto& sys = ms.system();
    const IterationConfig it = iteration_config(cfg);
    const AttractorApprox A = iterate_attractor(ms, it);

    IterationConfig alt_cfg = it;
    alt_cfg.initial = it.initial == InitialSet::SeedGraph ? InitialSet::Endpoint : InitialSet::SeedGraph;
    const AttractorApprox alt = iterate_attractor(ms, alt_cfg);

    write_points(cfg, "attractor", A.cloud.points());

    const ProductMetric metric = make_metric(ms, cfg.metric);
    json trace{{"command", "attractor"},
               {"system", system_json(ms)},
               {"initial", to_string(it.initial)},
               {"metric", to_string(cfg.metric)},
               {"tol", it.tol},
               {"dedup_tol", it.dedup_tol},
               {"effective_dedup", A.effective_dedup},
               {"thinning_events", A.thinning_events},
               {"iterations", A.iteration},
               {"converged", A.converged},
               {"hausdorff_trace", A.hausdorff_trace},
               {"cloud_size", A.cloud.size()}};

    const double node_dist = node_containment(ms, A.cloud);
    trace["node_containment"] = {{"max_distance", node_dist},
                                 {"passed", node_dist <= std::max(A.effective_dedup, kMembershipTol)}};

    bool ok = A.converged && alt.converged;
    trace["alternative"] = {{"initial", to_string(alt_cfg.initial)},
                            {"iterations", alt.iteration},
                            {"converged", alt.converged}};
    if (ok) {
        const double cross = hausdorff(A.cloud, alt.cloud, metric);
        trace["cross_hausdorff"] = {{"distance", cross}, {"limit", 2 * it.tol}, {"passed", cross <= 2 * it.tol}};

        const auto grid = make_grid(sys, cfg.grid);
        PicardResult res = picard_iterate(ms, make_seed(cfg, sys), grid, cfg.tol, cfg.max_iter);
        if (res.report.converged) {
            const double dist = graph_vs_attractor(res.f, A, sys, cfg.graph_density, metric);
            const auto bound = graph_attractor_bound(ms, grid.spacing(), it.tol);
            trace["graph_distance"] = {{"distance", dist},
                                       {"density", cfg.graph_density},
                                       {"bound", {{"tail", bound.tail}, {"grid", bound.grid},
                                                  {"cloud", bound.cloud}, {"total", bound.total()}}},
                                       {"passed", dist <= bound.total()}};
            out << "graph distance  " << fmt(dist) << " (bound " << fmt(bound.total()) << ")\n";
        } else {
            ok = false;
        }
        out << "cross Hausdorff " << fmt(cross) << "\n";
    }
    write_json(cfg.out_dir / "attractor_trace.json", trace);

    out << "iterations      " << A.iteration << "\n"
        << "cloud size      " << A.cloud.size() << "\n"
        << "output          " << cfg.out_dir.string() << "\n";
    if (!ok) {
        err << "error: attractor iteration did not converge to tol " << fmt(it.tol) << " within "
            << it.max_iterations << " iterations\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const MapSystem ms = build_from_config(cfg);
    const auto& sys = ms.system();
    std::vector<Check> checks;

    {
        const auto grid = log_grid(1e-6, 1e3, 200);
        const auto cert = certify_rakotch(ms.phi(), grid);
        checks.push_back({"comparison_function", cert.passed(), ms.phi().description(),
                          {{"alpha_below_one", cert.alpha_below_one},
                           {"alpha_non_increasing", cert.alpha_non_increasing},
                           {"phi_non_decreasing", cert.phi_non_decreasing},
                           {"worst_margin", cert.worst_margin}}});
    }
    {
        const auto cert = rakotch_certificate(ms, sample_pairs(ms, cfg.point_pairs, cfg.seed), cfg.rakotch_slack);
        checks.push_back({"map_rakotch", cert.status == CertificateStatus::Pass,
                          std::to_string(cert.violations) + " violations in " + std::to_string(cert.checks) + " checks",
                          {{"status", to_string(cert.status)},
                           {"theta", cert.theta},
                           {"sup_Ln", cert.sup_Ln},
                           {"L", cert.L},
                           {"alpha_floor", cert.alpha_floor},
                           {"pairs", cert.pairs},
                           {"checks", cert.checks},
                           {"violations", cert.violations},
                           {"worst_ratio", cert.worst_ratio},
                           {"worst_excess", cert.worst_excess},
                           {"note", cert.note}}});
    }

    const auto grid = make_grid(sys, cfg.grid);
    {
        std::size_t violations = 0;
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cfg.function_pairs; ++i) {
            const auto g = Interpolant::sample(SeedFunction::random(sys, cfg.seed + 2 * i), grid);
            const auto h = Interpolant::sample(SeedFunction::random(sys, cfg.seed + 2 * i + 1), grid);
            const auto r = t_contraction_check(ms, g, h, cfg.contraction_slack);
            violations += r.holds ? 0 : 1;
            worst = std::max(worst, r.dist_TgTh - r.phi_bound);
        }
        checks.push_back({"operator_contraction", violations == 0,
                          std::to_string(violations) + " violations in " + std::to_string(cfg.function_pairs) + " pairs",
                          {{"pairs", cfg.function_pairs}, {"violations", violations},
                           {"worst_excess", cfg.function_pairs ? worst : 0.0}, {"slack", cfg.contraction_slack}}});
    }

    PicardResult res = picard_iterate(ms, make_seed(cfg, sys), grid, cfg.tol, cfg.max_iter);
    {
        const auto r = verify_interpolation(res.f, sys, cfg.node_tol);
        checks.push_back({"interpolation", res.report.converged && r.passed(),
                          "max node error " + fmt(r.max_error),
                          {{"converged", res.report.converged}, {"iterations", res.report.iterations},
                           {"node_errors", r.node_errors}, {"endpoint_error", r.endpoint_error},
                           {"tol", cfg.node_tol}}});
    }
    {
        const IterationConfig it = iteration_config(cfg);
        const AttractorApprox A = iterate_attractor(ms, it);
        json details{{"attractor_converged", A.converged}, {"iterations", A.iteration},
                     {"cloud_size", A.cloud.size()}};
        bool passed = false;
        std::string summary = "attractor or interpolant did not converge";
        if (A.converged && res.report.converged) {
            const double dist = graph_vs_attractor(res.f, A, sys, cfg.graph_density, make_metric(ms, cfg.metric));
            const auto bound = graph_attractor_bound(ms, grid.spacing(), it.tol);
            passed = dist <= bound.total();
            summary = "distance " + fmt(dist) + " <= bound " + fmt(bound.total());
            details["distance"] = dist;
            details["bound"] = bound.total();
        }
        checks.push_back({"graph_attractor", passed, summary, details});
    }
    if (ms.family() == FamilyKind::B) {
        const auto w = non_banach_witness(ms, 1, cfg.point_pairs, cfg.seed);
        checks.push_back({"non_banach_witness", w.ratio >= 0.999, "ratio " + fmt(w.ratio),
                          {{"n", w.n}, {"x", w.x}, {"y", w.y}, {"y2", w.y2}, {"ratio", w.ratio}}});
    }

    bool all = true;
    json arr = json::array();
    for (const auto& c : checks) {
        all = all && c.passed;
        arr.push_back({{"name", c.name}, {"passed", c.passed}, {"summary", c.summary}, {"details", c.details}});
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.summary << "\n";
    }
    write_json(cfg.out_dir / "verify_report.json",
               json{{"command", "verify"}, {"seed", cfg.seed}, {"system", system_json(ms)}, {"checks", arr},
                    {"all_passed", all}});
    out << (all ? "all checks passed" : "some checks failed") << "\n";
    return all ? kExitOk : kExitVerifyFailed;
}

int run_command(const std::string& command, const std::filesystem::path& config_path, const Overrides& overrides,
                std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        apply(cfg, overrides);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitMalformedConfig;
    }
    try {
        if (command == "build") return cmd_build(cfg, out, err);
        if (command == "interpolate") return cmd_interpolate(cfg, out, err);
        if (command == "attractor") return cmd_attractor(cfg, out, err);
        if (command == "verify") return cmd_verify(cfg, out, err);
        err << "unknown command '" << command << "'\n";
        return kExitMalformedConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitMalformedConfig;
    } catch (const Error& e) {
        err << "invalid system: " << e.what() << "\n";
        return kExitInvalidSystem;
    }
}

}  // namespace fif
