#include "fif/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fif/errors.hpp"

namespace fif {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.count(key)) {
            throw ConfigError(where + "." + key + ": unknown field");
        }
    }
}

const json& section(const json& root, const char* name, const std::string& where) {
    const json& s = root.at(name);
    if (!s.is_object()) {
        throw ConfigError(where + "." + name + ": expected an object");
    }
    return s;
}

double get_number(const json& obj, const char* key, const std::string& where, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(where + "." + key + ": expected a number");
    }
    return v.get<double>();
}

std::size_t get_count(const json& obj, const char* key, const std::string& where, std::size_t fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(where + "." + key + ": expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& where, const std::string& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        throw ConfigError(where + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

SequenceConfig parse_sequence(const json& obj, const std::string& where) {
    if (!obj.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    reject_unknown(obj, where, {"kind", "base", "scale", "offset", "shift", "value", "limit", "values"});
    SequenceConfig s;
    if (!obj.contains("kind")) {
        throw ConfigError(where + ".kind: missing");
    }
    s.kind = get_string(obj, "kind", where, s.kind);
    if (s.kind == "geometric") {
        for (const char* k : {"base", "scale", "offset"}) {
            if (!obj.contains(k)) {
                throw ConfigError(where + "." + k + ": missing");
            }
        }
        s.base = get_number(obj, "base", where, s.base);
        s.scale = get_number(obj, "scale", where, s.scale);
        s.offset = get_number(obj, "offset", where, s.offset);
    } else if (s.kind == "harmonic") {
        for (const char* k : {"scale", "offset"}) {
            if (!obj.contains(k)) {
                throw ConfigError(where + "." + k + ": missing");
            }
        }
        s.scale = get_number(obj, "scale", where, s.scale);
        s.offset = get_number(obj, "offset", where, s.offset);
        s.shift = get_number(obj, "shift", where, 1.0);
    } else if (s.kind == "constant") {
        if (!obj.contains("value")) {
            throw ConfigError(where + ".value: missing");
        }
        s.value = get_number(obj, "value", where, 0.0);
    } else if (s.kind == "table") {
        if (!obj.contains("values") || !obj.at("values").is_array()) {
            throw ConfigError(where + ".values: expected an array of numbers");
        }
        if (!obj.contains("limit")) {
            throw ConfigError(where + ".limit: table sequences must declare their limit");
        }
        for (const auto& v : obj.at("values")) {
            if (!v.is_number()) {
                throw ConfigError(where + ".values: expected an array of numbers");
            }
            s.values.push_back(v.get<double>());
        }
        s.limit = get_number(obj, "limit", where, 0.0);
    } else {
        throw ConfigError(where + ".kind: unknown sequence kind '" + s.kind + "'");
    }
    return s;
}

}  // namespace

SequenceSpec SequenceConfig::to_spec() const {
    if (kind == "geometric") {
        return SequenceSpec::geometric(base, scale, offset);
    }
    if (kind == "harmonic") {
        return SequenceSpec::harmonic(scale, offset, shift);
    }
    if (kind == "constant") {
        return SequenceSpec::constant(value);
    }
    if (kind == "table") {
        return SequenceSpec::table(values, limit);
    }
    throw ConfigError("unknown sequence kind '" + kind + "'");
}

FamilyKind parse_family(const std::string& s) {
    if (s == "A" || s == "a") {
        return FamilyKind::A;
    }
    if (s == "B" || s == "b") {
        return FamilyKind::B;
    }
    throw ConfigError("family: expected A or B, got '" + s + "'");
}

MetricKind parse_metric(const std::string& s) {
    if (s == "d1") {
        return MetricKind::D1;
    }
    if (s == "dtheta") {
        return MetricKind::DTheta;
    }
    throw ConfigError("metric: expected d1 or dtheta, got '" + s + "'");
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config: expected a top-level object");
    }
    reject_unknown(root, "config", {"system", "family", "grid", "iteration", "attractor", "certificates", "output"});

    RunConfig cfg;
    if (root.contains("system")) {
        const auto& s = section(root, "system", "config");
        reject_unknown(s, "system", {"xs", "ys", "depth", "y_interval", "tail_scan"});
        if (s.contains("xs")) {
            cfg.xs = parse_sequence(s.at("xs"), "system.xs");
        }
        if (s.contains("ys")) {
            cfg.ys = parse_sequence(s.at("ys"), "system.ys");
        }
        cfg.depth = get_count(s, "depth", "system", cfg.depth);
        cfg.tail_scan = get_count(s, "tail_scan", "system", cfg.tail_scan);
        if (s.contains("y_interval")) {
            const auto& y = s.at("y_interval");
            if (!y.is_array() || y.size() != 2 || !y[0].is_number() || !y[1].is_number()) {
                throw ConfigError("system.y_interval: expected [lo, hi]");
            }
            cfg.y_space = {y[0].get<double>(), y[1].get<double>()};
        }
    }
    if (root.contains("family")) {
        const auto& f = section(root, "family", "config");
        reject_unknown(f, "family", {"kind", "d"});
        cfg.family = parse_family(get_string(f, "kind", "family", "A"));
        if (f.contains("d")) {
            cfg.d = parse_sequence(f.at("d"), "family.d");
        }
    }
    if (root.contains("grid")) {
        const auto& g = section(root, "grid", "config");
        reject_unknown(g, "grid", {"resolution"});
        cfg.grid = get_count(g, "resolution", "grid", cfg.grid);
    }
    if (root.contains("iteration")) {
        const auto& it = section(root, "iteration", "config");
        reject_unknown(it, "iteration", {"tol", "max_iter", "seed_function"});
        cfg.tol = get_number(it, "tol", "iteration", cfg.tol);
        cfg.max_iter = get_count(it, "max_iter", "iteration", cfg.max_iter);
        cfg.seed_function = get_string(it, "seed_function", "iteration", cfg.seed_function);
        if (cfg.seed_function != "chord" && cfg.seed_function != "plateau") {
            throw ConfigError("iteration.seed_function: expected chord or plateau");
        }
    }
    if (root.contains("attractor")) {
        const auto& a = section(root, "attractor", "config");
        reject_unknown(a, "attractor", {"initial", "tol", "dedup", "max_iter", "budget", "graph_density", "metric"});
        const std::string initial = get_string(a, "initial", "attractor", "nodes");
        if (initial == "nodes") {
            cfg.initial = InitialSet::Nodes;
        } else if (initial == "seed_graph") {
            cfg.initial = InitialSet::SeedGraph;
        } else if (initial == "endpoint") {
            cfg.initial = InitialSet::Endpoint;
        } else {
            throw ConfigError("attractor.initial: expected nodes, seed_graph or endpoint");
        }
        cfg.cloud_tol = get_number(a, "tol", "attractor", cfg.cloud_tol);
        cfg.dedup_tol = get_number(a, "dedup", "attractor", cfg.dedup_tol);
        cfg.cloud_max_iter = get_count(a, "max_iter", "attractor", cfg.cloud_max_iter);
        cfg.budget = get_count(a, "budget", "attractor", cfg.budget);
        cfg.graph_density = get_count(a, "graph_density", "attractor", cfg.graph_density);
        cfg.metric = parse_metric(get_string(a, "metric", "attractor", "d1"));
    }
    if (root.contains("certificates")) {
        const auto& c = section(root, "certificates", "config");
        reject_unknown(c, "certificates", {"seed", "point_pairs", "function_pairs", "node_tol"});
        cfg.seed = get_count(c, "seed", "certificates", cfg.seed);
        cfg.point_pairs = get_count(c, "point_pairs", "certificates", cfg.point_pairs);
        cfg.function_pairs = get_count(c, "function_pairs", "certificates", cfg.function_pairs);
        cfg.node_tol = get_number(c, "node_tol", "certificates", cfg.node_tol);
    }
    if (root.contains("output")) {
        const auto& o = section(root, "output", "config");
        reject_unknown(o, "output", {"dir", "format"});
        cfg.out_dir = get_string(o, "dir", "output", cfg.out_dir.string());
        cfg.format = get_string(o, "format", "output", cfg.format);
        if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "both") {
            throw ConfigError("output.format: expected csv, json or both");
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply(RunConfig& cfg, const Overrides& o) {
    if (o.out_dir) cfg.out_dir = *o.out_dir;
    if (o.grid) cfg.grid = *o.grid;
    if (o.depth) cfg.depth = *o.depth;
    if (o.tol) cfg.tol = *o.tol;
    if (o.max_iter) cfg.max_iter = *o.max_iter;
    if (o.family) cfg.family = *o.family;
    if (o.seed) cfg.seed = *o.seed;
    if (o.metric) cfg.metric = *o.metric;
}

MapSystem build_from_config(const RunConfig& cfg) {
    auto sys = build_system(cfg.xs.to_spec(), cfg.ys.to_spec(), cfg.depth, cfg.y_space);
    FamilySpec family{cfg.family, std::nullopt};
    if (cfg.family == FamilyKind::A && cfg.d) {
        family.d = cfg.d->to_spec();
    }
    return build_map_system(std::move(sys), std::move(family), MapBuildOptions{cfg.tail_scan});
}

IterationConfig iteration_config(const RunConfig& cfg) {
    IterationConfig it;
    it.initial = cfg.initial;
    it.max_iterations = cfg.cloud_max_iter;
    it.tol = cfg.cloud_tol;
    it.dedup_tol = cfg.dedup_tol;
    it.budget = cfg.budget;
    it.metric = cfg.metric;
    it.seed_samples = cfg.graph_density + 1;
    return it;
}

}  // namespace fif
