#include "fif/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "fif/errors.hpp"

namespace fif {

namespace {

void require_finite(const Point2& p, const char* what) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw InvalidInput(std::string(what) + ": non-finite coordinate");
    }
}

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
    // splitmix-style mixing keeps neighbouring cells in different buckets
    std::uint64_t h = static_cast<std::uint64_t>(cx) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(cy) + 0xBF58476D1CE4E5B9ULL + (h << 6) + (h >> 2);
    return h;
}

struct ExactPointHash {
    std::size_t operator()(const Point2& p) const noexcept {
        auto hx = std::bit_cast<std::uint64_t>(p.x == 0.0 ? 0.0 : p.x);
        auto hy = std::bit_cast<std::uint64_t>(p.y == 0.0 ? 0.0 : p.y);
        return static_cast<std::size_t>(cell_key(static_cast<std::int64_t>(hx), static_cast<std::int64_t>(hy)));
    }
};

}  // namespace

ThetaMetric::ThetaMetric(double theta) : theta_(theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw InvalidInput("theta must lie in (0,1), got " + std::to_string(theta));
    }
}

double d_theta(const Point2& p, const Point2& q, const ThetaMetric& m) {
    require_finite(p, "d_theta");
    require_finite(q, "d_theta");
    return std::abs(p.x - q.x) + m.theta() * std::abs(p.y - q.y);
}

double d_one(const Point2& p, const Point2& q) {
    require_finite(p, "d_one");
    require_finite(q, "d_one");
    return std::abs(p.x - q.x) + std::abs(p.y - q.y);
}

double ProductMetric::operator()(const Point2& p, const Point2& q) const {
    return std::abs(p.x - q.x) + weight_ * std::abs(p.y - q.y);
}

PointSet::PointSet(std::vector<Point2> points, double dedup_tol) : dedup_tol_(dedup_tol) {
    if (points.empty()) {
        throw InvalidInput("point set must be non-empty");
    }
    if (!(dedup_tol >= 0.0) || !std::isfinite(dedup_tol)) {
        throw InvalidInput("dedup tolerance must be finite and >= 0");
    }
    for (const auto& p : points) {
        require_finite(p, "PointSet");
    }

    points_.reserve(points.size());
    if (dedup_tol == 0.0) {
        std::unordered_set<Point2, ExactPointHash> seen;
        seen.reserve(points.size());
        for (const auto& p : points) {
            if (seen.insert(p).second) {
                points_.push_back(p);
            }
        }
        return;
    }

    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
    cells.reserve(points.size());
    auto cell_of = [&](double v) { return static_cast<std::int64_t>(std::floor(v / dedup_tol)); };

    for (const auto& p : points) {
        const std::int64_t cx = cell_of(p.x);
        const std::int64_t cy = cell_of(p.y);
        bool duplicate = false;
        for (std::int64_t dx = -1; dx <= 1 && !duplicate; ++dx) {
            for (std::int64_t dy = -1; dy <= 1 && !duplicate; ++dy) {
                auto it = cells.find(cell_key(cx + dx, cy + dy));
                if (it == cells.end()) {
                    continue;
                }
                for (auto idx : it->second) {
                    const auto& q = points_[idx];
                    if (std::abs(q.x - p.x) <= dedup_tol && std::abs(q.y - p.y) <= dedup_tol) {
                        duplicate = true;
                        break;
                    }
                }
            }
        }
        if (!duplicate) {
            cells[cell_key(cx, cy)].push_back(static_cast<std::uint32_t>(points_.size()));
            points_.push_back(p);
        }
    }
}

double directed_hausdorff(const PointSet& from, const PointSet& to, const ProductMetric& metric) {
    std::vector<Point2> sorted(to.begin(), to.end());
    std::sort(sorted.begin(), sorted.end(), [](const Point2& l, const Point2& r) { return l.x < r.x; });

    double worst = 0.0;
    for (const auto& p : from) {
        auto pivot = std::lower_bound(sorted.begin(), sorted.end(), p.x,
                                      [](const Point2& q, double x) { return q.x < x; });
        double best = std::numeric_limits<double>::infinity();
        // Once best <= worst this point cannot raise the maximum.
        for (auto it = pivot; it != sorted.end() && best > worst; ++it) {
            if (it->x - p.x >= best) {
                break;
            }
            best = std::min(best, metric(p, *it));
        }
        for (auto it = pivot; it != sorted.begin() && best > worst;) {
            --it;
            if (p.x - it->x >= best) {
                break;
            }
            best = std::min(best, metric(p, *it));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

double hausdorff(const PointSet& a, const PointSet& b, const ProductMetric& metric) {
    return std::max(directed_hausdorff(a, b, metric), directed_hausdorff(b, a, metric));
}

double hausdorff_exhaustive(const PointSet& a, const PointSet& b, const ProductMetric& metric) {
    auto directed = [&](const PointSet& from, const PointSet& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) {
                best = std::min(best, metric(p, q));
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

ComparisonFunction::ComparisonFunction(Kind kind, double c, std::function<double(double)> f,
                                       std::string description)
    : kind_(kind), c_(c), custom_(std::move(f)), description_(std::move(description)) {}

ComparisonFunction ComparisonFunction::banach(double c) {
    if (!(c >= 0.0 && c < 1.0)) {
        throw InvalidInput("Banach constant must lie in [0,1), got " + std::to_string(c));
    }
    return ComparisonFunction(Kind::Banach, c, {}, "banach(c=" + std::to_string(c) + ")");
}

ComparisonFunction ComparisonFunction::rakotch_hyperbolic() {
    return ComparisonFunction(Kind::RakotchHyperbolic, 0.0, {}, "t/(1+t)");
}

ComparisonFunction ComparisonFunction::custom(std::function<double(double)> phi, std::string description) {
    if (!phi) {
        throw InvalidInput("custom comparison function needs an evaluator");
    }
    return ComparisonFunction(Kind::Custom, 0.0, std::move(phi), std::move(description));
}

double ComparisonFunction::operator()(double t) const {
    if (!std::isfinite(t) || t < 0.0) {
        throw InvalidInput("comparison function argument must be finite and >= 0");
    }
    switch (kind_) {
    case Kind::Banach:
        return c_ * t;
    case Kind::RakotchHyperbolic:
        return t / (1.0 + t);
    case Kind::Custom:
        return custom_(t);
    }
    return 0.0;
}

double phi_eval(const ComparisonFunction& phi, double t) { return phi(t); }

double phi_iterate(const ComparisonFunction& phi, double t, int k) {
    for (int i = 0; i < k; ++i) {
        t = phi(t);
    }
    return t;
}

RakotchCertificate certify_rakotch(const ComparisonFunction& phi, std::span<const double> grid) {
    if (grid.size() < 2) {
        throw InvalidInput("certificate grid needs at least two points");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
            throw InvalidInput("certificate grid must be positive and finite");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidInput("certificate grid must be strictly increasing");
        }
    }

    RakotchCertificate cert;
    cert.grid.assign(grid.begin(), grid.end());
    cert.alpha.reserve(grid.size());
    cert.alpha_below_one = true;
    cert.alpha_non_increasing = true;
    cert.phi_non_decreasing = true;
    cert.worst_margin = std::numeric_limits<double>::infinity();
    cert.first_failure = grid.size();

    double prev_phi = phi(0.0);
    if (std::abs(prev_phi) > kIdentityTol) {
        cert.phi_non_decreasing = false;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double value = phi(grid[i]);
        const double alpha = value / grid[i];
        cert.alpha.push_back(alpha);
        cert.worst_margin = std::min(cert.worst_margin, 1.0 - alpha);
        if (!(alpha < 1.0)) {
            cert.alpha_below_one = false;
            cert.first_failure = std::min(cert.first_failure, i);
        }
        if (i > 0 && alpha > cert.alpha[i - 1] + kIdentityTol) {
            cert.alpha_non_increasing = false;
        }
        if (value < prev_phi - kIdentityTol) {
            cert.phi_non_decreasing = false;
        }
        prev_phi = value;
    }
    return cert;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw InvalidInput("log_grid needs 0 < lo < hi and count >= 2");
    }
    std::vector<double> out(count);
    const double step = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo * std::exp(step * static_cast<double>(i));
    }
    out.back() = hi;
    return out;
}

}  // namespace fif
