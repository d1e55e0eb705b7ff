#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fif {

/// Default tolerance for membership and invariant checks.
inline constexpr double kMembershipTol = 1e-9;
/// Default tolerance for exact algebraic identities.
inline constexpr double kIdentityTol = 1e-12;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Weight of the y-displacement in the product metric |dx| + theta*|dy|.
class ThetaMetric {
public:
    /// Throws InvalidInput unless 0 < theta < 1.
    explicit ThetaMetric(double theta);

    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

/// |p.x - q.x| + theta * |p.y - q.y|. Throws InvalidInput on non-finite input.
double d_theta(const Point2& p, const Point2& q, const ThetaMetric& m);

/// |p.x - q.x| + |p.y - q.y|.
double d_one(const Point2& p, const Point2& q);

/// A product metric on [a,b] x Y: either d_1 or d_theta.
class ProductMetric {
public:
    static ProductMetric d1() { return ProductMetric(1.0); }
    static ProductMetric weighted(const ThetaMetric& m) { return ProductMetric(m.theta()); }

    double operator()(const Point2& p, const Point2& q) const;
    double y_weight() const noexcept { return weight_; }
    bool is_d1() const noexcept { return weight_ == 1.0; }
    std::string name() const { return is_d1() ? "d1" : "dtheta"; }

private:
    explicit ProductMetric(double w) : weight_(w) {}
    double weight_;
};

/// A finite point cloud standing in for a compact subset of [a,b] x Y.
///
/// Construction removes near-duplicates greedily in input order: a point is
/// kept only if no previously kept point lies within `dedup_tol` in both
/// coordinates. With `dedup_tol == 0` only exact duplicates are dropped.
/// The first input point is always kept.
class PointSet {
public:
    PointSet(std::vector<Point2> points, double dedup_tol = 0.0);

    std::span<const Point2> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double dedup_tol() const noexcept { return dedup_tol_; }

    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

private:
    std::vector<Point2> points_;
    double dedup_tol_;
};

/// Directed distance sup_{p in from} inf_{q in to} metric(p, q).
double directed_hausdorff(const PointSet& from, const PointSet& to, const ProductMetric& metric);

/// Hausdorff distance. Exact; candidates are scanned in x-order and the scan
/// stops once |dx| alone exceeds the best distance found, which is valid
/// because both product metrics dominate |dx|.
double hausdorff(const PointSet& a, const PointSet& b, const ProductMetric& metric);

/// Reference O(|A||B|) Hausdorff distance by full pairwise scan.
double hausdorff_exhaustive(const PointSet& a, const PointSet& b, const ProductMetric& metric);

/// A comparison function phi: [0, inf) -> [0, inf) controlling a phi-contraction.
class ComparisonFunction {
public:
    enum class Kind { Banach, RakotchHyperbolic, Custom };

    /// phi(t) = c t with c in [0, 1).
    static ComparisonFunction banach(double c);
    /// phi(t) = t / (1 + t).
    static ComparisonFunction rakotch_hyperbolic();
    static ComparisonFunction custom(std::function<double(double)> phi, std::string description);

    /// Throws InvalidInput for t < 0 or non-finite t.
    double operator()(double t) const;

    Kind kind() const noexcept { return kind_; }
    /// Banach constant; 0 for the other kinds.
    double banach_constant() const noexcept { return c_; }
    const std::string& description() const noexcept { return description_; }

private:
    ComparisonFunction(Kind kind, double c, std::function<double(double)> f, std::string description);

    Kind kind_;
    double c_;
    std::function<double(double)> custom_;
    std::string description_;
};

double phi_eval(const ComparisonFunction& phi, double t);

/// Iterate phi k times starting from t.
double phi_iterate(const ComparisonFunction& phi, double t, int k);

struct RakotchCertificate {
    std::vector<double> grid;
    std::vector<double> alpha;          ///< phi(t)/t at each grid point
    bool alpha_below_one = false;
    bool alpha_non_increasing = false;
    bool phi_non_decreasing = false;
    double worst_margin = 0.0;          ///< min over the grid of 1 - alpha(t)
    std::size_t first_failure = 0;      ///< index of first grid point with alpha >= 1
    bool passed() const noexcept { return alpha_below_one && alpha_non_increasing && phi_non_decreasing; }
};

/// Sampled check of the Rakotch conditions on a strictly increasing positive grid.
RakotchCertificate certify_rakotch(const ComparisonFunction& phi, std::span<const double> grid);

/// Geometric grid of `count` points between lo and hi (both > 0).
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace fif
