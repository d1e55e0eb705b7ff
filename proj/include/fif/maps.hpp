#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fif/data_system.hpp"
#include "fif/metric.hpp"

namespace fif {

/// Affine homeomorphism l_n of [a,b] onto [x_{n-1}, x_n].
struct SubintervalMap {
    std::size_t n = 1;
    double slope = 0.0;      ///< (x_n - x_{n-1}) / (b - a), also the Lipschitz constant L_n
    double intercept = 0.0;  ///< (b x_{n-1} - a x_n) / (b - a)
    double x_lo = 0.0;       ///< x_{n-1}
    double x_hi = 0.0;       ///< x_n
    double a = 0.0;
    double b = 1.0;

    double lipschitz() const noexcept { return slope; }
};

double l_eval(const SubintervalMap& map, double x);
double l_inverse(const SubintervalMap& map, double x);

enum class FamilyKind { A, B };

/// Selection of the vertical maps W_n.
struct FamilySpec {
    FamilyKind kind = FamilyKind::A;
    /// Vertical scaling d_n for family A; defaults to 2^-n.
    std::optional<SequenceSpec> d;

    static FamilySpec family_a(std::optional<SequenceSpec> d = std::nullopt) { return {FamilyKind::A, std::move(d)}; }
    static FamilySpec family_b() { return {FamilyKind::B, std::nullopt}; }
};

std::string to_string(FamilyKind kind);

/// W_n(x,y) = c_n x + d_n y + g_n (family A) or c_n x + y/(1+ny) + g_n (family B).
struct VerticalCoefficients {
    double c = 0.0;
    double d = 0.0;  ///< family A only
    double g = 0.0;
};

class VerticalMapFamily {
public:
    /// Validates the family against the data: d_n in [0,1) with limit 0 (A),
    /// Y within [0, inf) (B). Indices up to `scan_limit` are checked.
    VerticalMapFamily(std::shared_ptr<const CountableDataSystem> sys, FamilySpec spec, std::size_t scan_limit);

    FamilyKind kind() const noexcept { return spec_.kind; }
    const FamilySpec& spec() const noexcept { return spec_; }

    /// Coefficients for any n >= 1 (not limited to the truncation depth).
    VerticalCoefficients coefficients(std::size_t n) const;

    /// W_n(x, y) without domain or range checks.
    double value(std::size_t n, double x, double y) const;

    /// Exact [min, max] of W_n over [a,b] x Y.
    Interval image(std::size_t n) const;
    double image_diam(std::size_t n) const { return image(n).diam(); }
    /// The closed-form diameter estimate (b-a)|c_n| + diam(Y) d_n (A) or
    /// (b-a)|c_n| + diam(Y)/(1 + n inf Y)^2 (B).
    double diam_estimate(std::size_t n) const;

    /// Sup of |c_n| over 1..N+1.
    double lipschitz_x() const noexcept { return L_; }
    const ComparisonFunction& phi() const noexcept { return phi_; }

    const CountableDataSystem& system() const noexcept { return *sys_; }

private:
    std::shared_ptr<const CountableDataSystem> sys_;
    FamilySpec spec_;
    double L_ = 0.0;
    ComparisonFunction phi_;
};

/// W_n(x, y) with checks: DomainError for (x,y) outside [a,b] x Y, IndexError
/// for n outside 1..N+1, RangeViolation if the value leaves Y.
double w_eval(const VerticalMapFamily& fam, std::size_t n, double x, double y);

struct MapBuildOptions {
    /// Extra indices beyond N+1 scanned for d_n in [0,1) and W_n(X) within Y.
    std::size_t tail_scan = 10000;
};

/// The system (f_n) = (l_n, W_n) together with sup L_n, L and theta.
class MapSystem {
public:
    MapSystem(CountableDataSystem sys, FamilySpec family, MapBuildOptions options = {});

    const CountableDataSystem& system() const noexcept { return *sys_; }
    std::shared_ptr<const CountableDataSystem> system_ptr() const noexcept { return sys_; }
    const VerticalMapFamily& vertical() const noexcept { return W_; }
    FamilyKind family() const noexcept { return W_.kind(); }

    /// l_n for 1 <= n <= N+1.
    const SubintervalMap& subinterval(std::size_t n) const;
    std::size_t depth() const noexcept { return sys_->depth(); }

    double sup_Ln() const noexcept { return sup_Ln_; }
    double L() const noexcept { return W_.lipschitz_x(); }
    double theta() const noexcept { return theta_; }
    ThetaMetric theta_metric() const { return ThetaMetric(theta_); }
    const ComparisonFunction& phi() const noexcept { return W_.phi(); }
    const MapBuildOptions& options() const noexcept { return options_; }

    /// Largest index that may be evaluated (N+1+tail_scan, capped by table length).
    std::size_t scan_limit() const noexcept { return scan_limit_; }

private:
    std::shared_ptr<const CountableDataSystem> sys_;
    VerticalMapFamily W_;
    std::vector<SubintervalMap> l_;
    MapBuildOptions options_;
    double sup_Ln_ = 0.0;
    double theta_ = 0.0;
    std::size_t scan_limit_ = 0;
};

/// Throws ValidationError / RangeViolation when the family is misconfigured.
MapSystem build_map_system(CountableDataSystem sys, FamilySpec family, MapBuildOptions options = {});

/// f_n(p) = (l_n(p.x), W_n(p.x, p.y)).
Point2 f_eval(const MapSystem& ms, std::size_t n, const Point2& p);

/// (1 - supLn) / (2 (L + 1)); ValidationError if supLn >= 1, InvalidInput for L < 0.
double compute_theta(double sup_Ln, double L);

enum class CertificateStatus { Pass, Fail, Inconclusive };
std::string to_string(CertificateStatus status);

struct MapCertificate {
    CertificateStatus status = CertificateStatus::Inconclusive;
    double theta = 0.0;
    double sup_Ln = 0.0;
    double L = 0.0;
    double alpha_floor = 0.0;   ///< sup L_n + theta (L + 1)
    std::size_t pairs = 0;
    std::size_t skipped = 0;    ///< pairs with p == q
    std::size_t checks = 0;     ///< pair x map evaluations
    std::size_t violations = 0;
    double worst_ratio = 0.0;   ///< max d(f p, f q) / d(p, q)
    double worst_excess = 0.0;  ///< max d(f p, f q) - psi(d(p, q))
    std::string note;
};

using PointPair = std::pair<Point2, Point2>;

/// Uniform random pairs in [a,b] x Y.
std::vector<PointPair> sample_pairs(const MapSystem& ms, std::size_t count, std::uint64_t seed);

/// Checks d_theta(f_n p, f_n q) <= psi(d_theta(p, q)) + slack for every pair
/// and every 1 <= n <= N, with psi(t) = t max{sup L_n + theta (L + 1), phi(t)/t}.
MapCertificate rakotch_certificate(const MapSystem& ms, const std::vector<PointPair>& pairs,
                                   double slack = 1e-10);

struct NonBanachWitness {
    std::size_t n = 1;
    double x = 0.0;
    double y = 0.0;
    double y2 = 0.0;
    double ratio = 0.0;  ///< |W_n(x,y) - W_n(x,y2)| / |y - y2|
};

/// Largest sampled y-Lipschitz ratio of W_n with y, y2 drawn near inf Y.
NonBanachWitness non_banach_witness(const MapSystem& ms, std::size_t n, std::size_t samples, std::uint64_t seed);

}  // namespace fif
