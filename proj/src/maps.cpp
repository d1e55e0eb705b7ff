#include "fif/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fif/errors.hpp"

namespace fif {

namespace {

double h_b(std::size_t n, double y) { return y / (1.0 + static_cast<double>(n) * y); }

ComparisonFunction family_phi(const FamilySpec& spec, std::size_t scan_limit) {
    if (spec.kind == FamilyKind::B) {
        return ComparisonFunction::rakotch_hyperbolic();
    }
    const auto& d = *spec.d;
    double sup_d = 0.0;
    for (std::size_t n = 1; n <= scan_limit; ++n) {
        sup_d = std::max(sup_d, d(n));
    }
    return ComparisonFunction::banach(sup_d);
}

FamilySpec normalized(FamilySpec spec) {
    if (spec.kind == FamilyKind::A && !spec.d) {
        spec.d = SequenceSpec::geometric(2.0, 1.0, 0.0);
    }
    return spec;
}

void validate_family(const CountableDataSystem& sys, const FamilySpec& spec, std::size_t scan_limit) {
    if (spec.kind == FamilyKind::B) {
        if (sys.y_space().lo < 0.0) {
            std::ostringstream os;
            os.precision(17);
            os << "family B requires Y within [0, inf) so that y/(1+ny) is a Rakotch contraction; got Y = ["
               << sys.y_space().lo << ", " << sys.y_space().hi << "]";
            throw ValidationError(os.str());
        }
        return;
    }
    const auto& d = *spec.d;
    for (std::size_t n = 1; n <= scan_limit; ++n) {
        const double dn = d(n);
        if (!std::isfinite(dn) || dn < 0.0 || dn >= 1.0) {
            std::ostringstream os;
            os.precision(17);
            os << "family A requires d_n in [0,1); d_" << n << " = " << dn;
            throw ValidationError(os.str(), static_cast<std::ptrdiff_t>(n));
        }
    }
    if (d.limit() != 0.0) {
        throw ValidationError("family A requires d_n -> 0; declared limit is " + std::to_string(d.limit()));
    }
}

std::size_t compute_scan_limit(const CountableDataSystem& sys, const MapBuildOptions& options,
                               const FamilySpec& spec) {
    std::size_t limit = sys.depth() + 1 + options.tail_scan;
    if (auto last = sys.last_index()) {
        limit = std::min(limit, *last);
    }
    if (spec.kind == FamilyKind::A && spec.d) {
        if (auto len = spec.d->length()) {
            if (*len < sys.depth() + 2) {
                throw ValidationError("d table needs at least " + std::to_string(sys.depth() + 2) + " terms");
            }
            limit = std::min(limit, *len - 1);
        }
    }
    return limit;
}

}  // namespace

std::string to_string(FamilyKind kind) { return kind == FamilyKind::A ? "A" : "B"; }

std::string to_string(CertificateStatus status) {
    switch (status) {
    case CertificateStatus::Pass:
        return "pass";
    case CertificateStatus::Fail:
        return "fail";
    case CertificateStatus::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

double l_eval(const SubintervalMap& map, double x) {
    if (!std::isfinite(x) || x < map.a || x > map.b) {
        throw DomainError("l_" + std::to_string(map.n) + ": argument outside [a, b]");
    }
    if (x == map.b) {
        return map.x_hi;
    }
    return map.x_lo + map.slope * (x - map.a);
}

double l_inverse(const SubintervalMap& map, double x) {
    const double tol = kIdentityTol * std::max(1.0, std::abs(map.x_hi));
    if (!std::isfinite(x) || x < map.x_lo - tol || x > map.x_hi + tol) {
        std::ostringstream os;
        os.precision(17);
        os << "l_" << map.n << "^-1: " << x << " outside [" << map.x_lo << ", " << map.x_hi << "]";
        throw DomainError(os.str());
    }
    if (x <= map.x_lo) {
        return map.a;
    }
    if (x >= map.x_hi) {
        return map.b;
    }
    const double u = map.a + (x - map.x_lo) / (map.x_hi - map.x_lo) * (map.b - map.a);
    return std::clamp(u, map.a, map.b);
}

VerticalMapFamily::VerticalMapFamily(std::shared_ptr<const CountableDataSystem> sys, FamilySpec spec,
                                     std::size_t scan_limit)
    : sys_(std::move(sys)),
      spec_(normalized(std::move(spec))),
      phi_(ComparisonFunction::rakotch_hyperbolic()) {
    validate_family(*sys_, spec_, scan_limit);
    phi_ = family_phi(spec_, scan_limit);
    for (std::size_t n = 1; n <= sys_->depth() + 1; ++n) {
        L_ = std::max(L_, std::abs(coefficients(n).c));
    }
}

VerticalCoefficients VerticalMapFamily::coefficients(std::size_t n) const {
    const auto& sys = *sys_;
    const double a = sys.a();
    const double b = sys.b();
    const double m = sys.m();
    const double M = sys.M();
    const double y_prev = sys.y_at(n - 1);
    const double y_n = sys.y_at(n);
    const double span = b - a;

    VerticalCoefficients k;
    if (spec_.kind == FamilyKind::A) {
        k.d = (*spec_.d)(n);
        k.c = (y_n - y_prev) / span - k.d * (M - m) / span;
        k.g = (b * y_prev - a * y_n) / span - k.d * (b * m - a * M) / span;
    } else {
        const double hM = h_b(n, M);
        const double hm = h_b(n, m);
        k.c = (y_n - y_prev) / span - (hM - hm) / span;
        k.g = y_prev - a * (y_n - y_prev) / span + a / span * hM - b / span * hm;
    }
    return k;
}

double VerticalMapFamily::value(std::size_t n, double x, double y) const {
    const auto k = coefficients(n);
    if (spec_.kind == FamilyKind::A) {
        return k.c * x + k.d * y + k.g;
    }
    return k.c * x + h_b(n, y) + k.g;
}

Interval VerticalMapFamily::image(std::size_t n) const {
    const auto k = coefficients(n);
    const auto& sys = *sys_;
    const double cx_lo = std::min(k.c * sys.a(), k.c * sys.b());
    const double cx_hi = std::max(k.c * sys.a(), k.c * sys.b());
    const Interval& Y = sys.y_space();
    // both y-parts are non-decreasing in y (d_n >= 0; y/(1+ny) on Y >= 0)
    double y_lo = 0.0;
    double y_hi = 0.0;
    if (spec_.kind == FamilyKind::A) {
        y_lo = k.d * Y.lo;
        y_hi = k.d * Y.hi;
    } else {
        y_lo = h_b(n, Y.lo);
        y_hi = h_b(n, Y.hi);
    }
    return {cx_lo + y_lo + k.g, cx_hi + y_hi + k.g};
}

double VerticalMapFamily::diam_estimate(std::size_t n) const {
    const auto k = coefficients(n);
    const auto& sys = *sys_;
    const double x_part = (sys.b() - sys.a()) * std::abs(k.c);
    const double dY = sys.y_space().diam();
    if (spec_.kind == FamilyKind::A) {
        return x_part + dY * k.d;
    }
    const double s = 1.0 + static_cast<double>(n) * sys.y_space().lo;
    return x_part + dY / (s * s);
}

double w_eval(const VerticalMapFamily& fam, std::size_t n, double x, double y) {
    const auto& sys = fam.system();
    if (n < 1 || n > sys.depth() + 1) {
        throw IndexError("W_n index " + std::to_string(n) + " outside 1.." + std::to_string(sys.depth() + 1));
    }
    if (!std::isfinite(x) || !std::isfinite(y) || x < sys.a() - kMembershipTol || x > sys.b() + kMembershipTol ||
        !sys.y_space().contains(y)) {
        std::ostringstream os;
        os.precision(17);
        os << "W_" << n << ": (" << x << ", " << y << ") outside [a,b] x Y";
        throw DomainError(os.str());
    }
    const double v = fam.value(n, x, y);
    if (!sys.y_space().contains(v)) {
        std::ostringstream os;
        os.precision(17);
        os << "W_" << n << "(" << x << ", " << y << ") = " << v << " leaves Y = [" << sys.y_space().lo << ", "
           << sys.y_space().hi << "]; enlarge Y";
        throw RangeViolation(os.str(), static_cast<std::ptrdiff_t>(n));
    }
    return v;
}

MapSystem::MapSystem(CountableDataSystem sys, FamilySpec family, MapBuildOptions options)
    : sys_(std::make_shared<const CountableDataSystem>(std::move(sys))),
      W_(sys_, family, compute_scan_limit(*sys_, options, normalized(family))),
      options_(options),
      scan_limit_(compute_scan_limit(*sys_, options, W_.spec())) {
    const auto& s = *sys_;
    const double a = s.a();
    const double b = s.b();
    l_.reserve(s.depth() + 1);
    for (std::size_t n = 1; n <= s.depth() + 1; ++n) {
        SubintervalMap map;
        map.n = n;
        map.x_lo = s.x_at(n - 1);
        map.x_hi = s.x_at(n);
        map.a = a;
        map.b = b;
        map.slope = (map.x_hi - map.x_lo) / (b - a);
        map.intercept = (b * map.x_lo - a * map.x_hi) / (b - a);
        sup_Ln_ = std::max(sup_Ln_, map.slope);
        l_.push_back(map);
    }
    theta_ = compute_theta(sup_Ln_, W_.lipschitz_x());

    // W_n must map [a,b] x Y into Y for every index we can reach.
    const Interval& Y = s.y_space();
    double need_lo = Y.lo;
    double need_hi = Y.hi;
    std::size_t first_bad = 0;
    for (std::size_t n = 1; n <= scan_limit_; ++n) {
        const Interval img = W_.image(n);
        if (!Y.contains(img.lo) || !Y.contains(img.hi)) {
            if (first_bad == 0) {
                first_bad = n;
            }
            need_lo = std::min(need_lo, img.lo);
            need_hi = std::max(need_hi, img.hi);
        }
    }
    if (first_bad != 0) {
        const Interval img = W_.image(first_bad);
        std::ostringstream os;
        os.precision(17);
        os << "family " << to_string(W_.kind()) << ": W_" << first_bad << " maps [a,b] x Y onto [" << img.lo << ", "
           << img.hi << "], outside Y = [" << Y.lo << ", " << Y.hi << "]; enlarge Y to at least [" << need_lo << ", "
           << need_hi << "]";
        throw RangeViolation(os.str(), static_cast<std::ptrdiff_t>(first_bad));
    }
}

const SubintervalMap& MapSystem::subinterval(std::size_t n) const {
    if (n < 1 || n > l_.size()) {
        throw IndexError("l_n index " + std::to_string(n) + " outside 1.." + std::to_string(l_.size()));
    }
    return l_[n - 1];
}

MapSystem build_map_system(CountableDataSystem sys, FamilySpec family, MapBuildOptions options) {
    return MapSystem(std::move(sys), std::move(family), options);
}

Point2 f_eval(const MapSystem& ms, std::size_t n, const Point2& p) {
    return {l_eval(ms.subinterval(n), p.x), w_eval(ms.vertical(), n, p.x, p.y)};
}

double compute_theta(double sup_Ln, double L) {
    if (!std::isfinite(sup_Ln) || !std::isfinite(L)) {
        throw InvalidInput("compute_theta: non-finite input");
    }
    if (sup_Ln >= 1.0) {
        throw ValidationError("sup L_n = " + std::to_string(sup_Ln) + " must be < 1");
    }
    if (sup_Ln < 0.0 || L < 0.0) {
        throw InvalidInput("compute_theta: sup L_n and L must be >= 0");
    }
    const double theta = (1.0 - sup_Ln) / (2.0 * (L + 1.0));
    if (!(theta > 0.0 && theta < 1.0)) {
        throw ValidationError("theta = " + std::to_string(theta) + " outside (0,1)");
    }
    return theta;
}

std::vector<PointPair> sample_pairs(const MapSystem& ms, std::size_t count, std::uint64_t seed) {
    const auto& s = ms.system();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(s.a(), s.b());
    std::uniform_real_distribution<double> uy(s.y_space().lo, s.y_space().hi);
    std::vector<PointPair> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Point2 p{ux(rng), uy(rng)};
        Point2 q{ux(rng), uy(rng)};
        pairs.emplace_back(p, q);
    }
    return pairs;
}

MapCertificate rakotch_certificate(const MapSystem& ms, const std::vector<PointPair>& pairs, double slack) {
    MapCertificate cert;
    cert.theta = ms.theta();
    cert.sup_Ln = ms.sup_Ln();
    cert.L = ms.L();
    cert.alpha_floor = cert.sup_Ln + cert.theta * (cert.L + 1.0);
    cert.pairs = pairs.size();

    const ThetaMetric metric = ms.theta_metric();
    const auto& phi = ms.phi();

    std::vector<double> distances;
    distances.reserve(pairs.size());
    for (const auto& [p, q] : pairs) {
        const double t = d_theta(p, q, metric);
        if (t > 0.0) {
            distances.push_back(t);
        }
    }
    std::sort(distances.begin(), distances.end());
    distances.erase(std::unique(distances.begin(), distances.end()), distances.end());
    if (distances.size() >= 2) {
        const auto premise = certify_rakotch(phi, distances);
        if (!premise.passed()) {
            cert.status = CertificateStatus::Inconclusive;
            cert.note = "comparison function fails the sampled Rakotch conditions on the pair distances";
            return cert;
        }
    }

    for (const auto& [p, q] : pairs) {
        const double t = d_theta(p, q, metric);
        if (t == 0.0) {
            ++cert.skipped;
            continue;
        }
        const double psi = t * std::max(cert.alpha_floor, phi(t) / t);
        for (std::size_t n = 1; n <= ms.depth(); ++n) {
            const double lhs = d_theta(f_eval(ms, n, p), f_eval(ms, n, q), metric);
            ++cert.checks;
            cert.worst_ratio = std::max(cert.worst_ratio, lhs / t);
            cert.worst_excess = std::max(cert.worst_excess, lhs - psi);
            if (lhs > psi + slack) {
                ++cert.violations;
            }
        }
    }
    if (cert.checks == 0) {
        cert.status = CertificateStatus::Inconclusive;
        cert.note = "no non-degenerate pairs";
    } else {
        cert.status = cert.violations == 0 ? CertificateStatus::Pass : CertificateStatus::Fail;
    }
    if (cert.skipped > 0) {
        cert.note = std::to_string(cert.skipped) + " zero-distance pair(s) skipped";
    }
    return cert;
}

NonBanachWitness non_banach_witness(const MapSystem& ms, std::size_t n, std::size_t samples, std::uint64_t seed) {
    const auto& s = ms.system();
    const Interval& Y = s.y_space();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(s.a(), s.b());
    std::uniform_real_distribution<double> uy(Y.lo, Y.lo + 1e-4 * std::max(Y.diam(), 1e-300));

    NonBanachWitness best;
    best.n = n;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = ux(rng);
        const double y = uy(rng);
        const double y2 = uy(rng);
        if (y == y2) {
            continue;
        }
        const double ratio =
            std::abs(w_eval(ms.vertical(), n, x, y) - w_eval(ms.vertical(), n, x, y2)) / std::abs(y - y2);
        if (ratio > best.ratio) {
            best = {n, x, y, y2, ratio};
        }
    }
    return best;
}

}  // namespace fif
