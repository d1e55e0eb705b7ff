#include "fif/data_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fif/errors.hpp"

namespace fif {

namespace {

void require_finite_param(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidInput(std::string("sequence parameter '") + name + "' must be finite");
    }
}

}  // namespace

SequenceSpec SequenceSpec::geometric(double base, double scale, double offset) {
    require_finite_param(base, "base");
    require_finite_param(scale, "scale");
    require_finite_param(offset, "offset");
    if (!(std::abs(base) > 1.0)) {
        throw InvalidInput("geometric sequence needs |base| > 1 (terms are offset + scale*base^-n)");
    }
    SequenceSpec s;
    s.kind_ = Kind::Geometric;
    s.base_ = base;
    s.scale_ = scale;
    s.offset_ = offset;
    s.limit_ = offset;
    return s;
}

SequenceSpec SequenceSpec::harmonic(double scale, double offset, double shift) {
    require_finite_param(scale, "scale");
    require_finite_param(offset, "offset");
    require_finite_param(shift, "shift");
    if (!(shift > 0.0)) {
        throw InvalidInput("harmonic sequence needs shift > 0");
    }
    SequenceSpec s;
    s.kind_ = Kind::Harmonic;
    s.scale_ = scale;
    s.offset_ = offset;
    s.shift_ = shift;
    s.limit_ = offset;
    return s;
}

SequenceSpec SequenceSpec::constant(double value) {
    require_finite_param(value, "value");
    SequenceSpec s;
    s.kind_ = Kind::Constant;
    s.offset_ = value;
    s.limit_ = value;
    return s;
}

SequenceSpec SequenceSpec::table(std::vector<double> values, double limit) {
    require_finite_param(limit, "limit");
    if (values.empty()) {
        throw InvalidInput("table sequence needs at least one value");
    }
    for (double v : values) {
        require_finite_param(v, "values");
    }
    SequenceSpec s;
    s.kind_ = Kind::Table;
    s.values_ = std::move(values);
    s.limit_ = limit;
    return s;
}

SequenceSpec SequenceSpec::function(std::function<double(std::size_t)> generator, double limit,
                                    std::string description) {
    require_finite_param(limit, "limit");
    if (!generator) {
        throw InvalidInput("function sequence needs a generator");
    }
    SequenceSpec s;
    s.kind_ = Kind::Function;
    s.generator_ = std::move(generator);
    s.description_ = std::move(description);
    s.limit_ = limit;
    return s;
}

double SequenceSpec::operator()(std::size_t n) const {
    switch (kind_) {
    case Kind::Geometric:
        return offset_ + scale_ / std::pow(base_, static_cast<double>(n));
    case Kind::Harmonic:
        return offset_ + scale_ / (static_cast<double>(n) + shift_);
    case Kind::Constant:
        return offset_;
    case Kind::Table:
        if (n >= values_.size()) {
            throw IndexError("table sequence has no term at index " + std::to_string(n));
        }
        return values_[n];
    case Kind::Function:
        return generator_(n);
    }
    return 0.0;
}

std::optional<std::size_t> SequenceSpec::length() const {
    if (kind_ == Kind::Table) {
        return values_.size();
    }
    return std::nullopt;
}

std::string SequenceSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case Kind::Geometric:
        os << "geometric(" << offset_ << " + " << scale_ << " * " << base_ << "^-n)";
        break;
    case Kind::Harmonic:
        os << "harmonic(" << offset_ << " + " << scale_ << " / (n + " << shift_ << "))";
        break;
    case Kind::Constant:
        os << "constant(" << offset_ << ")";
        break;
    case Kind::Table:
        os << "table(" << values_.size() << " terms, limit " << limit_ << ")";
        break;
    case Kind::Function:
        os << description_ << " (limit " << limit_ << ")";
        break;
    }
    return os.str();
}

CountableDataSystem::CountableDataSystem(SequenceSpec xs, SequenceSpec ys, std::size_t depth, Interval y_space)
    : xs_(std::move(xs)), ys_(std::move(ys)), depth_(depth), y_space_(y_space) {
    node_x_.reserve(depth + 1);
    node_y_.reserve(depth + 1);
    for (std::size_t n = 0; n <= depth; ++n) {
        node_x_.push_back(xs_(n));
        node_y_.push_back(ys_(n));
    }
}

Point2 CountableDataSystem::node(std::size_t n) const {
    if (n > depth_) {
        throw IndexError("node index " + std::to_string(n) + " exceeds depth " + std::to_string(depth_));
    }
    return {node_x_[n], node_y_[n]};
}

double CountableDataSystem::x_at(std::size_t n) const { return n <= depth_ ? node_x_[n] : xs_(n); }

double CountableDataSystem::y_at(std::size_t n) const { return n <= depth_ ? node_y_[n] : ys_(n); }

std::optional<std::size_t> CountableDataSystem::last_index() const {
    auto lx = xs_.length();
    auto ly = ys_.length();
    if (!lx && !ly) {
        return std::nullopt;
    }
    std::size_t len = std::min(lx.value_or(ly.value_or(0)), ly.value_or(lx.value_or(0)));
    return len - 1;
}

CountableDataSystem build_system(SequenceSpec xs, SequenceSpec ys, std::size_t depth, Interval y_space) {
    if (depth < 1) {
        throw InvalidInput("truncation depth must be >= 1");
    }
    if (!std::isfinite(y_space.lo) || !std::isfinite(y_space.hi) || y_space.lo > y_space.hi) {
        throw InvalidInput("Y must be a finite interval with lo <= hi");
    }
    // Terms 0..N+1 are needed: the first tail interval feeds sup L_n and L.
    for (const auto* seq : {&xs, &ys}) {
        if (auto len = seq->length(); len && *len < depth + 2) {
            throw ValidationError("table sequence has " + std::to_string(*len) + " terms; depth " +
                                  std::to_string(depth) + " needs at least " + std::to_string(depth + 2));
        }
    }

    const double b = xs.limit();
    double prev = 0.0;
    for (std::size_t n = 0; n <= depth + 1; ++n) {
        const double xn = xs(n);
        if (!std::isfinite(xn)) {
            throw ValidationError("x_" + std::to_string(n) + " is not finite", static_cast<std::ptrdiff_t>(n));
        }
        if (n > 0 && !(xn > prev)) {
            std::ostringstream os;
            os.precision(17);
            os << "x sequence is not strictly increasing at index " << n << " (x_" << n - 1 << " = " << prev
               << ", x_" << n << " = " << xn << ")";
            throw ValidationError(os.str(), static_cast<std::ptrdiff_t>(n));
        }
        prev = xn;
    }
    if (!(xs(depth + 1) < b)) {
        std::ostringstream os;
        os.precision(17);
        os << "declared x limit b = " << b << " must exceed x_" << depth + 1 << " = " << xs(depth + 1);
        throw ValidationError(os.str(), static_cast<std::ptrdiff_t>(depth + 1));
    }

    for (std::size_t n = 0; n <= depth + 1; ++n) {
        const double yn = ys(n);
        if (!std::isfinite(yn) || !y_space.contains(yn)) {
            std::ostringstream os;
            os.precision(17);
            os << "y_" << n << " = " << yn << " lies outside Y = [" << y_space.lo << ", " << y_space.hi << "]";
            throw ValidationError(os.str(), static_cast<std::ptrdiff_t>(n));
        }
    }
    if (!y_space.contains(ys.limit())) {
        std::ostringstream os;
        os.precision(17);
        os << "y limit M = " << ys.limit() << " lies outside Y = [" << y_space.lo << ", " << y_space.hi << "]";
        throw ValidationError(os.str());
    }

    return CountableDataSystem(std::move(xs), std::move(ys), depth, y_space);
}

IntervalIndex find_interval(const CountableDataSystem& sys, double x) {
    if (!std::isfinite(x) || x < sys.a() || x > sys.b()) {
        std::ostringstream os;
        os.precision(17);
        os << "x = " << x << " outside [" << sys.a() << ", " << sys.b() << "]";
        throw DomainError(os.str());
    }
    const auto& nodes = sys.node_xs();
    if (x > nodes.back()) {
        return TailRegion{};
    }
    // smallest n >= 1 with x <= x_n
    auto it = std::lower_bound(nodes.begin() + 1, nodes.end(), x);
    return static_cast<std::size_t>(it - nodes.begin());
}

}  // namespace fif
