#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fif/metric.hpp"

namespace fif {

/// Compact interval [lo, hi] used as the vertical space Y.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double diam() const noexcept { return hi - lo; }
    bool contains(double v, double tol = kMembershipTol) const noexcept {
        return v >= lo - tol && v <= hi + tol;
    }
};

/// A real sequence given by a closed-form generator and its exact limit.
///
/// Built-in kinds:
///   geometric:  offset + scale * base^(-n),  |base| > 1, limit = offset
///   harmonic:   offset + scale / (n + shift), shift > 0,  limit = offset
///   constant:   value,                                    limit = value
///   table:      values[n] for n < values.size(), limit supplied
///   function:   arbitrary generator, limit supplied
class SequenceSpec {
public:
    enum class Kind { Geometric, Harmonic, Constant, Table, Function };

    static SequenceSpec geometric(double base, double scale, double offset);
    static SequenceSpec harmonic(double scale, double offset, double shift = 1.0);
    static SequenceSpec constant(double value);
    static SequenceSpec table(std::vector<double> values, double limit);
    static SequenceSpec function(std::function<double(std::size_t)> generator, double limit,
                                 std::string description = "custom");

    /// Value at index n; throws IndexError past the end of a table.
    double operator()(std::size_t n) const;
    double limit() const noexcept { return limit_; }
    Kind kind() const noexcept { return kind_; }
    /// Number of defined terms; nullopt for infinite generators.
    std::optional<std::size_t> length() const;
    bool is_builtin() const noexcept { return kind_ != Kind::Table && kind_ != Kind::Function; }
    std::string describe() const;

private:
    SequenceSpec() = default;

    Kind kind_ = Kind::Constant;
    double base_ = 0.0;
    double scale_ = 0.0;
    double offset_ = 0.0;
    double shift_ = 1.0;
    std::vector<double> values_;
    std::function<double(std::size_t)> generator_;
    std::string description_;
    double limit_ = 0.0;
};

/// Marker returned by find_interval for x in the tail (x_N, b].
struct TailRegion {};

/// Countable system of data {(x_n, y_n)} truncated at depth N.
class CountableDataSystem {
public:
    const SequenceSpec& xs() const noexcept { return xs_; }
    const SequenceSpec& ys() const noexcept { return ys_; }
    std::size_t depth() const noexcept { return depth_; }
    const Interval& y_space() const noexcept { return y_space_; }

    double a() const noexcept { return node_x_.front(); }
    double b() const noexcept { return xs_.limit(); }
    double m() const noexcept { return node_y_.front(); }
    double M() const noexcept { return ys_.limit(); }

    /// (x_n, y_n) for 0 <= n <= N; IndexError otherwise.
    Point2 node(std::size_t n) const;
    /// Abscissae x_0..x_N.
    const std::vector<double>& node_xs() const noexcept { return node_x_; }
    const std::vector<double>& node_ys() const noexcept { return node_y_; }

    /// Sequence terms at any index (also beyond N), straight from the generators.
    double x_at(std::size_t n) const;
    double y_at(std::size_t n) const;
    /// Largest index for which both generators are defined, or nullopt if unbounded.
    std::optional<std::size_t> last_index() const;

private:
    friend CountableDataSystem build_system(SequenceSpec, SequenceSpec, std::size_t, Interval);
    CountableDataSystem(SequenceSpec xs, SequenceSpec ys, std::size_t depth, Interval y_space);

    SequenceSpec xs_;
    SequenceSpec ys_;
    std::size_t depth_;
    Interval y_space_;
    std::vector<double> node_x_;
    std::vector<double> node_y_;
};

/// Validate and build a data system. Throws ValidationError (with the first
/// offending index where applicable) or InvalidInput.
CountableDataSystem build_system(SequenceSpec xs, SequenceSpec ys, std::size_t depth, Interval y_space);

/// Index n >= 1 with x in [x_{n-1}, x_n] (ties go to the left interval), or
/// TailRegion for x_N < x <= b. Throws DomainError outside [a, b].
using IntervalIndex = std::variant<std::size_t, TailRegion>;
IntervalIndex find_interval(const CountableDataSystem& sys, double x);

}  // namespace fif
