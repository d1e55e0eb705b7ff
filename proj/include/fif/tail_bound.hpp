#pragma once

#include <cstddef>

#include "fif/maps.hpp"

namespace fif {

/// Bound on what truncation at depth N discards.
///
/// For n > N the term is diam(Im W_n) + |M - y_n| + (x_n - x_{n-1}); `bound`
/// is its maximum over the scanned indices N+1..scanned_to. The first two
/// parts bound |T f(x) - M| on the tail; the last bounds the horizontal gap.
struct TailBound {
    double bound = 0.0;
    std::size_t argmax = 0;
    double diam_part = 0.0;   ///< sup of diam(Im W_n)
    double y_part = 0.0;      ///< sup of |M - y_n|
    double x_part = 0.0;      ///< sup of x_n - x_{n-1}
    /// sup of diam(Im W_n) + |M - y_n|: the uniform error of evaluating the tail as M.
    double value_bound = 0.0;
    std::size_t scanned_to = 0;
    bool non_increasing = true;  ///< the summed term never increased along the scan
};

TailBound tail_bound(const MapSystem& ms);

/// The summed tail term for a single index n >= 1.
double tail_term(const MapSystem& ms, std::size_t n);

}  // namespace fif
