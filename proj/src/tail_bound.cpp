#include "fif/tail_bound.hpp"

#include <algorithm>
#include <cmath>

namespace fif {

namespace {

struct Parts {
    double diam;
    double y;
    double x;
};

Parts parts(const MapSystem& ms, std::size_t n) {
    const auto& s = ms.system();
    return {ms.vertical().image_diam(n), std::abs(s.M() - s.y_at(n)), s.x_at(n) - s.x_at(n - 1)};
}

}  // namespace

double tail_term(const MapSystem& ms, std::size_t n) {
    const auto p = parts(ms, n);
    return p.diam + p.y + p.x;
}

TailBound tail_bound(const MapSystem& ms) {
    TailBound tb;
    const std::size_t first = ms.depth() + 1;
    tb.scanned_to = std::max(first, ms.scan_limit());
    double prev = 0.0;
    for (std::size_t n = first; n <= tb.scanned_to; ++n) {
        const auto p = parts(ms, n);
        const double term = p.diam + p.y + p.x;
        if (n > first && term > prev) {
            tb.non_increasing = false;
        }
        prev = term;
        if (term > tb.bound || n == first) {
            tb.bound = term;
            tb.argmax = n;
        }
        tb.diam_part = std::max(tb.diam_part, p.diam);
        tb.y_part = std::max(tb.y_part, p.y);
        tb.x_part = std::max(tb.x_part, p.x);
        tb.value_bound = std::max(tb.value_bound, p.diam + p.y);
    }
    return tb;
}

}  // namespace fif
