#include "covrad/entropy.hpp"

#include <cmath>

#include "covrad/errors.hpp"

namespace covrad {

double entropy_hq(int q, double x) {
    if (q < 2) throw InputError("entropy needs an alphabet of size >= 2");
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("entropy argument must lie in [0, 1]");
    double logq = std::log(static_cast<double>(q));
    double value = x * std::log(static_cast<double>(q - 1)) / logq;
    if (x > 0.0) value -= x * std::log(x) / logq;
    if (x < 1.0) value -= (1.0 - x) * std::log(1.0 - x) / logq;
    return value;
}

double entropy_hq_inverse(int q, double y) {
    if (q < 2) throw InputError("entropy needs an alphabet of size >= 2");
    if (!(y >= 0.0 && y <= 1.0)) throw InputError("entropy value must lie in [0, 1]");
    double lo = 0.0;
    double hi = 1.0 - 1.0 / static_cast<double>(q);
    // Endpoints are returned exactly: H_q is flat at its maximum, so a
    // bisection for y = 1 would stall about sqrt(eps) short of hi.
    if (y == 0.0) return lo;
    if (y == 1.0) return hi;
    // H_q is strictly increasing on [lo, hi] with H_q(lo) = 0, H_q(hi) = 1.
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (entropy_hq(q, mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace covrad
