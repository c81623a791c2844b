#include "mleap/rng.hpp"

#include <cmath>

namespace mleap {

double Rng::uniform(double lo, double hi) {
    const double x = lo + (hi - lo) * uniform();
    // lo + (hi - lo) * u can round up to hi when u is within an ulp of 1.
    return x < hi ? x : std::nextafter(hi, lo);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    for (;;) {
        const std::uint64_t x = engine_();
        if (x < limit) return x % bound;
    }
}

}  // namespace mleap
