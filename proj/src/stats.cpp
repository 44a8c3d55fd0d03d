#include "lowtw/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace lowtw {

double hoeffding_half_width(std::int64_t n, double delta) {
    if (n < 1) throw std::invalid_argument("hoeffding_half_width needs n >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

StatReport make_report(std::int64_t successes, std::int64_t trials, double confidence, BoundKind kind, double bound) {
    if (successes < 0 || successes > trials) throw std::invalid_argument("successes outside [0, trials]");
    StatReport r;
    r.successes = successes;
    r.trials = trials;
    r.confidence = confidence;
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    r.half_width = hoeffding_half_width(trials, 1.0 - confidence);
    r.kind = kind;
    r.bound = bound;
    if (kind == BoundKind::Lower) r.pass = r.estimate - r.half_width >= bound;
    if (kind == BoundKind::Upper) r.pass = r.estimate <= bound + r.half_width;
    return r;
}

}  // namespace lowtw
