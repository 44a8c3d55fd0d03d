#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace lowtw {

// Hoeffding half-width for N Bernoulli samples at failure probability
// delta: sqrt(ln(2 / delta) / (2 N)).
double hoeffding_half_width(std::int64_t n, double delta);

enum class BoundKind { Lower, Upper, None };

struct StatReport {
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    double estimate = 0.0;
    double half_width = 0.0;
    double confidence = 0.99;
    BoundKind kind = BoundKind::None;
    double bound = 0.0;
    // Lower: estimate - half_width >= bound. Upper: estimate <= bound + half_width.
    std::optional<bool> pass;
};

StatReport make_report(std::int64_t successes, std::int64_t trials, double confidence, BoundKind kind, double bound);

}  // namespace lowtw
