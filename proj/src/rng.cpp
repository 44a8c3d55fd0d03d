#include "lowtw/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace lowtw {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t Rng::trial_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform_open01() {
    for (;;) {
        double u = uniform01();
        if (u > 0.0) return u;
    }
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == 0) return lo;
    const std::uint64_t mask = span == ~std::uint64_t{0} ? span : std::bit_ceil(span + 1) - 1;
    for (;;) {
        std::uint64_t x = next() & mask;
        if (x <= span) return lo + static_cast<std::int64_t>(x);
    }
}

DecisionSource DecisionSource::replay(std::vector<Decision> trace) {
    DecisionSource s;
    s.script_ = std::move(trace);
    s.replay_ = true;
    return s;
}

const Decision& DecisionSource::take(const std::string& kind) {
    if (cursor_ >= script_.size()) throw ReplayMismatch("trace exhausted at draw '" + kind + "'");
    const Decision& d = script_[cursor_++];
    if (d.kind != kind) throw ReplayMismatch("trace expects '" + d.kind + "', algorithm draws '" + kind + "'");
    trace_.push_back(d);
    return d;
}

std::int64_t DecisionSource::uniform_int(const std::string& kind, std::int64_t lo, std::int64_t hi) {
    if (replay_) return take(kind).value.at(0);
    std::int64_t v = rng_.uniform_int(lo, hi);
    trace_.push_back({kind, {v}, 1.0 / static_cast<double>(hi - lo + 1), false});
    return v;
}

std::int64_t DecisionSource::geometric(const std::string& kind, double p) {
    if (replay_) return take(kind).value.at(0);
    std::int64_t r = 1;
    if (p < 1.0) {
        double x = std::ceil(std::log(rng_.uniform_open01()) / std::log1p(-p));
        r = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::min(x, 9.0e18)));
    }
    double prob = p * std::pow(1.0 - p, static_cast<double>(r - 1));
    trace_.push_back({kind, {r}, prob, false});
    return r;
}

bool DecisionSource::bernoulli(const std::string& kind, double p) {
    if (replay_) return take(kind).value.at(0) != 0;
    bool b = rng_.uniform01() < p;
    trace_.push_back({kind, {b ? 1 : 0}, b ? p : 1.0 - p, false});
    return b;
}

std::vector<std::int64_t> DecisionSource::subset(const std::string& kind, std::int64_t n, std::int64_t alpha) {
    if (replay_) return take(kind).value;
    if (alpha < 0 || alpha > n) throw std::invalid_argument("subset: bad size");
    std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (std::int64_t i = 0; i < alpha; ++i) {
        auto j = rng_.uniform_int(i, n - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<std::int64_t> out(pool.begin(), pool.begin() + alpha);
    std::sort(out.begin(), out.end());
    double prob = 1.0;
    for (std::int64_t i = 0; i < alpha; ++i)
        prob *= static_cast<double>(alpha - i) / static_cast<double>(n - i);
    trace_.push_back({kind, out, prob, false});
    return out;
}

void DecisionSource::force(const std::string& kind, std::vector<std::int64_t> value, double probability) {
    trace_.push_back({kind, std::move(value), probability, true});
}

void DecisionSource::truncate(std::size_t mark) {
    if (replay_) throw std::logic_error("cannot truncate a replaying source");
    if (mark < trace_.size()) trace_.resize(mark);
}

}  // namespace lowtw
