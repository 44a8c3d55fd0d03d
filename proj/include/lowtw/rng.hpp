#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowtw {

std::uint64_t splitmix64(std::uint64_t x);

// Generator: std::mt19937_64 seeded with splitmix64(seed). Distributions are
// defined here rather than taken from <random> so that streams are identical
// across standard libraries: uniform01 uses the top 53 bits, uniform_int uses
// rejection on the smallest covering power-of-two mask.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Seed for trial `index` under `master`: splitmix64(master ^ splitmix64(index + 1)).
    static std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

    std::uint64_t next() { return engine_(); }
    double uniform01();       // [0, 1)
    double uniform_open01();  // (0, 1)
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive

private:
    std::mt19937_64 engine_;
};

struct Decision {
    std::string kind;
    std::vector<std::int64_t> value;
    double probability = 1.0;
    bool forced = false;
};

struct ReplayMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every random draw of a trial goes through here so that it lands in the
// trace with its probability. A replaying source hands back recorded values
// in order and checks the kinds.
class DecisionSource {
public:
    explicit DecisionSource(std::uint64_t seed) : rng_(seed) {}
    static DecisionSource replay(std::vector<Decision> trace);

    std::int64_t uniform_int(const std::string& kind, std::int64_t lo, std::int64_t hi);
    // P(r) = p (1-p)^(r-1), r >= 1, by inverse CDF ceil(ln U / ln(1-p)).
    std::int64_t geometric(const std::string& kind, double p);
    bool bernoulli(const std::string& kind, double p);
    // Uniform alpha-subset of {0..n-1}, sorted.
    std::vector<std::int64_t> subset(const std::string& kind, std::int64_t n, std::int64_t alpha);
    // Debug steering: records a chosen value with the probability that the
    // unsteered draw would have produced it.
    void force(const std::string& kind, std::vector<std::int64_t> value, double probability);

    // Rejection support for steering: draws after a mark can be dropped.
    std::size_t mark() const { return trace_.size(); }
    void truncate(std::size_t mark);

    const std::vector<Decision>& trace() const { return trace_; }
    bool replaying() const { return replay_; }

private:
    DecisionSource() : rng_(0) {}
    const Decision& take(const std::string& kind);

    Rng rng_;
    std::vector<Decision> trace_;
    std::vector<Decision> script_;
    std::size_t cursor_ = 0;
    bool replay_ = false;
};

}  // namespace lowtw
