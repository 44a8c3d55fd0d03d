#pragma once

#include <cstdint>
#include <vector>

#include "lowtw/path_dp.hpp"
#include "lowtw/pattern_cover.hpp"

namespace lowtw {

struct SolveOptions {
    int trials = 1;
    std::uint64_t seed = 0;
    Constants constants;
    int width_budget = 14;
    unsigned threads = 1;
};

struct TrialRecord {
    int index = 0;
    std::size_t a_size = 0;
    int width = -1;  // width of the decomposition handed to the DP
    bool width_too_large = false;
    bool found = false;
};

struct SolveReport {
    bool found = false;
    std::vector<Vertex> witness;
    Weight weight{0};
    int trials_used = 0;
    int success_trial = -1;
    std::vector<TrialRecord> records;  // trials 0 .. trials_used - 1
};

// One trial: sample A on the underlying undirected graph, then run the DP on
// G[A] with the narrower of the sampler's decomposition and a fresh min-fill
// one. A witness is re-validated against g0 before it counts.
TrialRecord run_trial(const Graph& g0, const PathQuery& q, const SolveOptions& opt, int index, PathAnswer* answer);

// Trials run in batches of `threads`; the report is the lowest-index success,
// so it does not depend on the thread count.
SolveReport solve_with_repetition(const Graph& g0, const PathQuery& q, const SolveOptions& opt);

std::vector<CoverResult> covering_family(const Graph& g0, const Constants& c, int trials, std::uint64_t seed,
                                         unsigned threads = 1);
// Fraction of xs covered by at least one member.
double family_coverage(const std::vector<CoverResult>& family, const std::vector<VertexSet>& xs);

}  // namespace lowtw
