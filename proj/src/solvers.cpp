#include "lowtw/solvers.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace lowtw {

namespace {

// Runs body(i) for i in [begin, end) over up to `threads` workers.
template <class Body>
void parallel_for(int begin, int end, unsigned threads, Body body) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::max(1, std::min(static_cast<int>(threads), n));
    if (workers == 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int i = begin + w; i < end; i += workers) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

TrialRecord run_trial(const Graph& g0, const PathQuery& q, const SolveOptions& opt, int index, PathAnswer* answer) {
    TrialRecord rec;
    rec.index = index;
    DecisionSource src(Rng::trial_seed(opt.seed, static_cast<std::uint64_t>(index)));
    CoverResult cover = sample_cover(g0, opt.constants, src);
    rec.a_size = cover.A.size();
    const Graph h = induced_subgraph(g0, cover.A);
    TreeDecomposition td = cover.td;
    TreeDecomposition fresh = decompose(h);
    if (fresh.width() < td.width()) td = std::move(fresh);
    rec.width = td.width();
    PathAnswer ans;
    try {
        ans = dp_longest_path(h, td, q, opt.width_budget);
    } catch (const WidthTooLarge&) {
        rec.width_too_large = true;
        return rec;
    }
    if (ans.found) {
        if (auto why = witness_violation(g0, q, ans.witness))
            throw std::logic_error("DP witness fails validation: " + *why);
        if (witness_weight(g0, q, ans.witness) != ans.weight) throw std::logic_error("DP witness weight mismatch");
        rec.found = true;
    }
    if (answer) *answer = std::move(ans);
    return rec;
}

SolveReport solve_with_repetition(const Graph& g0, const PathQuery& q, const SolveOptions& opt) {
    if (opt.trials < 1) throw std::invalid_argument("trials must be at least 1");
    q.check();
    opt.constants.check();
    SolveReport rep;
    const int batch = static_cast<int>(std::max(1u, opt.threads));
    for (int start = 0; start < opt.trials && !rep.found; start += batch) {
        const int end = std::min(opt.trials, start + batch);
        std::vector<TrialRecord> recs(static_cast<std::size_t>(end - start));
        std::vector<PathAnswer> answers(recs.size());
        parallel_for(start, end, opt.threads, [&](int i) {
            const auto j = static_cast<std::size_t>(i - start);
            recs[j] = run_trial(g0, q, opt, i, &answers[j]);
        });
        for (std::size_t j = 0; j < recs.size(); ++j) {
            rep.records.push_back(recs[j]);
            if (recs[j].found) {
                rep.found = true;
                rep.success_trial = recs[j].index;
                rep.witness = answers[j].witness;
                rep.weight = answers[j].weight;
                break;
            }
        }
    }
    rep.trials_used = static_cast<int>(rep.records.size());
    return rep;
}

std::vector<CoverResult> covering_family(const Graph& g0, const Constants& c, int trials, std::uint64_t seed,
                                         unsigned threads) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    c.check();
    std::vector<CoverResult> family(static_cast<std::size_t>(trials));
    parallel_for(0, trials, threads, [&](int i) {
        DecisionSource src(Rng::trial_seed(seed, static_cast<std::uint64_t>(i)));
        family[static_cast<std::size_t>(i)] = sample_cover(g0, c, src);
    });
    return family;
}

double family_coverage(const std::vector<CoverResult>& family, const std::vector<VertexSet>& xs) {
    if (xs.empty()) return 0.0;
    std::size_t hit = 0;
    for (const auto& x : xs)
        if (std::any_of(family.begin(), family.end(), [&](const CoverResult& r) { return is_subset(x, r.A); })) ++hit;
    return static_cast<double>(hit) / static_cast<double>(xs.size());
}

}  // namespace lowtw
