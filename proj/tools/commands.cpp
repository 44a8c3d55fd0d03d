#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowtw/clustering.hpp"
#include "lowtw/corpus.hpp"
#include "lowtw/duality.hpp"
#include "lowtw/graph_io.hpp"
#include "lowtw/path_dp.hpp"
#include "lowtw/pattern_cover.hpp"
#include "lowtw/solvers.hpp"
#include "lowtw/stats.hpp"
#include "lowtw/tree_decomposition.hpp"

namespace lowtw::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A check on well-formed input failed; the JSON report is still written.
struct ValidationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json envelope(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

json trace_json(const std::vector<Decision>& trace) {
    json arr = json::array();
    for (const auto& d : trace)
        arr.push_back({{"kind", d.kind}, {"value", d.value}, {"probability", d.probability}, {"forced", d.forced}});
    return arr;
}

std::vector<Decision> read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
        std::vector<Decision> out;
        for (const auto& d : doc.at("decisions")) {
            Decision x;
            x.kind = d.at("kind").get<std::string>();
            x.value = d.at("value").get<std::vector<std::int64_t>>();
            x.probability = d.at("probability").get<double>();
            x.forced = d.at("forced").get<bool>();
            out.push_back(std::move(x));
        }
        return out;
    } catch (const json::exception& e) {
        throw ParseError("trace file '" + path + "': " + e.what());
    }
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path + "'");
    body(f);
}

std::vector<VertexSet> read_set_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open pattern list '" + path + "'");
    try {
        std::vector<VertexSet> out;
        for (const auto& x : json::parse(in)) out.push_back(make_set(x.get<std::vector<Vertex>>()));
        return out;
    } catch (const json::exception& e) {
        throw ParseError("pattern list '" + path + "': " + e.what());
    }
}

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::Base: return "base";
    case NodeKind::Disjoint: return "disjoint";
    case NodeKind::IntersectPaths: return "intersect-paths";
    case NodeKind::IntersectChain: return "intersect-chain";
    case NodeKind::Stalled: return "stalled";
    }
    return "?";
}

json report_json(const StatReport& r) {
    json j{{"successes", r.successes}, {"trials", r.trials},           {"estimate", r.estimate},
           {"half_width", r.half_width}, {"confidence", r.confidence}};
    switch (r.kind) {
    case BoundKind::Lower: j["bound_kind"] = "lower"; break;
    case BoundKind::Upper: j["bound_kind"] = "upper"; break;
    case BoundKind::None: j["bound_kind"] = "none"; break;
    }
    if (r.kind != BoundKind::None) j["bound"] = r.bound;
    j["verdict"] = r.pass ? (*r.pass ? "pass" : "fail") : "none";
    return j;
}

// Options shared by the sampler-driven subcommands.
struct SamplerFlags {
    int k = 0;
    double scale = 1.0;
    int c_tw = 10;

    void add(CLI::App* app) {
        app->add_option("--k", k, "pattern size")->required();
        app->add_option("--scale", scale, "multiplier for the recursion constants")->check(CLI::Range(0.0, 1.0));
        app->add_option("--ctw", c_tw, "treewidth constant c_tw")->check(CLI::PositiveNumber);
    }
    Constants constants() const {
        Constants c;
        c.k = k;
        c.scale = scale;
        c.c_tw = c_tw;
        if (!(scale > 0.0)) throw UsageError("--scale must lie in (0, 1]");
        c.check();
        return c;
    }
};

class Cli {
public:
    explicit Cli(std::ostream& out) : out_(out) {}

    void build(CLI::App& app) {
        app.require_subcommand(1);
        gen(app);
        validate(app);
        cluster(app);
        duality_cmd(app);
        sample(app);
        solve(app);
        family(app);
        estimate(app);
    }

private:
    void emit(const json& j) { out_ << j.dump(2) << "\n"; }

    std::uint64_t need_seed(const std::optional<std::uint64_t>& seed, const char* cmd) {
        if (!seed) throw UsageError(std::string(cmd) + " is randomized and needs --seed");
        return *seed;
    }

    void gen(CLI::App& app) {
        auto* c = app.add_subcommand("gen", "generate a corpus graph");
        c->add_option("kind", gen_kind_, "grid | cylinder | random-planar-like | path | tree | theta")->required();
        c->add_option("--rows", rows_);
        c->add_option("--cols", cols_);
        c->add_option("--n", n_);
        c->add_option("--arms", rows_);
        c->add_option("--length", cols_);
        c->add_option("--seed", seed_);
        c->add_option("--plant", plant_, "plant a self-avoiding k-path (grid only)");
        c->add_flag("--directed", directed_, "orient the grid randomly with the planted path forward");
        c->add_option("--max-weight", max_weight_, "uniform arc weights in [1, W] for a directed plant");
        c->add_option("--out", out_path_, "edge list destination; stdout when absent");
        c->add_option("--pattern-out", pattern_path_, "JSON file for the planted set and its order");
        c->callback([this] { run_gen(); });
    }

    void run_gen() {
        const bool random = gen_kind_ == "random-planar-like" || gen_kind_ == "tree" || plant_ > 0;
        Rng rng(random ? need_seed(seed_, "gen") : 0);
        Graph g;
        json pattern;
        if (plant_ > 0) {
            if (gen_kind_ != "grid") throw UsageError("--plant needs kind grid");
            Planted p = directed_ ? planted_directed_grid(rows_, cols_, plant_, max_weight_, rng)
                                  : planted_grid_path(rows_, cols_, plant_, rng);
            if (!check_planted(p)) throw ValidationFailed("planted pattern failed its certificate");
            g = std::move(p.g);
            pattern = envelope("gen");
            pattern["x"] = p.x;
            pattern["order"] = p.order;
        } else {
            const bool by_n = gen_kind_ == "path" || gen_kind_ == "tree" || gen_kind_ == "random-planar-like";
            g = generate(gen_kind_, by_n ? n_ : rows_, cols_, rng);
        }
        if (out_path_.empty()) write_edge_list(out_, g);
        else write_file(out_path_, [&](std::ostream& f) { write_edge_list(f, g); });
        if (!pattern_path_.empty()) {
            if (pattern.is_null()) throw UsageError("--pattern-out needs --plant");
            write_file(pattern_path_, [&](std::ostream& f) { f << pattern.dump(2) << "\n"; });
        }
    }

    void validate(CLI::App& app) {
        auto* c = app.add_subcommand("validate-decomposition", "check a PACE .td against a graph");
        c->add_option("--graph", graph_path_)->required();
        c->add_option("--td", td_path_)->required();
        c->callback([this] {
            const Graph g = read_edge_list_file(graph_path_);
            const TreeDecomposition td = read_pace_td_file(td_path_);
            const TdReport rep = lowtw::validate(g, td);
            json j = envelope("validate-decomposition");
            j["valid"] = rep.ok;
            j["width"] = td.width();
            j["bags"] = td.nodes.size();
            if (!rep.ok) j["violation"] = rep.violation;
            emit(j);
            if (!rep.ok) throw ValidationFailed(rep.violation);
        });
    }

    void cluster(CLI::App& app) {
        auto* c = app.add_subcommand("cluster", "ball carving, one run or aggregate statistics");
        c->add_option("--graph", graph_path_)->required();
        c->add_option("--k", k_)->required();
        c->add_option("--seed", seed_);
        c->add_option("--trials", trials_)->check(CLI::PositiveNumber);
        c->add_option("--ghosts", ghosts_path_, "vertex-set file of ghost vertices");
        c->add_option("--pattern", pattern_in_, "vertex-set file; aggregate runs report its coverage");
        c->add_option("--trace", trace_path_, "write the decision trace of a single run");
        c->add_option("--replay", replay_path_, "rerun a recorded trace instead of drawing");
        c->callback([this] {
            const Graph g = read_edge_list_file(graph_path_);
            const VertexSet ghosts = ghosts_path_.empty() ? VertexSet{} : read_vertex_set_file(ghosts_path_);
            json j = envelope("cluster");
            j["k"] = k_;
            if (trials_ <= 1) {
                DecisionSource src = source("cluster");
                const ClusterResult res = lowtw::cluster(g, ghosts, k_, src);
                const RadiusReport rr = check_cluster_radii(g, ghosts, k_, res);
                j["kept"] = res.kept;
                json log = json::array();
                for (const auto& s : res.carve_log) log.push_back({{"center", s.center}, {"radius", s.radius}});
                j["carve_log"] = log;
                j["aborted"] = res.aborted;
                j["radius_cap"] = radius_cap(k_, g.num_vertices() - ghosts.size());
                j["max_radius"] = rr.max_radius;
                j["radii_ok"] = rr.ok;
                save_trace(src.trace());
                emit(j);
                if (!rr.ok) throw ValidationFailed(rr.violation);
                return;
            }
            const std::uint64_t seed = need_seed(seed_, "cluster");
            const std::optional<VertexSet> x =
                pattern_in_.empty() ? std::nullopt : std::optional<VertexSet>(read_vertex_set_file(pattern_in_));
            std::int64_t aborted = 0;
            std::int64_t covered = 0;
            std::int64_t radius_failures = 0;
            for (int t = 0; t < trials_; ++t) {
                DecisionSource src(Rng::trial_seed(seed, static_cast<std::uint64_t>(t)));
                const ClusterResult res = lowtw::cluster(g, ghosts, k_, src);
                if (!check_cluster_radii(g, ghosts, k_, res).ok) ++radius_failures;
                if (res.aborted) ++aborted;
                if (x && is_subset(*x, res.kept)) ++covered;
            }
            j["seed"] = seed;
            j["trials"] = trials_;
            j["aborted"] = aborted;
            j["radius_failures"] = radius_failures;
            if (x) j["covered"] = covered;
            emit(j);
            if (radius_failures > 0) throw ValidationFailed("cluster radius check failed");
        });
    }

    void duality_cmd(CLI::App& app) {
        auto* c = app.add_subcommand("duality", "separator chain or low-sharing path family");
        c->add_option("--graph", graph_path_)->required();
        c->add_option("--s", s_)->required();
        c->add_option("--t", t_)->required();
        c->add_option("--p", p_)->required();
        c->add_option("--q", q_)->required();
        c->callback([this] {
            const Graph g = read_edge_list_file(graph_path_);
            const DualityOutcome d = lowtw::duality(g, s_, t_, p_, q_);
            json j = envelope("duality");
            j["flow_cost"] = d.flow_cost;
            if (d.kind == DualityOutcome::Kind::Chain) {
                j["kind"] = "chain";
                j["chain"] = d.chain.sets;
            } else {
                j["kind"] = "paths";
                j["paths"] = d.family.paths;
                j["public"] = d.family.shared;
            }
            emit(j);
        });
    }

    void sample(CLI::App& app) {
        auto* c = app.add_subcommand("sample", "one run of the pattern-covering sampler");
        c->add_option("--graph", graph_path_)->required();
        sampler_.add(c);
        c->add_option("--seed", seed_);
        c->add_option("--emit-td", td_out_, "write the decomposition of G[A] as PACE .td");
        c->add_option("--trace", trace_path_, "write the decision trace");
        c->add_option("--replay", replay_path_, "rerun a recorded trace instead of drawing");
        c->callback([this] {
            const Graph g = read_edge_list_file(graph_path_);
            const Constants cs = sampler_.constants();
            DecisionSource src = source("sample");
            const CoverResult r = sample_cover(g, cs, src);
            json j = envelope("sample");
            j["k"] = cs.k;
            j["scale"] = cs.scale;
            j["c_tw"] = cs.c_tw;
            j["root"] = r.root;
            j["A"] = r.A;
            j["a_size"] = r.A.size();
            j["width"] = r.td.width();
            j["width_cap"] = cs.width_cap();
            j["trivial"] = r.trivial;
            j["aborted"] = r.aborted;
            if (r.aborted) j["abort_reason"] = r.abort_reason;
            std::map<std::string, int> kinds;
            for (const auto& n : r.nodes) ++kinds[kind_name(n.kind)];
            j["nodes"] = kinds;
            j["decisions"] = r.trace.size();
            if (!td_out_.empty())
                write_file(td_out_, [&](std::ostream& f) { write_pace_td(f, r.td, g.id_bound()); });
            save_trace(r.trace);
            emit(j);
        });
    }

    void solve(CLI::App& app) {
        auto* c = app.add_subcommand("solve", "k-path / k-cycle by repeated sampling and DP");
        c->add_option("--graph", graph_path_)->required();
        c->add_option("--k", k_)->required();
        c->add_option("--kind", path_kind_)->check(CLI::IsMember({"path", "cycle"}));
        c->add_flag("--directed", directed_);
        c->add_option("--objective", objective_)->check(CLI::IsMember({"exists", "min", "max"}));
        c->add_option("--trials", trials_)->required()->check(CLI::PositiveNumber);
        c->add_option("--seed", seed_);
        c->add_option("--scale", sampler_.scale)->check(CLI::Range(0.0, 1.0));
        c->add_option("--ctw", sampler_.c_tw)->check(CLI::PositiveNumber);
        c->add_option("--budget", budget_, "largest width handed to the DP");
        c->add_option("--threads", threads_)->check(CLI::PositiveNumber);
        c->callback([this] {
            const Graph g = read_edge_list_file(graph_path_);
            PathQuery q;
            q.kind = path_kind_ == "cycle" ? PathQuery::Kind::Cycle : PathQuery::Kind::Path;
            q.k = k_;
            q.directed = directed_;
            q.objective = objective_ == "min"   ? PathQuery::Objective::MinWeight
                          : objective_ == "max" ? PathQuery::Objective::MaxWeight
                                                : PathQuery::Objective::Exists;
            SolveOptions opt;
            opt.trials = trials_;
            opt.seed = need_seed(seed_, "solve");
            sampler_.k = k_;
            opt.constants = sampler_.constants();
            opt.width_budget = budget_;
            opt.threads = threads_;
            const SolveReport r = solve_with_repetition(g, q, opt);
            json j = envelope("solve");
            j["kind"] = path_kind_;
            j["k"] = k_;
            j["directed"] = directed_;
            j["objective"] = objective_;
            j["seed"] = opt.seed;
            j["found"] = r.found;
            if (r.found) {
                j["witness"] = r.witness;
                j["weight"] = format_weight(r.weight);
                j["success_trial"] = r.success_trial;
            }
            j["trials_used"] = r.trials_used;
            json widths = json::array();
            int too_wide = 0;
            for (const auto& t : r.records) {
                widths.push_back(t.width);
                too_wide += t.width_too_large ? 1 : 0;
            }
            j["widths"] = widths;
            j["width_too_large"] = too_wide;
            emit(j);
        });
    }

    void family(CLI::App& app) {
        auto* c = app.add_subcommand("family", "covering family of sampled sets");
        c->add_option("--graph", graph_path_)->required();
        sampler_.add(c);
        c->add_option("--trials", trials_)->required()->check(CLI::PositiveNumber);
        c->add_option("--seed", seed_);
        c->add_option("--patterns", patterns_path_, "JSON list of vertex sets whose coverage is reported");
        c->add_option("--threads", threads_)->check(CLI::PositiveNumber);
        c->callback([this] {
            const Graph g = read_edge_list_file(graph_path_);
            const std::uint64_t seed = need_seed(seed_, "family");
            const auto fam = covering_family(g, sampler_.constants(), trials_, seed, threads_);
            json j = envelope("family");
            j["seed"] = seed;
            json members = json::array();
            for (const auto& m : fam) members.push_back({{"A", m.A}, {"width", m.td.width()}, {"aborted", m.aborted}});
            j["members"] = members;
            if (!patterns_path_.empty()) j["coverage"] = family_coverage(fam, read_set_list(patterns_path_));
            emit(j);
        });
    }

    void estimate(CLI::App& app) {
        auto* c = app.add_subcommand("estimate", "Monte-Carlo estimate with a Hoeffding verdict");
        c->add_option("claim", claim_)->required()->check(
            CLI::IsMember({"cluster-coverage", "cluster-abort", "sampler-coverage"}));
        c->add_option("--graph", graph_path_)->required();
        sampler_.add(c);
        c->add_option("--pattern", pattern_in_, "vertex-set file X");
        c->add_option("--trials", trials_)->required()->check(CLI::PositiveNumber);
        c->add_option("--seed", seed_);
        c->add_option("--confidence", confidence_)->check(CLI::Range(0.0, 1.0));
        c->callback([this] { run_estimate(); });
    }

    void run_estimate() {
        const Graph g = read_edge_list_file(graph_path_);
        const std::uint64_t seed = need_seed(seed_, "estimate");
        const int k = sampler_.k;
        if (k < 1) throw UsageError("--k must be positive");
        std::optional<VertexSet> x;
        if (!pattern_in_.empty()) x = read_vertex_set_file(pattern_in_);
        if (claim_ != "cluster-abort" && !x) throw UsageError(claim_ + " needs --pattern");
        std::int64_t hits = 0;
        BoundKind kind = BoundKind::None;
        double bound = 0.0;
        if (claim_ == "sampler-coverage") {
            const Constants cs = sampler_.constants();
            for (int t = 0; t < trials_; ++t) {
                DecisionSource src(Rng::trial_seed(seed, static_cast<std::uint64_t>(t)));
                if (is_subset(*x, sample_cover(g, cs, src).A)) ++hits;
            }
        } else {
            for (int t = 0; t < trials_; ++t) {
                DecisionSource src(Rng::trial_seed(seed, static_cast<std::uint64_t>(t)));
                const ClusterResult res = lowtw::cluster(g, {}, k, src);
                if (claim_ == "cluster-abort" ? res.aborted : is_subset(*x, res.kept)) ++hits;
            }
            kind = claim_ == "cluster-abort" ? BoundKind::Upper : BoundKind::Lower;
            bound = claim_ == "cluster-abort" ? 1.0 / (2.0 * k) : 1.0 - 1.0 / k;
        }
        const StatReport r = make_report(hits, trials_, confidence_, kind, bound);
        json j = envelope("estimate");
        j["claim"] = claim_;
        j["k"] = k;
        j["seed"] = seed;
        if (claim_ == "sampler-coverage") j["scale"] = sampler_.scale;
        j["report"] = report_json(r);
        emit(j);
        if (r.pass && !*r.pass) throw ValidationFailed(claim_ + " verdict failed");
    }

    DecisionSource source(const char* cmd) {
        if (!replay_path_.empty()) return DecisionSource::replay(read_trace(replay_path_));
        return DecisionSource(need_seed(seed_, cmd));
    }

    void save_trace(const std::vector<Decision>& trace) {
        if (trace_path_.empty()) return;
        json doc{{"schema", kSchema}, {"decisions", trace_json(trace)}};
        if (seed_) doc["seed"] = *seed_;
        write_file(trace_path_, [&](std::ostream& f) { f << doc.dump(2) << "\n"; });
    }

    std::ostream& out_;
    std::string graph_path_, td_path_, ghosts_path_, pattern_in_, patterns_path_;
    std::string trace_path_, replay_path_, td_out_, out_path_, pattern_path_;
    std::string gen_kind_, claim_;
    std::string path_kind_ = "path";
    std::string objective_ = "exists";
    std::optional<std::uint64_t> seed_;
    SamplerFlags sampler_;
    int rows_ = 0, cols_ = 0, n_ = 0, plant_ = 0, max_weight_ = 0;
    int k_ = 0, trials_ = 1, budget_ = 14;
    unsigned threads_ = 1;
    Vertex s_ = 0, t_ = 0;
    int p_ = 0, q_ = 0;
    bool directed_ = false;
    double confidence_ = 0.99;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Low-treewidth pattern covering toolkit"};
    app.name("lowtw-cli");
    Cli cli(out);
    cli.build(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        // Callbacks run inside parse, so their exceptions land below.
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const BadParams& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ValidationFailed& e) {
        err << "validation failed: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kModule;
    }
    return kOk;
}

}  // namespace lowtw::cli
