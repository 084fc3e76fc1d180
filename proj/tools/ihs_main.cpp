#include <ihs/constructions.hpp>
#include <ihs/error.hpp>
#include <ihs/experiment.hpp>
#include <ihs/io.hpp>
#include <ihs/pipeline.hpp>
#include <ihs/solver.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ihs;

using nlohmann::json;
using std::cerr;
using std::optional;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_rejected = 1;
    constexpr int exit_usage = 2;
    constexpr int exit_unsat = 10;
    constexpr int exit_timeout = 20;

    struct Common
    {
        string instance;
        string output;
        uint64_t seed = 0;
        uint64_t budget_nodes = 0;
        double budget_secs = 0.0;
        unsigned threads = 1;
        bool deterministic = false;

        auto budget() const -> Budget { return Budget{budget_nodes, budget_secs}; }
        auto options() const -> SolveOptions { return SolveOptions{budget(), deterministic ? 1u : threads}; }
    };

    auto add_budget(CLI::App & app, Common & c) -> void
    {
        app.add_option("--budget-nodes", c.budget_nodes, "Search node budget (0 = unlimited)");
        app.add_option("--budget-secs", c.budget_secs, "Wall time budget in seconds (0 = unlimited)");
    }

    auto add_threads(CLI::App & app, Common & c) -> void
    {
        app.add_option("--threads", c.threads, "Worker threads for the top-level split")->check(CLI::Range(1u, 256u));
        app.add_flag("--deterministic", c.deterministic, "Force the single-threaded deterministic mode");
    }

    auto add_output(CLI::App & app, Common & c) -> void
    {
        app.add_option("-o,--output", c.output, "Write the result here instead of standard output");
    }

    auto emit(const Common & c, const string & text) -> void
    {
        if (c.output.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(c.output, std::ios::binary);
        if (! out)
            throw Error(ErrorKind::Schema, "cannot write " + c.output);
        out << text;
    }

    auto parse_list(const string & text) -> vector<Vertex>
    {
        vector<Vertex> result;
        std::stringstream in(text);
        string item;
        while (std::getline(in, item, ',')) {
            if (item.empty())
                continue;
            size_t used = 0;
            auto v = std::stoul(item, &used);
            if (used != item.size())
                throw Error(ErrorKind::Schema, "bad vertex list entry '" + item + "'");
            result.push_back(Vertex(v));
        }
        return result;
    }

    auto check_tuple(const Instance & inst, const vector<Vertex> & vs, const string & what) -> void
    {
        for (auto v : vs)
            if (v >= inst.graph.order())
                throw Error(ErrorKind::VertexOutOfRange, what + " names vertex " + std::to_string(v));
    }

    auto status_exit(SolveStatus s) -> int
    {
        switch (s) {
            case SolveStatus::Sat: return exit_ok;
            case SolveStatus::Unsat: return exit_unsat;
            case SolveStatus::Timeout: return exit_timeout;
        }
        return exit_usage;
    }

    /// Witnesses are checked once more, independently of the search, before
    /// anything is written.
    auto revalidate(const Instance & inst, const SolveOutcome & out, std::size_t k, bool hamilton) -> void
    {
        if (! out.witness)
            return;
        auto check = hamilton ? check_hamilton_power(inst.graph, inst.system, *out.witness, k)
            : check_power_witness(inst.graph, inst.system, *out.witness, k);
        if (! check.valid)
            throw std::logic_error("solver witness failed validation: " + check.reason);
    }

    auto read_sequence(const string & path) -> BaseSequence
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error(ErrorKind::Schema, "cannot open " + path);
        json doc;
        try {
            doc = json::parse(in);
        }
        catch (const json::parse_error & e) {
            throw Error(ErrorKind::Schema, path + ": " + e.what());
        }
        if (doc.is_object() && doc.contains("witness"))
            doc = doc["witness"];
        else if (doc.is_object() && doc.contains("outcome") && doc["outcome"].contains("certificate"))
            doc = doc["outcome"]["certificate"];
        if (! doc.is_object() || ! doc.contains("vertices") || ! doc["vertices"].is_array())
            throw Error(ErrorKind::Schema, path + ": field vertices: expected an array");
        BaseSequence seq;
        for (auto & v : doc["vertices"]) {
            if (! v.is_number_unsigned())
                throw Error(ErrorKind::Schema, path + ": field vertices: expected vertex ids");
            seq.vertices.push_back(v.get<Vertex>());
        }
        auto kind = doc.value("kind", string("path"));
        if (kind != "path" && kind != "cycle")
            throw Error(ErrorKind::Schema, path + ": field kind: expected path or cycle");
        seq.kind = kind == "cycle" ? SequenceKind::Cycle : SequenceKind::Path;
        return seq;
    }

    auto dump(const json & j) -> string
    {
        return j.dump(2) + "\n";
    }

    template <typename T>
    auto parse_ranges(const string & text) -> vector<T>
    {
        // "3,5,8-10"
        vector<T> out;
        std::stringstream in(text);
        string item;
        while (std::getline(in, item, ',')) {
            if (item.empty())
                continue;
            auto dash = item.find('-');
            try {
                if (dash == string::npos)
                    out.push_back(T(std::stoull(item)));
                else {
                    auto lo = std::stoull(item.substr(0, dash)), hi = std::stoull(item.substr(dash + 1));
                    for (auto v = lo; v <= hi; ++v)
                        out.push_back(T(v));
                }
            }
            catch (const std::exception &) {
                throw CLI::ValidationError("bad range list '" + text + "'");
            }
        }
        return out;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Incompatibility systems: compatible Hamilton powers, barriers and absorption"};
    app.require_subcommand(1);

    Common common;

    // gen
    auto gen = app.add_subcommand("gen", "Generate an instance");
    string model = "barrier";
    size_t gen_n = 0, gen_k = 2, gen_bound = 0;
    double edge_prob = 1.0;
    gen->add_option("--model", model, "barrier | random | complete")->check(CLI::IsMember({"barrier", "random", "complete"}));
    gen->add_option("--n", gen_n, "Vertex count")->required();
    gen->add_option("--k", gen_k, "Power (barrier model)");
    gen->add_option("--bound", gen_bound, "Boundedness target (random model)");
    gen->add_option("--edge-prob", edge_prob, "Edge probability (random model)")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", common.seed, "Random seed");
    add_output(*gen, common);

    // check
    auto check = app.add_subcommand("check", "Report boundedness, or validate a witness");
    string witness_path;
    size_t check_k = 1;
    bool hamilton = false;
    check->add_option("instance", common.instance, "Instance file")->required();
    check->add_option("--witness", witness_path, "Sequence JSON (a solve or pipeline output also works)");
    check->add_option("--k", check_k, "Power for the witness");
    check->add_flag("--hamilton", hamilton, "Require a spanning cycle");
    add_output(*check, common);

    // solve
    auto solve = app.add_subcommand("solve", "Exact search");
    solve->require_subcommand(1);
    size_t solve_k = 2, solve_r = 3, max_interior = 8;
    string e1_text, e2_text, avoid_text;

    auto hp = solve->add_subcommand("hamilton-power", "Compatible k-th power of a Hamilton cycle");
    hp->add_option("instance", common.instance, "Instance file")->required();
    hp->add_option("--k", solve_k, "Power")->required();
    add_budget(*hp, common);
    add_threads(*hp, common);
    add_output(*hp, common);

    auto cf = solve->add_subcommand("clique-factor", "Compatible K_r-factor");
    cf->add_option("instance", common.instance, "Instance file")->required();
    cf->add_option("--r", solve_r, "Clique size")->required();
    add_budget(*cf, common);
    add_threads(*cf, common);
    add_output(*cf, common);

    auto cn = solve->add_subcommand("connect", "Shortest compatible power path between two ends");
    cn->add_option("instance", common.instance, "Instance file")->required();
    cn->add_option("--e1", e1_text, "First end, comma separated")->required();
    cn->add_option("--e2", e2_text, "Second end, comma separated")->required();
    cn->add_option("--avoid", avoid_text, "Forbidden vertices, comma separated");
    cn->add_option("--max-interior", max_interior, "Interior length cap");
    add_budget(*cn, common);
    add_output(*cn, common);

    // mates
    auto mates = app.add_subcommand("mates", "Enumerate the mates of a k-tuple");
    string e_text;
    optional<size_t> limit;
    mates->add_option("instance", common.instance, "Instance file")->required();
    mates->add_option("--e", e_text, "The tuple, comma separated")->required();
    mates->add_option("--limit", limit, "Report at most this many");
    add_output(*mates, common);

    // absorbers
    auto absorbers = app.add_subcommand("absorbers", "Enumerate absorbers for a vertex");
    size_t abs_v = 0, abs_k = 2;
    double beta = 0.0;
    absorbers->add_option("instance", common.instance, "Instance file")->required();
    absorbers->add_option("--v", abs_v, "Vertex to absorb")->required();
    absorbers->add_option("--k", abs_k, "Power")->required();
    absorbers->add_option("--beta", beta, "Mate density threshold for both ends");
    absorbers->add_option("--limit", limit, "Report at most this many");
    add_output(*absorbers, common);

    // pipeline
    auto pipeline = app.add_subcommand("pipeline", "Absorption pipeline for a compatible Hamilton k-th power");
    size_t pipe_k = 2;
    double gamma = 0.0;
    PipelineParams params;
    pipeline->add_option("instance", common.instance, "Instance file")->required();
    pipeline->add_option("--k", pipe_k, "Power")->required();
    pipeline->add_option("--gamma", gamma, "Degree slack above k/(k+1)");
    pipeline->add_option("--seed", common.seed, "Random seed");
    pipeline->add_option("--p", params.p, "Reservoir probability");
    pipeline->add_option("--tau", params.tau, "Leftover fraction for the cover");
    pipeline->add_option("--beta", params.beta, "Absorber mate density");
    pipeline->add_option("--min-segment", params.min_segment, "Shortest cover segment");
    pipeline->add_option("--max-interior", params.max_interior, "Connection interior cap");
    pipeline->add_option("--max-retries", params.max_retries, "Reservoir resampling cap");
    pipeline->add_option("--min-clique-extensions", params.min_clique_extensions, "Cover pre-filter threshold");
    pipeline->add_flag("--avoid-guard", params.enforce_avoid_guard, "Fail when the avoid set grows past the guard");
    add_output(*pipeline, common);

    // experiment
    auto experiment = app.add_subcommand("experiment", "Sweep instances and write one CSV row per solve");
    string models_text = "random", ns_text, ks_text = "2", bounds_text = "1", seeds_text = "0", problem = "hamilton-power";
    bool wall_time = false;
    experiment->add_option("--model", models_text, "Comma separated: barrier, random");
    experiment->add_option("--n", ns_text, "Vertex counts, e.g. 9,12 or 6-10")->required();
    experiment->add_option("--k", ks_text, "Powers");
    experiment->add_option("--bound", bounds_text, "Boundedness targets (random model)");
    experiment->add_option("--seed", seeds_text, "Seeds (random model)");
    experiment->add_option("--edge-prob", edge_prob, "Edge probability (random model)")->check(CLI::Range(0.0, 1.0));
    experiment->add_option("--problem", problem, "hamilton-power | clique-factor")
        ->check(CLI::IsMember({"hamilton-power", "clique-factor"}));
    experiment->add_flag("--wall-time", wall_time, "Fill the wall_ms column (output is then not reproducible)");
    add_budget(*experiment, common);
    add_output(*experiment, common);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*gen) {
            Instance inst;
            if (model == "barrier")
                inst = barrier_instance(gen_k, gen_n);
            else if (model == "random")
                inst = random_instance(gen_n, edge_prob, gen_bound, common.seed);
            else {
                inst = random_instance(gen_n, 1.0, 0, common.seed);
                inst.metadata = json{{"model", "complete"}, {"n", gen_n}};
            }
            emit(common, emit_instance(inst));
            return exit_ok;
        }

        if (*experiment) {
            ExperimentConfig config;
            config.models.clear();
            std::stringstream in(models_text);
            string m;
            while (std::getline(in, m, ',')) {
                if (m == "barrier")
                    config.models.push_back(ExperimentModel::Barrier);
                else if (m == "random")
                    config.models.push_back(ExperimentModel::Random);
                else
                    throw CLI::ValidationError("unknown model '" + m + "'");
            }
            config.problem = problem == "hamilton-power" ? ExperimentProblem::HamiltonPower : ExperimentProblem::CliqueFactor;
            config.ns = parse_ranges<size_t>(ns_text);
            config.ks = parse_ranges<size_t>(ks_text);
            config.bounds = parse_ranges<size_t>(bounds_text);
            config.seeds = parse_ranges<uint64_t>(seeds_text);
            config.edge_probability = edge_prob;
            config.budget = common.budget();
            config.wall_time = wall_time;
            if (common.output.empty())
                run_experiment(config, std::cout);
            else {
                std::ofstream out(common.output, std::ios::binary);
                if (! out)
                    throw Error(ErrorKind::Schema, "cannot write " + common.output);
                run_experiment(config, out);
            }
            return exit_ok;
        }

        auto inst = read_instance_file(common.instance);
        auto & g = inst.graph;
        auto & sys = inst.system;

        if (*check) {
            json report{{"n", g.order()}, {"edges", g.size()}, {"min_degree", g.min_degree()},
                {"boundedness", boundedness(sys)}, {"pairs", sys.pair_count()}};
            int code = exit_ok;
            if (! witness_path.empty()) {
                auto seq = read_sequence(witness_path);
                auto verdict = hamilton ? check_hamilton_power(g, sys, seq, check_k) : check_power_witness(g, sys, seq, check_k);
                report["witness"] = json{{"valid", verdict.valid}, {"reason", verdict.reason}};
                code = verdict.valid ? exit_ok : exit_rejected;
            }
            emit(common, dump(report));
            return code;
        }

        if (*hp) {
            auto out = solve_power_hamilton(g, sys, solve_k, common.options());
            revalidate(inst, out, solve_k, true);
            emit(common, dump(to_json(out)));
            return status_exit(out.status);
        }

        if (*cf) {
            auto out = solve_clique_factor(g, sys, solve_r, common.options());
            if (out.witness)
                for (auto & block : factor_blocks(*out.witness, solve_r))
                    if (! is_compatible_clique(g, sys, block))
                        throw std::logic_error("solver returned an incompatible clique");
            auto j = to_json(out);
            if (out.witness)
                j["cliques"] = factor_blocks(*out.witness, solve_r);
            emit(common, dump(j));
            return status_exit(out.status);
        }

        if (*cn) {
            auto e1 = parse_list(e1_text), e2 = parse_list(e2_text), avoid = parse_list(avoid_text);
            check_tuple(inst, e1, "--e1");
            check_tuple(inst, e2, "--e2");
            check_tuple(inst, avoid, "--avoid");
            if (e1.size() != e2.size() || e1.empty())
                throw Error(ErrorKind::BadParams, "ends must be non-empty and of equal length");
            auto out = connect_ends(g, sys, e1, e2, avoid, max_interior, common.budget());
            revalidate(inst, out, e1.size(), false);
            auto j = to_json(out);
            if (out.witness)
                j["interior"] = out.witness->vertices.size() - e1.size() - e2.size();
            emit(common, dump(j));
            return status_exit(out.status);
        }

        if (*mates) {
            auto e = parse_list(e_text);
            check_tuple(inst, e, "--e");
            auto list = enumerate_mates(g, sys, e, limit);
            for (auto & f : list) {
                BaseSequence seq{e, SequenceKind::Path};
                seq.vertices.insert(seq.vertices.end(), f.begin(), f.end());
                if (! check_power_witness(g, sys, seq, e.size()).valid)
                    throw std::logic_error("mate failed validation");
            }
            emit(common, dump(json{{"tuple", e}, {"count", list.size()}, {"complete", ! limit || list.size() < *limit},
                        {"mates", list}}));
            return exit_ok;
        }

        if (*absorbers) {
            if (abs_v >= g.order())
                throw Error(ErrorKind::VertexOutOfRange, "--v names vertex " + std::to_string(abs_v));
            auto list = enumerate_absorbers(g, sys, Vertex(abs_v), abs_k, beta, limit);
            json out = json::array();
            for (auto & a : list) {
                if (! check_power_witness(g, sys, a.base, abs_k).valid
                        || ! check_power_witness(g, sys, absorb(a, Vertex(abs_v)), abs_k).valid)
                    throw std::logic_error("absorber failed validation");
                out.push_back(a.base.vertices);
            }
            emit(common, dump(json{{"vertex", abs_v}, {"k", abs_k}, {"beta", beta}, {"count", list.size()},
                        {"absorbers", out}}));
            return exit_ok;
        }

        if (*pipeline) {
            auto report = run_pipeline(g, sys, pipe_k, gamma, params, common.seed);
            if (report.certificate && ! check_hamilton_power(g, sys, *report.certificate, pipe_k).valid)
                throw std::logic_error("pipeline certificate failed validation");
            emit(common, dump(to_json(report)));
            return report.succeeded() ? exit_ok : exit_rejected;
        }
    }
    catch (const CLI::ValidationError & e) {
        cerr << "ihs: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const Error & e) {
        cerr << "ihs: " << e.what() << "\n";
        return exit_usage;
    }

    return exit_usage;
}
