#include <ihs/experiment.hpp>
#include <ihs/constructions.hpp>
#include <ihs/error.hpp>

#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>

using namespace ihs;

using nlohmann::json;
using std::optional;
using std::pair;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    auto model_name(ExperimentModel m) -> string
    {
        return m == ExperimentModel::Barrier ? "barrier" : "random";
    }

    auto problem_name(ExperimentProblem p) -> string
    {
        return p == ExperimentProblem::HamiltonPower ? "hamilton-power" : "clique-factor";
    }

    auto format_ms(double ms) -> string
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f", ms);
        return buf;
    }
}

auto ihs::to_csv(const ExperimentRow & row) -> string
{
    string line = "1," + row.instance_id + "," + row.model + "," + row.problem + "," + to_string(row.n) + "," +
        to_string(row.k) + "," + to_string(row.bound) + "," + to_string(row.min_degree) + "," +
        to_string(row.status) + "," + to_string(row.witness_length) + "," + to_string(row.nodes_expanded) + ",";
    if (row.wall_ms)
        line += format_ms(*row.wall_ms);
    line += "," + to_string(row.seed);
    return line;
}

auto ihs::random_instance(size_t n, double edge_probability, size_t bound, std::uint64_t seed) -> Instance
{
    if (edge_probability < 0.0 || edge_probability > 1.0)
        throw Error(ErrorKind::BadParams, "edge probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(edge_probability);
    vector<pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (edge_probability >= 1.0 || coin(rng))
                edges.emplace_back(u, v);

    Instance result;
    result.graph = Graph(n, edges);
    result.system = gen_random_system(result.graph, bound, seed);
    result.metadata = json{{"model", "random"}, {"n", n}, {"edge_probability", edge_probability},
        {"bound", bound}, {"seed", seed}};
    return result;
}

auto ihs::barrier_instance(size_t k, size_t n) -> Instance
{
    auto barrier = build_space_barrier(default_barrier_spec(k, n));
    auto & spec = barrier.spec;
    json inside = json::array();
    for (auto & edges : spec.inside_graphs) {
        json list = json::array();
        for (auto & [u, v] : edges)
            list.push_back(json::array({u, v}));
        inside.push_back(list);
    }

    Instance result;
    result.graph = std::move(barrier.graph);
    result.system = std::move(barrier.system);
    result.metadata = json{{"model", "barrier"}, {"k", k}, {"n", n}, {"part_sizes", spec.part_sizes},
        {"inside_graphs", inside}, {"inside_min_degree", spec.inside_min_degree}, {"mu_n", spec.mu_n}};
    return result;
}

auto ihs::run_experiment(const ExperimentConfig & config, std::ostream & out) -> vector<ExperimentRow>
{
    if (config.budget.max_nodes == 0 && config.budget.max_seconds <= 0.0)
        throw Error(ErrorKind::BadParams, "an experiment needs a node or time budget");

    vector<ExperimentRow> rows;
    out << experiment_csv_header << '\n' << std::flush;

    auto run_one = [&] (const Instance & inst, ExperimentModel model, size_t k, std::uint64_t seed,
            const string & id) {
        ExperimentRow row;
        row.instance_id = id;
        row.model = model_name(model);
        row.problem = problem_name(config.problem);
        row.n = inst.graph.order();
        row.k = k;
        row.bound = boundedness(inst.system);
        row.min_degree = inst.graph.min_degree();
        row.seed = seed;

        SolveOptions options{config.budget, 1};
        auto start = std::chrono::steady_clock::now();
        SolveOutcome outcome;
        if (config.problem == ExperimentProblem::HamiltonPower)
            outcome = solve_power_hamilton(inst.graph, inst.system, k, options);
        else
            outcome = solve_clique_factor(inst.graph, inst.system, k + 1, options);
        auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        row.status = outcome.status;
        row.witness_length = outcome.witness ? outcome.witness->vertices.size() : 0;
        row.nodes_expanded = outcome.nodes_expanded;
        if (config.wall_time)
            row.wall_ms = elapsed;
        out << to_csv(row) << '\n' << std::flush;
        rows.push_back(std::move(row));
    };

    for (auto model : config.models)
        for (auto n : config.ns)
            for (auto k : config.ks) {
                if (model == ExperimentModel::Barrier) {
                    optional<Instance> inst;
                    try {
                        inst = barrier_instance(k, n);
                    }
                    catch (const Error &) {
                        continue;
                    }
                    if (config.problem == ExperimentProblem::CliqueFactor && n % (k + 1) != 0)
                        continue;
                    run_one(*inst, model, k, 0, "barrier-n" + to_string(n) + "-k" + to_string(k));
                    continue;
                }
                if (k == 0 || n < std::max<size_t>(k + 1, 2))
                    continue;
                if (config.problem == ExperimentProblem::CliqueFactor && n % (k + 1) != 0)
                    continue;
                for (auto bound : config.bounds)
                    for (auto seed : config.seeds) {
                        auto inst = random_instance(n, config.edge_probability, bound, seed);
                        run_one(inst, model, k, seed, "random-n" + to_string(n) + "-k" + to_string(k) + "-b" +
                                to_string(bound) + "-s" + to_string(seed));
                    }
            }
    return rows;
}
