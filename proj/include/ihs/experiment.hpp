#ifndef IHS_EXPERIMENT_HPP
#define IHS_EXPERIMENT_HPP 1

#include <ihs/embedding.hpp>
#include <ihs/io.hpp>
#include <ihs/solver.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ihs
{
    inline constexpr const char * experiment_csv_header =
        "schema_version,instance_id,model,problem,n,k,bound,min_degree,status,witness_length,nodes_expanded,wall_ms,seed";

    enum class ExperimentModel
    {
        Barrier,
        Random
    };

    enum class ExperimentProblem
    {
        HamiltonPower,
        CliqueFactor
    };

    struct ExperimentConfig
    {
        std::vector<ExperimentModel> models{ExperimentModel::Random};
        ExperimentProblem problem = ExperimentProblem::HamiltonPower;
        std::vector<std::size_t> ns;
        std::vector<std::size_t> ks{2};
        /// Boundedness targets for the random model; the barrier reports its
        /// own boundedness.
        std::vector<std::size_t> bounds{1};
        /// Seeds for the random model; the barrier is deterministic and gets
        /// one row per (n, k).
        std::vector<std::uint64_t> seeds{0};
        /// Edge probability of the random host graph; 1 gives K_n.
        double edge_probability = 1.0;
        /// Per-instance budget; must bound nodes or seconds.
        Budget budget;
        /// Fill the wall_ms column; off keeps the output byte-identical across
        /// runs.
        bool wall_time = false;
    };

    struct ExperimentRow
    {
        std::string instance_id;
        std::string model;
        std::string problem;
        std::size_t n = 0;
        std::size_t k = 0;
        std::size_t bound = 0;
        std::size_t min_degree = 0;
        SolveStatus status = SolveStatus::Unsat;
        std::size_t witness_length = 0;
        std::uint64_t nodes_expanded = 0;
        std::optional<double> wall_ms;
        std::uint64_t seed = 0;
    };

    auto to_csv(const ExperimentRow & row) -> std::string;

    /// G(n, q) with a random incompatibility system of the given boundedness.
    auto random_instance(std::size_t n, double edge_probability, std::size_t bound, std::uint64_t seed) -> Instance;

    /// Barrier instance with its spec echoed into the metadata.
    auto barrier_instance(std::size_t k, std::size_t n) -> Instance;

    /// Runs the sweep in model, n, k, bound, seed order, writing the header and
    /// one flushed line per instance. Combinations a model cannot build (n not
    /// divisible by k+1 for the barrier, say) are skipped. Throws BadParams for
    /// an unbounded budget.
    auto run_experiment(const ExperimentConfig & config, std::ostream & out) -> std::vector<ExperimentRow>;
}

#endif
