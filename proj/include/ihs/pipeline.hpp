#ifndef IHS_PIPELINE_HPP
#define IHS_PIPELINE_HPP 1

#include <ihs/graph.hpp>
#include <ihs/incompat.hpp>
#include <ihs/solver.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ihs
{
    /// How much of the absorber and mate properties of a reservoir is checked.
    struct ReservoirChecks
    {
        /// Vertices sampled for the disjoint-absorber property.
        std::size_t absorber_samples = 3;
        /// k-tuples sampled for the mate-retention property.
        std::size_t mate_samples = 3;
        /// Mate threshold (absolute) for a tuple to be eligible for sampling,
        /// and for an absorber to count as robust.
        std::uint64_t min_mates = 0;
    };

    struct Reservoir
    {
        std::vector<Vertex> vertices;
        double p = 0.0;
        std::size_t retries_used = 0;
    };

    /// Bernoulli(p) vertex sample satisfying:
    ///   A1  pn/2 <= |R| <= 3pn/2 (inclusive, and R non-empty)
    ///   A2  d_R(v) >= (k/(k+1) + gamma/2)|R| for every v
    ///   A3  sampled v have at least p^{2k}/2 |A(v)| disjoint absorbers in R
    ///   A4  sampled k-tuples with many mates keep p^k/2 of them inside R
    /// Resamples up to max_retries times; then throws ReservoirFailure naming
    /// the last violated property.
    auto sample_reservoir(const Graph & g, const IncompatibilitySystem & sys, double p, double gamma, std::size_t k,
            std::uint64_t seed, std::size_t max_retries, const ReservoirChecks & checks = {}) -> Reservoir;

    /// Greedily picked vertex-disjoint absorbers for v inside allowed, each end
    /// having at least min_mates mates in mate_pool (all of V when null).
    auto greedy_disjoint_absorbers(const Graph & g, const IncompatibilitySystem & sys, Vertex v, std::size_t k,
            std::uint64_t min_mates, const Bitset & allowed, const Bitset * mate_pool = nullptr,
            std::size_t max_count = SIZE_MAX) -> std::vector<PowerPathWitness>;

    struct PipelineParams
    {
        double p = 0.1;
        double tau = 0.1;
        /// Shortest accepted cover segment; 3(k+1) when unset.
        std::optional<std::size_t> min_segment;
        /// Interior cap for every connection; 3k+6 when unset.
        std::optional<std::size_t> max_interior;
        /// Absorbers placed outside the reservoir need beta * n^k mates at
        /// each end.
        double beta = 0.05;
        /// Mates inside the reservoir required at each end of leftover
        /// absorbers and cover segments.
        std::uint64_t reservoir_min_mates = 1;
        std::size_t max_retries = 100;
        ReservoirChecks checks;
        std::size_t greedy_restarts = 16;
        /// Auxiliary-hypergraph style pre-filter for cover extension; 0 is off.
        std::size_t min_clique_extensions = 0;
        /// Fail a connection stage when the avoid set reaches
        /// min(gamma n / 2, beta n / 2).
        bool enforce_avoid_guard = false;
        /// Per-connection search budget.
        Budget connect_budget{2'000'000, 0.0};
        /// Budget of each attempt to thread a leftover vertex through a joint.
        Budget rest_budget{200'000, 0.0};
    };

    /// Checks the parameter ranges; throws BadParams.
    auto validate(const PipelineParams & params) -> void;

    struct StageRecord
    {
        std::string stage;
        /// Vertices this stage added to the structure.
        std::vector<Vertex> vertices;
        std::string detail;
    };

    struct PipelineFailure
    {
        std::string stage;
        std::string reason;
    };

    struct PipelineReport
    {
        std::size_t k = 0;
        double gamma = 0.0;
        std::uint64_t seed = 0;
        std::size_t mu_bound = 0;
        PipelineParams params;
        std::vector<StageRecord> stages;
        std::optional<BaseSequence> certificate;
        std::optional<PipelineFailure> failure;

        auto succeeded() const noexcept -> bool { return certificate.has_value(); }
    };

    /// Builds a compatible k-th power of a Hamilton cycle by reservoir,
    /// absorbers, almost-cover, connections through the reservoir, and final
    /// absorption. Stage failures are reported in the result; any
    /// certificate has passed check_hamilton_power.
    auto run_pipeline(const Graph & g, const IncompatibilitySystem & sys, std::size_t k, double gamma,
            const PipelineParams & params, std::uint64_t seed) -> PipelineReport;
}

#endif
