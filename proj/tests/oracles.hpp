#ifndef IHS_TESTS_ORACLES_HPP
#define IHS_TESTS_ORACLES_HPP 1

#include <ihs/graph.hpp>
#include <ihs/incompat.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

// Brute-force reference implementations. They use only the edge list of the
// graph and the pair list of the system, never the library's search code.
namespace oracle
{
    using ihs::Vertex;
    using VPair = std::pair<Vertex, Vertex>;

    struct Host
    {
        std::size_t n = 0;
        std::set<VPair> edges;
        /// (v, {a, b}, {c, d}) with both edges normalised and the pair sorted.
        std::set<std::pair<Vertex, std::pair<VPair, VPair>>> forbidden;
    };

    auto norm(Vertex a, Vertex b) -> VPair;

    auto host(const ihs::Graph & g, const ihs::IncompatibilitySystem & sys) -> Host;

    auto has_edge(const Host & h, Vertex a, Vertex b) -> bool;

    /// Do the edges all exist, and are no two of them forbidden where they meet?
    auto compatible(const Host & h, const std::vector<VPair> & edges) -> bool;

    /// Pairs at (cyclic) distance 1..k along seq.
    auto power(const std::vector<Vertex> & seq, std::size_t k, bool cycle) -> std::vector<VPair>;

    auto power_ok(const Host & h, const std::vector<Vertex> & seq, std::size_t k, bool cycle) -> bool;

    /// Every permutation with vertex 0 first.
    auto hamilton_power_exists(const Host & h, std::size_t k) -> bool;

    /// The same question by depth-first extension from vertex 0, pruning
    /// prefixes whose path power is already incompatible. Usable up to n = 15.
    auto hamilton_power_exists_pruned(const Host & h, std::size_t k) -> bool;

    auto clique_factor_exists(const Host & h, std::size_t r) -> bool;

    /// All ordered k-tuples of distinct vertices outside e forming a
    /// compatible power path with e.
    auto mates(const Host & h, const std::vector<Vertex> & e) -> std::vector<std::vector<Vertex>>;

    auto absorber_count(const Host & h, Vertex v, std::size_t k) -> std::uint64_t;

    /// Injective maps of the pattern with a compatible image.
    auto copies(const Host & h, std::size_t pattern_n, const std::vector<VPair> & pattern_edges,
            const std::vector<std::vector<Vertex>> * parts = nullptr) -> std::uint64_t;

    /// Smallest interior length (up to max) connecting e1 and e2 outside avoid.
    auto shortest_connection(const Host & h, const std::vector<Vertex> & e1, const std::vector<Vertex> & e2,
            const std::vector<Vertex> & avoid, std::size_t max) -> std::optional<std::size_t>;

    /// Boundedness recomputed from the pair list.
    auto boundedness(const Host & h) -> std::size_t;
}

#endif
