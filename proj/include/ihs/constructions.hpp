#ifndef IHS_CONSTRUCTIONS_HPP
#define IHS_CONSTRUCTIONS_HPP 1

#include <ihs/graph.hpp>
#include <ihs/incompat.hpp>

#include <utility>
#include <vector>

namespace ihs
{
    /// Parameters of the space-barrier family: a complete (k+1)-partite graph
    /// with parts of sizes n/(k+1)+1, n/(k+1)-1, n/(k+1), ..., plus a bipartite
    /// spanning graph inside each part.
    struct BarrierSpec
    {
        std::size_t k = 2;
        std::size_t n = 0;
        std::vector<std::size_t> part_sizes;
        /// inside_graphs[i] is an edge list over local ids 0..part_sizes[i]-1.
        std::vector<std::vector<std::pair<Vertex, Vertex>>> inside_graphs;
        /// Realised inside-part degree range; filled by build_space_barrier.
        std::size_t inside_min_degree = 0;
        std::size_t mu_n = 0;
    };

    /// Part sizes plus the default inside graphs: a Hamilton path of the part
    /// when its size is odd (or below 3), a Hamilton cycle when even.
    auto default_barrier_spec(std::size_t k, std::size_t n) -> BarrierSpec;

    /// As default_barrier_spec, with every inside graph empty.
    auto empty_barrier_spec(std::size_t k, std::size_t n) -> BarrierSpec;

    struct BarrierInstance
    {
        Graph graph;
        IncompatibilitySystem system;
        BarrierSpec spec;               ///< with the realised degree range
        std::vector<std::size_t> part;  ///< part index of each vertex

        auto part_vertices(std::size_t i) const -> std::vector<Vertex>;
    };

    /// Parts are laid out consecutively: V_1 gets ids 0..|V_1|-1 and so on.
    /// For v in V_i and an inside edge uw of V_j (j != i), {vu, vw} is in F_v.
    /// Throws BadDivisibility if (k+1) does not divide n, BadParams if a part
    /// would be smaller than 3 or the part sizes are off, NotBipartite for a
    /// non-bipartite inside graph.
    auto build_space_barrier(const BarrierSpec & spec) -> BarrierInstance;
}

#endif
