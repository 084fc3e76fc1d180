#ifndef IHS_GRAPH_HPP
#define IHS_GRAPH_HPP 1

#include <ihs/bitset.hpp>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ihs
{
    using Vertex = std::uint32_t;
    using EdgeId = std::uint32_t;

    inline constexpr EdgeId no_edge = ~EdgeId{0};

    struct Edge
    {
        Vertex u; ///< always u < v
        Vertex v;

        friend auto operator<=>(const Edge &, const Edge &) = default;
    };

    /// Undirected simple graph on vertices 0..n-1. Edges are sorted
    /// lexicographically and their position in that order is the canonical
    /// edge id. Immutable once built.
    class Graph
    {
        public:
            Graph() = default;

            /// Canonicalises the edge list: each pair is ordered, duplicates
            /// collapse. Throws InvalidEdge on loops, VertexOutOfRange on
            /// endpoints >= n.
            Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edge_list);

            auto order() const noexcept -> std::size_t { return _n; }
            auto size() const noexcept -> std::size_t { return _edges.size(); }

            auto edges() const noexcept -> const std::vector<Edge> & { return _edges; }
            auto edge(EdgeId e) const -> const Edge & { return _edges.at(e); }

            auto adjacent(Vertex u, Vertex v) const noexcept -> bool { return _adjacency[u].test(v); }
            auto neighbours(Vertex v) const noexcept -> const Bitset & { return _adjacency[v]; }
            auto degree(Vertex v) const noexcept -> std::size_t { return _adjacency[v].count(); }
            auto min_degree() const noexcept -> std::size_t;

            /// Canonical id of {u, v}, or no_edge if absent (or u == v).
            auto edge_id(Vertex u, Vertex v) const noexcept -> EdgeId
            {
                return u < _n && v < _n ? _edge_index[u * _n + v] : no_edge;
            }

            /// The endpoint of e other than v; v must be an endpoint.
            auto other_end(EdgeId e, Vertex v) const -> Vertex
            {
                auto & ed = _edges.at(e);
                return ed.u == v ? ed.v : ed.u;
            }

            /// Subgraph induced on keep (vertex ids are remapped to 0..|keep|-1 in
            /// the given order).
            auto induced(std::span<const Vertex> keep) const -> Graph;

            auto edge_list() const -> std::vector<std::pair<Vertex, Vertex>>;

            friend auto operator==(const Graph & a, const Graph & b) -> bool
            {
                return a._n == b._n && a._edges == b._edges;
            }

        private:
            std::size_t _n = 0;
            std::vector<Edge> _edges;
            std::vector<Bitset> _adjacency;
            std::vector<EdgeId> _edge_index;
    };

    auto complete_graph(std::size_t n) -> Graph;

    enum class SequenceKind
    {
        Path,
        Cycle
    };

    /// Ordered base path or base cycle of a power structure.
    struct BaseSequence
    {
        std::vector<Vertex> vertices;
        SequenceKind kind = SequenceKind::Path;

        friend auto operator==(const BaseSequence &, const BaseSequence &) -> bool = default;
    };

    /// Distance between positions i and j along a sequence of length len;
    /// wraps around for cycles.
    auto sequence_distance(std::size_t i, std::size_t j, std::size_t len, SequenceKind kind) noexcept -> std::size_t;

    /// All pairs of base vertices at (cyclic) distance 1..k, as canonical
    /// vertex pairs (u < v), sorted. Throws InvalidSequence on repeated
    /// vertices, BadParams if k == 0 or the base is shorter than 2.
    auto power_edges(const BaseSequence & base, std::size_t k) -> std::vector<Edge>;
}

#endif
