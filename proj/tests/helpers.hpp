#ifndef IHS_TESTS_HELPERS_HPP
#define IHS_TESTS_HELPERS_HPP 1

#include <ihs/graph.hpp>
#include <ihs/incompat.hpp>

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace helpers
{
    using ihs::Vertex;

    inline auto make_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) -> ihs::Graph
    {
        std::vector<std::pair<Vertex, Vertex>> list(edges);
        return ihs::Graph(n, list);
    }

    inline auto random_graph(std::size_t n, double q, std::mt19937_64 & rng) -> ihs::Graph
    {
        std::bernoulli_distribution coin(q);
        std::vector<std::pair<Vertex, Vertex>> list;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (coin(rng))
                    list.emplace_back(u, v);
        return ihs::Graph(n, list);
    }

    inline auto ids(const ihs::Graph & g, const std::vector<ihs::Edge> & edges) -> std::vector<ihs::EdgeId>
    {
        std::vector<ihs::EdgeId> out;
        for (auto & e : edges)
            out.push_back(g.edge_id(e.u, e.v));
        return out;
    }

    inline auto all_ids(const ihs::Graph & g) -> std::vector<ihs::EdgeId>
    {
        std::vector<ihs::EdgeId> out(g.size());
        for (ihs::EdgeId e = 0; e < g.size(); ++e)
            out[e] = e;
        return out;
    }

    /// Adds {va, vb} to F_v by endpoint.
    inline auto forbid(const ihs::Graph & g, ihs::IncompatibilitySystem & sys, Vertex v, Vertex a, Vertex b) -> bool
    {
        return sys.add_pair(g, v, g.edge_id(v, a), g.edge_id(v, b));
    }
}

#endif
