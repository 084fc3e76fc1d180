#include <ihs/constructions.hpp>
#include <ihs/error.hpp>

#include <algorithm>
#include <queue>
#include <string>

using namespace ihs;

using std::pair;
using std::size_t;
using std::to_string;
using std::vector;

namespace
{
    auto barrier_part_sizes(size_t k, size_t n) -> vector<size_t>
    {
        if (k == 0)
            throw Error(ErrorKind::BadParams, "k must be at least 1");
        if (n % (k + 1) != 0)
            throw Error(ErrorKind::BadDivisibility, "n = " + to_string(n) + " is not divisible by k+1 = " + to_string(k + 1));
        size_t m = n / (k + 1);
        if (m < 3)
            throw Error(ErrorKind::BadParams, "n/(k+1) must be at least 3");
        vector<size_t> sizes(k + 1, m);
        sizes[0] = m + 1;
        sizes[1] = m - 1;
        return sizes;
    }

    auto default_inside(size_t size) -> vector<pair<Vertex, Vertex>>
    {
        vector<pair<Vertex, Vertex>> edges;
        for (Vertex i = 0; i + 1 < size; ++i)
            edges.emplace_back(i, i + 1);
        if (size % 2 == 0 && size >= 4)
            edges.emplace_back(Vertex(size - 1), 0);
        return edges;
    }

    auto is_bipartite(const Graph & g) -> bool
    {
        vector<int> side(g.order(), -1);
        for (Vertex s = 0; s < g.order(); ++s) {
            if (side[s] != -1)
                continue;
            side[s] = 0;
            std::queue<Vertex> todo;
            todo.push(s);
            while (! todo.empty()) {
                auto v = todo.front();
                todo.pop();
                bool ok = true;
                g.neighbours(v).for_each([&](size_t w) {
                    if (side[w] == -1) {
                        side[w] = 1 - side[v];
                        todo.push(Vertex(w));
                    }
                    else if (side[w] == side[v])
                        ok = false;
                });
                if (! ok)
                    return false;
            }
        }
        return true;
    }
}

auto ihs::default_barrier_spec(size_t k, size_t n) -> BarrierSpec
{
    BarrierSpec spec;
    spec.k = k;
    spec.n = n;
    spec.part_sizes = barrier_part_sizes(k, n);
    for (auto s : spec.part_sizes)
        spec.inside_graphs.push_back(default_inside(s));
    return spec;
}

auto ihs::empty_barrier_spec(size_t k, size_t n) -> BarrierSpec
{
    auto spec = default_barrier_spec(k, n);
    for (auto & inside : spec.inside_graphs)
        inside.clear();
    return spec;
}

auto BarrierInstance::part_vertices(size_t i) const -> vector<Vertex>
{
    vector<Vertex> result;
    for (Vertex v = 0; v < part.size(); ++v)
        if (part[v] == i)
            result.push_back(v);
    return result;
}

auto ihs::build_space_barrier(const BarrierSpec & spec) -> BarrierInstance
{
    auto expected = barrier_part_sizes(spec.k, spec.n);
    if (spec.part_sizes != expected)
        throw Error(ErrorKind::BadParams, "part sizes do not match the barrier layout for this k and n");
    if (spec.inside_graphs.size() != spec.part_sizes.size())
        throw Error(ErrorKind::BadParams, "need one inside graph per part");

    BarrierInstance result;
    result.spec = spec;

    vector<Vertex> offset;
    Vertex next = 0;
    for (size_t i = 0; i < spec.part_sizes.size(); ++i) {
        offset.push_back(next);
        for (size_t j = 0; j < spec.part_sizes[i]; ++j)
            result.part.push_back(i);
        next += Vertex(spec.part_sizes[i]);
    }

    vector<pair<Vertex, Vertex>> edges;
    vector<vector<pair<Vertex, Vertex>>> inside_global(spec.part_sizes.size());
    size_t min_deg = spec.n, max_deg = 0;
    for (size_t i = 0; i < spec.part_sizes.size(); ++i) {
        Graph local(spec.part_sizes[i], spec.inside_graphs[i]);
        if (! is_bipartite(local))
            throw Error(ErrorKind::NotBipartite, "inside graph of part " + to_string(i + 1) + " is not bipartite");
        min_deg = std::min(min_deg, local.min_degree());
        for (Vertex v = 0; v < local.order(); ++v)
            max_deg = std::max(max_deg, local.degree(v));
        for (auto & [a, b] : local.edges()) {
            inside_global[i].emplace_back(offset[i] + a, offset[i] + b);
            edges.push_back(inside_global[i].back());
        }
    }
    result.spec.inside_min_degree = min_deg;
    result.spec.mu_n = max_deg;

    for (Vertex u = 0; u < spec.n; ++u)
        for (Vertex v = u + 1; v < spec.n; ++v)
            if (result.part[u] != result.part[v])
                edges.emplace_back(u, v);

    result.graph = Graph(spec.n, edges);
    result.system = IncompatibilitySystem(result.graph);
    auto & g = result.graph;
    for (Vertex v = 0; v < spec.n; ++v)
        for (size_t j = 0; j < inside_global.size(); ++j) {
            if (j == result.part[v])
                continue;
            for (auto & [u, w] : inside_global[j])
                result.system.add_pair(g, v, g.edge_id(v, u), g.edge_id(v, w));
        }
    return result;
}
