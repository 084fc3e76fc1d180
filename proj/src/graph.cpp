#include <ihs/graph.hpp>
#include <ihs/error.hpp>

#include <algorithm>
#include <string>

using namespace ihs;

using std::pair;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

Graph::Graph(size_t n, std::span<const pair<Vertex, Vertex>> edge_list) :
    _n(n),
    _adjacency(n, Bitset(n)),
    _edge_index(n * n, no_edge)
{
    _edges.reserve(edge_list.size());
    for (auto [a, b] : edge_list) {
        if (a >= n || b >= n)
            throw Error(ErrorKind::VertexOutOfRange, "edge (" + to_string(a) + ", " + to_string(b) +
                    ") has an endpoint >= n = " + to_string(n));
        if (a == b)
            throw Error(ErrorKind::InvalidEdge, "loop at vertex " + to_string(a));
        _edges.push_back(Edge{std::min(a, b), std::max(a, b)});
    }

    std::sort(_edges.begin(), _edges.end());
    _edges.erase(std::unique(_edges.begin(), _edges.end()), _edges.end());

    for (EdgeId e = 0; e < _edges.size(); ++e) {
        auto [u, v] = _edges[e];
        _adjacency[u].set(v);
        _adjacency[v].set(u);
        _edge_index[u * n + v] = e;
        _edge_index[v * n + u] = e;
    }
}

auto Graph::min_degree() const noexcept -> size_t
{
    if (_n == 0)
        return 0;
    size_t result = _n;
    for (Vertex v = 0; v < _n; ++v)
        result = std::min(result, degree(v));
    return result;
}

auto Graph::induced(std::span<const Vertex> keep) const -> Graph
{
    vector<Vertex> position(_n, ~Vertex{0});
    for (size_t i = 0; i < keep.size(); ++i)
        position.at(keep[i]) = Vertex(i);

    vector<pair<Vertex, Vertex>> kept;
    for (auto & [u, v] : _edges)
        if (position[u] != ~Vertex{0} && position[v] != ~Vertex{0})
            kept.emplace_back(position[u], position[v]);
    return Graph(keep.size(), kept);
}

auto Graph::edge_list() const -> vector<pair<Vertex, Vertex>>
{
    vector<pair<Vertex, Vertex>> result;
    result.reserve(_edges.size());
    for (auto & [u, v] : _edges)
        result.emplace_back(u, v);
    return result;
}

auto ihs::complete_graph(size_t n) -> Graph
{
    vector<pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph(n, edges);
}

auto ihs::sequence_distance(size_t i, size_t j, size_t len, SequenceKind kind) noexcept -> size_t
{
    size_t d = i > j ? i - j : j - i;
    if (kind == SequenceKind::Cycle)
        d = std::min(d, len - d);
    return d;
}

auto ihs::power_edges(const BaseSequence & base, size_t k) -> vector<Edge>
{
    auto & seq = base.vertices;
    if (k == 0)
        throw Error(ErrorKind::BadParams, "power must be at least 1");
    if (seq.size() < 2)
        throw Error(ErrorKind::BadParams, "base sequence needs at least 2 vertices");

    auto sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorKind::InvalidSequence, "repeated vertex in base sequence");

    vector<Edge> result;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j)
            if (sequence_distance(i, j, seq.size(), base.kind) <= k)
                result.push_back(Edge{std::min(seq[i], seq[j]), std::max(seq[i], seq[j])});

    std::sort(result.begin(), result.end());
    return result;
}
