#include <ihs/incompat.hpp>
#include <ihs/error.hpp>

#include <algorithm>
#include <random>
#include <string>

using namespace ihs;

using std::optional;
using std::pair;
using std::size_t;
using std::to_string;
using std::vector;

IncompatibilitySystem::IncompatibilitySystem(const Graph & g) :
    _n(g.order()),
    _rows(_n * _n, Bitset(_n)),
    _counts(_n * _n, 0)
{
}

auto IncompatibilitySystem::check_pair(const Graph & g, Vertex v, EdgeId e1, EdgeId e2) const -> pair<Vertex, Vertex>
{
    if (g.order() != _n)
        throw Error(ErrorKind::BadParams, "system and graph disagree on vertex count");
    if (v >= _n)
        throw Error(ErrorKind::VertexOutOfRange, "vertex " + to_string(v));
    if (e1 >= g.size() || e2 >= g.size())
        throw Error(ErrorKind::EdgeOutOfRange, "edge id " + to_string(std::max(e1, e2)));
    if (e1 == e2)
        throw Error(ErrorKind::InvalidPair, "pair of identical edges at vertex " + to_string(v));

    auto & a = g.edge(e1);
    auto & b = g.edge(e2);
    if ((a.u != v && a.v != v) || (b.u != v && b.v != v))
        throw Error(ErrorKind::InvalidPair, "edges " + to_string(e1) + " and " + to_string(e2) +
                " do not both meet vertex " + to_string(v));
    // distinct edges of a simple graph sharing v share nothing else
    return {g.other_end(e1, v), g.other_end(e2, v)};
}

auto IncompatibilitySystem::add_pair(const Graph & g, Vertex v, EdgeId e1, EdgeId e2) -> bool
{
    auto [x, y] = check_pair(g, v, e1, e2);
    auto & row = _rows[v * _n + x];
    if (row.test(y))
        return false;
    row.set(y);
    _rows[v * _n + y].set(x);
    ++_counts[v * _n + x];
    ++_counts[v * _n + y];
    ++_pair_count;
    return true;
}

auto IncompatibilitySystem::remove_pair(const Graph & g, Vertex v, EdgeId e1, EdgeId e2) -> bool
{
    auto [x, y] = check_pair(g, v, e1, e2);
    auto & row = _rows[v * _n + x];
    if (! row.test(y))
        return false;
    row.reset(y);
    _rows[v * _n + y].reset(x);
    --_counts[v * _n + x];
    --_counts[v * _n + y];
    --_pair_count;
    return true;
}

auto IncompatibilitySystem::pairs_at(const Graph & g, Vertex v) const -> vector<EdgePair>
{
    vector<EdgePair> result;
    if (_pair_count == 0)
        return result;
    g.neighbours(v).for_each([&](size_t x) {
        _rows[v * _n + x].for_each([&](size_t y) {
            if (x < y) {
                auto a = g.edge_id(v, Vertex(x)), b = g.edge_id(v, Vertex(y));
                result.push_back(EdgePair{std::min(a, b), std::max(a, b)});
            }
        });
    });
    std::sort(result.begin(), result.end());
    return result;
}

auto ihs::boundedness(const IncompatibilitySystem & sys) -> size_t
{
    size_t result = 0;
    for (Vertex v = 0; v < sys.order(); ++v)
        for (Vertex x = 0; x < sys.order(); ++x)
            result = std::max(result, sys.local_count(v, x));
    return result;
}

auto ihs::is_compatible(const Graph & g, const IncompatibilitySystem & sys,
        std::span<const EdgeId> subgraph_edges) -> CompatibilityVerdict
{
    vector<vector<EdgeId>> incident(g.order());
    for (auto e : subgraph_edges) {
        if (e >= g.size())
            throw Error(ErrorKind::EdgeOutOfRange, "edge id " + to_string(e));
        incident[g.edge(e).u].push_back(e);
        incident[g.edge(e).v].push_back(e);
    }

    for (Vertex v = 0; v < g.order(); ++v) {
        auto & at = incident[v];
        std::sort(at.begin(), at.end());
        at.erase(std::unique(at.begin(), at.end()), at.end());
        for (size_t i = 0; i < at.size(); ++i)
            for (size_t j = i + 1; j < at.size(); ++j)
                if (sys.incompatible_at(v, g.other_end(at[i], v), g.other_end(at[j], v)))
                    return CompatibilityVerdict{false, Violation{v, at[i], at[j]}};
    }
    return CompatibilityVerdict{};
}

auto ihs::compatible_with(const Graph & g, const IncompatibilitySystem & sys,
        EdgeId e, std::span<const EdgeId> s) -> bool
{
    if (e >= g.size())
        throw Error(ErrorKind::EdgeOutOfRange, "edge id " + to_string(e));
    auto [a, b] = g.edge(e);
    for (auto f : s) {
        if (f >= g.size())
            throw Error(ErrorKind::EdgeOutOfRange, "edge id " + to_string(f));
        if (f == e)
            continue;
        auto [c, d] = g.edge(f);
        for (Vertex v : {a, b})
            if (v == c || v == d)
                if (sys.incompatible_at(v, g.other_end(e, v), g.other_end(f, v)))
                    return false;
    }
    return true;
}

auto ihs::gen_random_system(const Graph & g, size_t bound, std::uint64_t seed) -> IncompatibilitySystem
{
    IncompatibilitySystem sys(g);
    if (bound == 0)
        return sys;

    std::mt19937_64 rng(seed);
    for (Vertex v = 0; v < g.order(); ++v) {
        auto nbrs = g.neighbours(v).to_vector();
        if (nbrs.size() < 2)
            continue;
        std::uniform_int_distribution<size_t> pick(0, nbrs.size() - 1);
        size_t attempts = 2 * bound * nbrs.size();
        for (size_t a = 0; a < attempts; ++a) {
            auto x = Vertex(nbrs[pick(rng)]), y = Vertex(nbrs[pick(rng)]);
            if (x == y || sys.incompatible_at(v, x, y))
                continue;
            if (sys.local_count(v, x) >= bound || sys.local_count(v, y) >= bound)
                continue;
            sys.add_pair(g, v, g.edge_id(v, x), g.edge_id(v, y));
        }
    }
    return sys;
}

auto ihs::gen_color_system(const Graph & g, std::span<const optional<Color>> coloring) -> IncompatibilitySystem
{
    if (coloring.size() < g.size())
        throw Error(ErrorKind::MissingColor, "colouring covers " + to_string(coloring.size()) +
                " of " + to_string(g.size()) + " edges");
    for (EdgeId e = 0; e < g.size(); ++e)
        if (! coloring[e])
            throw Error(ErrorKind::MissingColor, "edge " + to_string(e) + " has no colour");

    IncompatibilitySystem sys(g);
    for (Vertex v = 0; v < g.order(); ++v) {
        auto nbrs = g.neighbours(v).to_vector();
        for (size_t i = 0; i < nbrs.size(); ++i)
            for (size_t j = i + 1; j < nbrs.size(); ++j) {
                auto e = g.edge_id(v, Vertex(nbrs[i])), f = g.edge_id(v, Vertex(nbrs[j]));
                if (*coloring[e] == *coloring[f])
                    sys.add_pair(g, v, e, f);
            }
    }
    return sys;
}
