#include "properties.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <ihs/io.hpp>
#include <ihs/solver.hpp>

#include <algorithm>
#include <random>
#include <sstream>

using namespace ihs;

using nlohmann::json;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace properties
{
    namespace
    {
        auto fail(Result & r, const string & why) -> void
        {
            if (r.failures++ == 0)
                r.first_failure = why;
        }

        struct Generated
        {
            Graph graph;
            IncompatibilitySystem system;
        };

        auto instance(std::mt19937_64 & rng, size_t min_n, size_t max_n, double min_q, size_t max_bound) -> Generated
        {
            size_t n = min_n + rng() % (max_n - min_n + 1);
            double q = min_q + (1.0 - min_q) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            auto g = helpers::random_graph(n, q, rng);
            auto sys = gen_random_system(g, rng() % (max_bound + 1), rng());
            return {std::move(g), std::move(sys)};
        }

        auto to_pairs(const Graph & g, const vector<EdgeId> & ids) -> vector<oracle::VPair>
        {
            vector<oracle::VPair> out;
            for (auto e : ids)
                out.emplace_back(g.edge(e).u, g.edge(e).v);
            return out;
        }

        auto random_tuple(std::mt19937_64 & rng, size_t n, size_t k, const vector<Vertex> & avoid) -> KTuple
        {
            KTuple e;
            while (e.size() < k) {
                auto v = Vertex(rng() % n);
                if (std::find(e.begin(), e.end(), v) == e.end() && std::find(avoid.begin(), avoid.end(), v) == avoid.end())
                    e.push_back(v);
            }
            return e;
        }
    }

    auto hereditary_compatibility(uint64_t seed, size_t cases) -> Result
    {
        Result r{"hereditary compatibility"};
        std::mt19937_64 rng(seed);
        while (r.cases < cases) {
            auto [g, sys] = instance(rng, 4, 10, 0.4, 3);
            if (g.size() == 0)
                continue;
            // grow a compatible edge set greedily in random order
            auto order = helpers::all_ids(g);
            std::shuffle(order.begin(), order.end(), rng);
            vector<EdgeId> s;
            for (auto e : order) {
                s.push_back(e);
                if (! is_compatible(g, sys, s).compatible)
                    s.pop_back();
            }
            auto h = oracle::host(g, sys);
            if (! oracle::compatible(h, to_pairs(g, s)))
                fail(r, "greedy set rejected by the oracle");
            for (int sub = 0; sub < 4; ++sub) {
                vector<EdgeId> t;
                for (auto e : s)
                    if (rng() % 2)
                        t.push_back(e);
                std::shuffle(t.begin(), t.end(), rng);
                ++r.cases;
                if (! is_compatible(g, sys, t).compatible)
                    fail(r, "subset of a compatible set reported incompatible");
            }
            // the contrapositive: anything containing a violation stays incompatible
            auto all = helpers::all_ids(g);
            auto verdict = is_compatible(g, sys, all);
            if (! verdict.compatible) {
                auto & v = *verdict.violation;
                vector<EdgeId> t{v.first, v.second};
                for (auto e : all)
                    if (e != v.first && e != v.second && rng() % 2)
                        t.push_back(e);
                std::shuffle(t.begin(), t.end(), rng);
                ++r.cases;
                if (is_compatible(g, sys, t).compatible)
                    fail(r, "superset of a violation reported compatible");
                vector<EdgeId> swapped{v.second, v.first};
                if (is_compatible(g, sys, swapped).compatible)
                    fail(r, "verdict depends on the order of a pair");
            }
        }
        return r;
    }

    auto boundedness_monotone(uint64_t seed, size_t cases) -> Result
    {
        Result r{"boundedness monotonicity"};
        std::mt19937_64 rng(seed);
        while (r.cases < cases) {
            auto [g, sys] = instance(rng, 4, 12, 0.5, 4);
            if (sys.empty())
                continue;
            auto h = oracle::host(g, sys);
            if (oracle::boundedness(h) != boundedness(sys))
                fail(r, "boundedness differs from the pair-list count");
            // remove pairs one by one in random order, never increasing
            vector<std::pair<Vertex, EdgePair>> pairs;
            for (Vertex v = 0; v < g.order(); ++v)
                for (auto & p : sys.pairs_at(g, v))
                    pairs.emplace_back(v, p);
            std::shuffle(pairs.begin(), pairs.end(), rng);
            auto before = boundedness(sys);
            for (size_t i = 0; i < pairs.size() && i < 8; ++i) {
                auto & [v, p] = pairs[i];
                if (! sys.remove_pair(g, v, p.first, p.second))
                    fail(r, "stored pair could not be removed");
                auto after = boundedness(sys);
                ++r.cases;
                if (after > before)
                    fail(r, "removing a pair increased boundedness");
                before = after;
            }
        }
        return r;
    }

    auto connect_minimality(uint64_t seed, size_t cases) -> Result
    {
        Result r{"connect_ends minimality"};
        std::mt19937_64 rng(seed);
        while (r.cases < cases) {
            auto [g, sys] = instance(rng, 6, 9, 0.6, 2);
            size_t k = 1 + rng() % 2;
            size_t cap = k == 1 ? 4 : 3;
            auto e1 = random_tuple(rng, g.order(), k, {});
            auto e2 = random_tuple(rng, g.order(), k, e1);
            if (! is_compatible_clique(g, sys, e1) || ! is_compatible_clique(g, sys, e2))
                continue;
            vector<Vertex> used = e1;
            used.insert(used.end(), e2.begin(), e2.end());
            vector<Vertex> avoid;
            for (size_t i = rng() % 3; i > 0; --i) {
                auto v = Vertex(rng() % g.order());
                if (std::find(used.begin(), used.end(), v) == used.end()
                        && std::find(avoid.begin(), avoid.end(), v) == avoid.end())
                    avoid.push_back(v);
            }
            ++r.cases;
            auto out = connect_ends(g, sys, e1, e2, avoid, cap);
            auto expected = oracle::shortest_connection(oracle::host(g, sys), e1, e2, avoid, cap);
            if ((out.status == SolveStatus::Sat) != expected.has_value()) {
                fail(r, "status disagrees with the oracle");
                continue;
            }
            if (out.status != SolveStatus::Sat)
                continue;
            auto & w = out.witness->vertices;
            size_t interior = w.size() - 2 * k;
            if (interior != *expected)
                fail(r, "interior is not the shortest");
            if (! std::equal(e1.begin(), e1.end(), w.begin()) || ! std::equal(e2.begin(), e2.end(), w.rbegin()))
                fail(r, "witness does not have the requested ends");
            for (size_t i = k; i < w.size() - k; ++i)
                if (std::find(avoid.begin(), avoid.end(), w[i]) != avoid.end())
                    fail(r, "interior uses an avoided vertex");
            if (! check_power_witness(g, sys, *out.witness, k).valid)
                fail(r, "witness fails validation");
            if (interior > 0 && connect_ends(g, sys, e1, e2, avoid, interior - 1).status != SolveStatus::Unsat)
                fail(r, "a shorter cap did not give UNSAT");
        }
        return r;
    }

    auto factor_from_power(uint64_t seed, size_t cases) -> Result
    {
        Result r{"factor-from-power grouping"};
        std::mt19937_64 rng(seed);
        const vector<std::pair<size_t, size_t>> shapes{{1, 4}, {1, 6}, {1, 8}, {2, 6}, {2, 9}, {3, 8}};
        while (r.cases < cases) {
            auto [k, n] = shapes[rng() % shapes.size()];
            auto g = helpers::random_graph(n, 0.8 + 0.2 * std::uniform_real_distribution<double>(0.0, 1.0)(rng), rng);
            auto sys = gen_random_system(g, rng() % 3, rng());
            auto out = solve_power_hamilton(g, sys, k);
            if (out.status != SolveStatus::Sat)
                continue;
            ++r.cases;
            auto h = oracle::host(g, sys);
            auto blocks = factor_blocks(*out.witness, k + 1);
            vector<int> seen(n, 0);
            for (auto & block : blocks) {
                vector<oracle::VPair> edges;
                for (size_t i = 0; i < block.size(); ++i) {
                    ++seen[block[i]];
                    for (size_t j = i + 1; j < block.size(); ++j)
                        edges.push_back(oracle::norm(block[i], block[j]));
                }
                if (block.size() != k + 1 || ! oracle::compatible(h, edges))
                    fail(r, "a block is not a compatible clique");
            }
            if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
                fail(r, "blocks do not partition the vertices");
        }
        return r;
    }

    auto canonical_round_trip(uint64_t seed, size_t cases) -> Result
    {
        Result r{"canonical serialization round-trip"};
        std::mt19937_64 rng(seed);
        while (r.cases < cases) {
            ++r.cases;
            auto [g, sys] = instance(rng, 0, 14, 0.2, 3);
            Instance inst{g, sys, json::object()};
            for (size_t i = rng() % 4; i > 0; --i)
                inst.metadata["key" + std::to_string(rng() % 10)] = rng() % 2 ? json(rng() % 1000) : json("v" + std::to_string(rng() % 7));

            auto text = emit_instance(inst);
            auto back = parse_instance(text);
            if (! (back.graph == g) || ! (back.system == sys) || back.metadata != inst.metadata)
                fail(r, "parse of emitted text differs from the source");
            if (emit_instance(back) != text)
                fail(r, "emit after parse is not byte identical");

            // a scrambled but equivalent document loads to the same canonical text
            json doc = json::parse(text);
            auto & edges = doc["edges"];
            std::shuffle(edges.begin(), edges.end(), rng);
            for (auto & e : edges)
                if (rng() % 2)
                    std::swap(e[0], e[1]);
            for (auto & [key, pairs] : doc["incompat"].items()) {
                std::shuffle(pairs.begin(), pairs.end(), rng);
                for (auto & p : pairs)
                    if (rng() % 2)
                        std::swap(p[0], p[1]);
            }
            if (emit_instance(parse_instance(doc.dump())) != text)
                fail(r, "scrambled document does not canonicalise to the same text");
        }
        return r;
    }

    auto all(uint64_t seed, size_t cases) -> vector<Result>
    {
        return {
            hereditary_compatibility(seed + 1, cases),
            boundedness_monotone(seed + 2, cases),
            connect_minimality(seed + 3, cases),
            factor_from_power(seed + 4, cases),
            canonical_round_trip(seed + 5, cases)
        };
    }
}
