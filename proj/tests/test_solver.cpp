#include <ihs/constructions.hpp>
#include <ihs/error.hpp>
#include <ihs/solver.hpp>

#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ihs;
using helpers::forbid;
using helpers::make_graph;

using std::size_t;
using std::vector;

namespace
{
    auto kind_of(auto f) -> std::optional<ErrorKind>
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.kind();
        }
        return std::nullopt;
    }

    auto square_of_cycle(size_t n) -> Graph
    {
        BaseSequence c{{}, SequenceKind::Cycle};
        for (Vertex v = 0; v < n; ++v)
            c.vertices.push_back(v);
        vector<std::pair<Vertex, Vertex>> l;
        for (auto & e : power_edges(c, 2))
            l.emplace_back(e.u, e.v);
        return Graph(n, l);
    }
}

TEST_CASE("mates on complete graphs")
{
    auto k4 = complete_graph(4);
    IncompatibilitySystem empty(k4);
    auto m = enumerate_mates(k4, empty, {0, 1});
    CHECK(m == vector<KTuple>{{2, 3}, {3, 2}});
    CHECK(count_mates(k4, empty, {0, 1}) == 2);
    CHECK(enumerate_mates(k4, empty, {0, 1}, 1).size() == 1);

    for (size_t k : {2, 3})
        for (size_t n = 2 * k; n <= 10; ++n) {
            auto g = complete_graph(n);
            IncompatibilitySystem sys(g);
            KTuple e;
            for (Vertex v = 0; v < k; ++v)
                e.push_back(v);
            std::uint64_t formula = 1;
            for (size_t i = 0; i < k; ++i)
                formula *= (n - k - i);
            CHECK(count_mates(g, sys, e) == formula);
        }
}

TEST_CASE("mates against the oracle")
{
    std::mt19937_64 rng(41);
    for (int round = 0; round < 60; ++round) {
        size_t n = 5 + rng() % 4, k = 1 + rng() % 2;
        auto g = helpers::random_graph(n, 0.8, rng);
        auto sys = gen_random_system(g, rng() % 3, rng());
        auto h = oracle::host(g, sys);
        KTuple e;
        while (e.size() < k) {
            Vertex v = Vertex(rng() % n);
            if (std::find(e.begin(), e.end(), v) == e.end())
                e.push_back(v);
        }
        if (! is_compatible_clique(g, sys, e)) {
            CHECK(kind_of([&] { enumerate_mates(g, sys, e); }) == ErrorKind::NotACompatibleClique);
            continue;
        }
        auto got = enumerate_mates(g, sys, e);
        CHECK(got == oracle::mates(h, e));
        for (auto & f : got) {
            BaseSequence seq{e, SequenceKind::Path};
            seq.vertices.insert(seq.vertices.end(), f.begin(), f.end());
            CHECK(check_power_witness(g, sys, seq, k).valid);
        }
    }
}

TEST_CASE("mates errors and the barrier")
{
    // triangle-free: a non-edge pair is not a clique, which differs from zero mates
    auto c5 = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    IncompatibilitySystem sys(c5);
    CHECK(kind_of([&] { enumerate_mates(c5, sys, {0, 2}); }) == ErrorKind::NotACompatibleClique);
    CHECK(count_mates(c5, sys, {0, 1}) == 0);

    auto b = build_space_barrier(default_barrier_spec(2, 12));
    for (auto & [u, w] : b.spec.inside_graphs[0]) {
        CHECK(count_mates(b.graph, b.system, {u, w}) == 0);
        CHECK(count_mates(b.graph, b.system, {w, u}) == 0);
        CHECK(oracle::mates(oracle::host(b.graph, b.system), {u, w}).empty());
    }
}

TEST_CASE("hamilton power examples")
{
    auto g = square_of_cycle(6);
    IncompatibilitySystem sys(g);
    auto out = solve_power_hamilton(g, sys, 2);
    CHECK(out.status == SolveStatus::Sat);
    REQUIRE(out.witness);
    CHECK(out.witness->kind == SequenceKind::Cycle);
    CHECK(check_hamilton_power(g, sys, *out.witness, 2).valid);

    auto k5 = complete_graph(5);
    IncompatibilitySystem e5(k5);
    CHECK(solve_power_hamilton(k5, e5, 4).status == SolveStatus::Sat);
    auto blocked = e5;
    forbid(k5, blocked, 0, 1, 2);
    CHECK(solve_power_hamilton(k5, blocked, 4).status == SolveStatus::Unsat);

    CHECK_THROWS_AS(solve_power_hamilton(k5, e5, 0), Error);
    CHECK_THROWS_AS(solve_power_hamilton(k5, e5, 5), Error);
}

TEST_CASE("hamilton power on the barrier is unsat")
{
    for (size_t n : {9, 12}) {
        auto b = build_space_barrier(default_barrier_spec(2, n));
        auto out = solve_power_hamilton(b.graph, b.system, 2);
        CHECK(out.status == SolveStatus::Unsat);
        CHECK(! out.witness);
    }
}

TEST_CASE("hamilton power against the oracle")
{
    std::mt19937_64 rng(43);
    for (int round = 0; round < 40; ++round) {
        size_t n = 4 + rng() % 5, k = 1 + rng() % 2;
        auto g = helpers::random_graph(n, 0.75, rng);
        auto sys = gen_random_system(g, rng() % 3, rng());
        auto out = solve_power_hamilton(g, sys, k);
        bool expected = oracle::hamilton_power_exists(oracle::host(g, sys), k);
        CHECK((out.status == SolveStatus::Sat) == expected);
        CHECK(out.status != SolveStatus::Timeout);
        if (out.witness)
            CHECK(oracle::power_ok(oracle::host(g, sys), out.witness->vertices, k, true));
    }
}

TEST_CASE("hamilton power budget and threads")
{
    auto b = build_space_barrier(default_barrier_spec(2, 12));
    SolveOptions tight{Budget{50, 0.0}, 1};
    auto out = solve_power_hamilton(b.graph, b.system, 2, tight);
    CHECK(out.status == SolveStatus::Timeout);
    CHECK(! out.witness);

    SolveOptions threaded{Budget{}, 4};
    CHECK(solve_power_hamilton(b.graph, b.system, 2, threaded).status == SolveStatus::Unsat);

    auto k9 = complete_graph(9);
    auto sys = gen_random_system(k9, 2, 5);
    auto single = solve_power_hamilton(k9, sys, 2);
    auto multi = solve_power_hamilton(k9, sys, 2, threaded);
    CHECK(single.status == multi.status);
    if (multi.witness)
        CHECK(check_hamilton_power(k9, sys, *multi.witness, 2).valid);

    // deterministic single-threaded mode
    auto again = solve_power_hamilton(k9, sys, 2);
    CHECK(again.witness == single.witness);
    CHECK(again.nodes_expanded == single.nodes_expanded);
}

TEST_CASE("clique factor")
{
    auto k6 = complete_graph(6);
    IncompatibilitySystem e6(k6);
    auto out = solve_clique_factor(k6, e6, 3);
    CHECK(out.status == SolveStatus::Sat);
    REQUIRE(out.witness);
    auto blocks = factor_blocks(*out.witness, 3);
    CHECK(blocks.size() == 2);
    for (auto & blk : blocks)
        CHECK(is_compatible_clique(k6, e6, blk));

    auto isolated = make_graph(4, {{0, 1}, {1, 2}, {0, 2}});
    IncompatibilitySystem si(isolated);
    CHECK(solve_clique_factor(isolated, si, 2).status == SolveStatus::Unsat);

    CHECK(kind_of([&] { solve_clique_factor(k6, e6, 4); }) == ErrorKind::BadDivisibility);

    for (size_t n : {9, 12}) {
        auto b = build_space_barrier(default_barrier_spec(2, n));
        CHECK(solve_clique_factor(b.graph, b.system, 3).status == SolveStatus::Unsat);
    }
}

TEST_CASE("clique factor against the oracle")
{
    std::mt19937_64 rng(47);
    for (int round = 0; round < 60; ++round) {
        size_t r = 2 + rng() % 2;
        size_t n = r * (2 + rng() % 2);
        auto g = helpers::random_graph(n, 0.7, rng);
        auto sys = gen_random_system(g, rng() % 3, rng());
        auto out = solve_clique_factor(g, sys, r);
        CHECK((out.status == SolveStatus::Sat) == oracle::clique_factor_exists(oracle::host(g, sys), r));
    }
}

TEST_CASE("connect_ends")
{
    auto k8 = complete_graph(8);
    IncompatibilitySystem sys(k8);
    auto out = connect_ends(k8, sys, {0, 1}, {2, 3}, {}, 4);
    CHECK(out.status == SolveStatus::Sat);
    REQUIRE(out.witness);
    CHECK(out.witness->vertices == vector<Vertex>{0, 1, 3, 2});

    // ends already joined along a path power
    auto p = square_of_cycle(8);
    IncompatibilitySystem sp(p);
    auto joined = connect_ends(p, sp, {0, 1}, {3, 2}, {}, 3);
    CHECK(joined.status == SolveStatus::Sat);
    REQUIRE(joined.witness);
    CHECK(joined.witness->vertices.size() == 4);

    // interior needed: 0,1 ... 4,5 along C_8^2 needs 2 and 3
    auto far = connect_ends(p, sp, {0, 1}, {5, 4}, {}, 4);
    CHECK(far.status == SolveStatus::Sat);
    REQUIRE(far.witness);
    CHECK(far.witness->vertices.size() == 6);
    CHECK(connect_ends(p, sp, {0, 1}, {5, 4}, {}, 1).status == SolveStatus::Unsat);
    vector<Vertex> avoid{2};
    auto detour = oracle::shortest_connection(oracle::host(p, sp), {0, 1}, {5, 4}, avoid, 4);
    CHECK((connect_ends(p, sp, {0, 1}, {5, 4}, avoid, 4).status == SolveStatus::Sat) == detour.has_value());
}

TEST_CASE("connect_ends on the barrier")
{
    auto b = build_space_barrier(default_barrier_spec(2, 12));
    auto & in = b.spec.inside_graphs[0];
    // two disjoint inside edges of V_1
    KTuple e1{in[0].first, in[0].second}, e2{in[2].first, in[2].second};
    for (size_t cap : {0, 2, 4, 6})
        CHECK(connect_ends(b.graph, b.system, e1, e2, {}, cap).status == SolveStatus::Unsat);
}

TEST_CASE("connect_ends minimality against the oracle")
{
    std::mt19937_64 rng(53);
    for (int round = 0; round < 40; ++round) {
        size_t n = 7 + rng() % 2;
        auto g = helpers::random_graph(n, 0.8, rng);
        auto sys = gen_random_system(g, rng() % 2, rng());
        KTuple e1{0, 1}, e2{2, 3};
        if (! is_compatible_clique(g, sys, e1) || ! is_compatible_clique(g, sys, e2))
            continue;
        auto out = connect_ends(g, sys, e1, e2, {}, 3);
        auto expected = oracle::shortest_connection(oracle::host(g, sys), e1, e2, {}, 3);
        CHECK((out.status == SolveStatus::Sat) == expected.has_value());
        if (out.witness && expected)
            CHECK(out.witness->vertices.size() - 4 == *expected);
    }
}

TEST_CASE("absorbers")
{
    auto k8 = complete_graph(8);
    IncompatibilitySystem e8(k8);
    CHECK(enumerate_absorbers(k8, e8, 0, 2, 0.0).size() == 840);
    CHECK(oracle::absorber_count(oracle::host(k8, e8), 0, 2) == 840);

    for (size_t k : {1, 2, 3}) {
        auto g = complete_graph(2 * k + 1);
        IncompatibilitySystem sys(g);
        size_t fact = 1;
        for (size_t i = 2; i <= 2 * k; ++i)
            fact *= i;
        auto list = enumerate_absorbers(g, sys, Vertex(k), k, 0.0);
        CHECK(list.size() == fact);
        for (auto & a : list) {
            CHECK(check_power_witness(g, sys, a.base, k).valid);
            CHECK(check_power_witness(g, sys, absorb(a, Vertex(k)), k).valid);
        }
    }

    // every pair at v forbidden: nothing can absorb v
    auto k5 = complete_graph(5);
    IncompatibilitySystem all(k5);
    for (Vertex a = 1; a < 5; ++a)
        for (Vertex b = a + 1; b < 5; ++b)
            forbid(k5, all, 0, a, b);
    CHECK(enumerate_absorbers(k5, all, 0, 1, 0.0).empty());
    CHECK(enumerate_absorbers(k5, all, 0, 2, 0.0).empty());

    CHECK(enumerate_absorbers(k8, e8, 0, 2, 0.0, 5).size() == 5);
}

TEST_CASE("absorbers against the oracle, with beta")
{
    std::mt19937_64 rng(59);
    for (int round = 0; round < 25; ++round) {
        size_t n = 6 + rng() % 2, k = 1 + rng() % 2;
        auto g = helpers::random_graph(n, 0.85, rng);
        auto sys = gen_random_system(g, rng() % 3, rng());
        Vertex v = Vertex(rng() % n);
        auto list = enumerate_absorbers(g, sys, v, k, 0.0);
        CHECK(list.size() == oracle::absorber_count(oracle::host(g, sys), v, k));

        double beta = 0.02;
        double threshold = beta;
        for (size_t i = 0; i < k; ++i)
            threshold *= double(n);
        auto strong = enumerate_absorbers(g, sys, v, k, beta);
        size_t expected = 0;
        for (auto & a : list) {
            KTuple first(a.base.vertices.begin(), a.base.vertices.begin() + k);
            KTuple last(a.base.vertices.end() - k, a.base.vertices.end());
            auto h = oracle::host(g, sys);
            if (double(oracle::mates(h, reversed(first)).size()) >= threshold
                    && double(oracle::mates(h, last).size()) >= threshold)
                ++expected;
        }
        CHECK(strong.size() == expected);
    }
}

TEST_CASE("compatible copies")
{
    auto k2 = complete_graph(2);
    std::mt19937_64 rng(61);
    for (int round = 0; round < 10; ++round) {
        auto g = helpers::random_graph(8, 0.5, rng);
        auto sys = gen_random_system(g, 2, rng());
        CHECK(count_compatible_copies(g, sys, k2) == 2 * g.size());
    }

    auto k6 = complete_graph(6);
    IncompatibilitySystem e6(k6);
    auto p24 = Graph(4, vector<std::pair<Vertex, Vertex>>{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(count_compatible_copies(k6, e6, p24) == 360);

    auto big = complete_graph(9);
    CHECK(kind_of([&] { count_compatible_copies(k6, e6, big); }) == ErrorKind::PatternTooLarge);

    for (int round = 0; round < 20; ++round) {
        auto g = helpers::random_graph(7, 0.8, rng);
        auto sys = gen_random_system(g, 2, rng());
        CHECK(count_compatible_copies(g, sys, p24)
                == oracle::copies(oracle::host(g, sys), 4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}));
    }
}

TEST_CASE("greedy longest power path")
{
    auto k9 = complete_graph(9);
    IncompatibilitySystem e9(k9);
    Bitset all(9);
    all.set_all();
    auto p = greedy_longest_power_path(k9, e9, all, 2, 1);
    CHECK(p.base.vertices.size() == 9);
    CHECK(check_power_witness(k9, e9, p.base, 2).valid);

    Bitset some(9);
    for (Vertex v : {1, 3, 5, 7})
        some.set(v);
    auto q = greedy_longest_power_path(k9, e9, some, 2, 2);
    CHECK(q.base.vertices.size() == 4);
    for (auto v : q.base.vertices)
        CHECK(some.test(v));

    // two components
    auto two = make_graph(8, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {4, 5}, {5, 6}, {4, 6}, {6, 7}, {5, 7}});
    IncompatibilitySystem st(two);
    Bitset all8(8);
    all8.set_all();
    auto r = greedy_longest_power_path(two, st, all8, 1, 3);
    auto comp = r.base.vertices[0] < 4;
    for (auto v : r.base.vertices)
        CHECK((v < 4) == comp);

    Bitset none(8);
    CHECK_THROWS_AS(greedy_longest_power_path(two, st, none, 1, 0), Error);
}

TEST_CASE("greedy paths are maximal")
{
    std::mt19937_64 rng(67);
    for (int round = 0; round < 40; ++round) {
        size_t n = 8 + rng() % 6, k = 1 + rng() % 2;
        auto g = helpers::random_graph(n, 0.7, rng);
        auto sys = gen_random_system(g, rng() % 3, rng());
        Bitset allowed(n);
        allowed.set_all();
        auto p = greedy_longest_power_path(g, sys, allowed, k, rng());
        CHECK(check_power_witness(g, sys, p.base, k).valid);
        auto h = oracle::host(g, sys);
        for (Vertex w = 0; w < n; ++w) {
            auto & vs = p.base.vertices;
            if (std::find(vs.begin(), vs.end(), w) != vs.end())
                continue;
            auto back = vs;
            back.push_back(w);
            auto front = vs;
            front.insert(front.begin(), w);
            CHECK(! oracle::power_ok(h, back, k, false));
            CHECK(! oracle::power_ok(h, front, k, false));
        }
    }

    auto b = build_space_barrier(default_barrier_spec(2, 12));
    Bitset all(12);
    all.set_all();
    auto p = greedy_longest_power_path(b.graph, b.system, all, 2, 0);
    CHECK(check_power_witness(b.graph, b.system, p.base, 2).valid);
    CHECK(p.base.vertices.size() < 12);
}

TEST_CASE("filter_good_mates")
{
    auto k8 = complete_graph(8);
    IncompatibilitySystem e8(k8);
    PowerPathWitness p{{{0, 1, 2, 3}, SequenceKind::Path}, 2};
    Bitset outside(8);
    outside.set_all();
    for (auto v : p.base.vertices)
        outside.reset(v);
    auto mates = enumerate_mates(k8, e8, {2, 3}, std::nullopt, &outside);
    CHECK(mates.size() == 12);
    CHECK(filter_good_mates(k8, e8, p, std::nullopt, mates) == mates);

    // k = 1: forbidding {u_1 f, u_1 a_1} at u_1 for every f makes every mate bad
    auto k5 = complete_graph(5);
    IncompatibilitySystem s5(k5);
    for (Vertex f = 2; f < 5; ++f)
        forbid(k5, s5, 1, 0, f);
    PowerPathWitness q{{{0, 1}, SequenceKind::Path}, 1};
    auto m1 = enumerate_mates(k5, IncompatibilitySystem(k5), {1});
    CHECK(filter_good_mates(k5, s5, q, std::nullopt, m1).empty());
}

TEST_CASE("witness checker")
{
    auto k5 = complete_graph(5);
    IncompatibilitySystem sys(k5);
    CHECK(check_hamilton_power(k5, sys, {{0, 1, 2, 3, 4}, SequenceKind::Cycle}, 2).valid);
    CHECK(! check_hamilton_power(k5, sys, {{0, 1, 2, 3}, SequenceKind::Cycle}, 2).valid);
    CHECK(! check_hamilton_power(k5, sys, {{0, 1, 2, 3, 4}, SequenceKind::Path}, 2).valid);
    CHECK(! check_power_witness(k5, sys, {{0, 1, 1}, SequenceKind::Path}, 1).valid);
    auto c5 = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    IncompatibilitySystem sc(c5);
    CHECK(check_hamilton_power(c5, sc, {{0, 1, 2, 3, 4}, SequenceKind::Cycle}, 1).valid);
    CHECK(! check_hamilton_power(c5, sc, {{0, 1, 2, 3, 4}, SequenceKind::Cycle}, 2).valid);
}
