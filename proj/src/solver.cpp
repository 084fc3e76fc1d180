#include <ihs/solver.hpp>
#include <ihs/error.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

using namespace ihs;

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace
{
    auto all_vertices(const Graph & g) -> Bitset
    {
        Bitset result(g.order());
        result.set_all();
        return result;
    }

    auto require_valid(const Graph & g, const IncompatibilitySystem & sys, const BaseSequence & base, size_t k,
            const char * who) -> void
    {
        auto check = base.kind == SequenceKind::Cycle && base.vertices.size() == g.order()
            ? check_hamilton_power(g, sys, base, k) : check_power_witness(g, sys, base, k);
        if (! check.valid)
            throw std::logic_error(string(who) + " produced an invalid witness: " + check.reason);
    }

    auto check_distinct_in_range(const Graph & g, std::span<const Vertex> vs, const char * what) -> void
    {
        vector<Vertex> sorted(vs.begin(), vs.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::InvalidSequence, string(what) + " has a repeated vertex");
        for (auto v : sorted)
            if (v >= g.order())
                throw Error(ErrorKind::VertexOutOfRange, string(what) + " contains vertex " + to_string(v));
    }

    struct HamiltonSearch
    {
        PartialEmbedding embedding;
        BudgetMeter & meter;
        Bitset everything;
        optional<vector<Vertex>> found;

        auto dfs() -> bool
        {
            if (embedding.complete()) {
                found = embedding.image();
                return true;
            }

            auto n = everything.size();
            size_t i = embedding.depth();
            auto & cand = embedding.candidates(everything);
            // reflection symmetry: second vertex < last vertex
            size_t from = (i == n - 1 && n >= 3) ? embedding.image()[1] + 1 : 0;
            for (size_t w = cand.find_next(from); w < n; w = cand.find_next(w + 1)) {
                if (! meter.tick())
                    return false;
                embedding.push(Vertex(w));
                if (dfs())
                    return true;
                embedding.pop();
            }
            return false;
        }
    };

    auto finish(optional<vector<Vertex>> found, bool exhausted, uint64_t nodes, SequenceKind kind) -> SolveOutcome
    {
        SolveOutcome result;
        result.nodes_expanded = nodes;
        if (found) {
            result.status = SolveStatus::Sat;
            result.witness = BaseSequence{std::move(*found), kind};
        }
        else
            result.status = exhausted ? SolveStatus::Timeout : SolveStatus::Unsat;
        return result;
    }
}

auto ihs::reversed(const KTuple & e) -> KTuple
{
    return KTuple(e.rbegin(), e.rend());
}

auto ihs::to_string(SolveStatus status) -> string
{
    switch (status) {
        case SolveStatus::Sat: return "SAT";
        case SolveStatus::Unsat: return "UNSAT";
        case SolveStatus::Timeout: return "TIMEOUT";
    }
    return "?";
}

auto ihs::check_power_witness(const Graph & g, const IncompatibilitySystem & sys,
        const BaseSequence & base, size_t k) -> WitnessCheck
{
    auto & seq = base.vertices;
    if (seq.empty())
        return {false, "empty base sequence"};
    for (auto v : seq)
        if (v >= g.order())
            return {false, "vertex " + to_string(v) + " out of range"};
    if (seq.size() == 1)
        return {true, ""};

    vector<Edge> edges;
    try {
        edges = power_edges(base, k);
    }
    catch (const Error & e) {
        return {false, e.what()};
    }

    vector<EdgeId> ids;
    for (auto & [u, v] : edges) {
        auto id = g.edge_id(u, v);
        if (id == no_edge)
            return {false, "missing edge {" + to_string(u) + ", " + to_string(v) + "}"};
        ids.push_back(id);
    }

    auto verdict = is_compatible(g, sys, ids);
    if (! verdict.compatible) {
        auto & [v, e, f] = *verdict.violation;
        auto & a = g.edge(e);
        auto & b = g.edge(f);
        return {false, "edges {" + to_string(a.u) + ", " + to_string(a.v) + "} and {" + to_string(b.u) + ", " +
            to_string(b.v) + "} are incompatible at " + to_string(v)};
    }
    return {true, ""};
}

auto ihs::check_hamilton_power(const Graph & g, const IncompatibilitySystem & sys,
        const BaseSequence & base, size_t k) -> WitnessCheck
{
    if (base.kind != SequenceKind::Cycle)
        return {false, "not a cycle"};
    if (base.vertices.size() != g.order())
        return {false, "cycle has " + to_string(base.vertices.size()) + " vertices, graph has " + to_string(g.order())};
    return check_power_witness(g, sys, base, k);
}

auto ihs::is_compatible_clique(const Graph & g, const IncompatibilitySystem & sys, std::span<const Vertex> e) -> bool
{
    vector<EdgeId> ids;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] >= g.order())
            return false;
        for (size_t j = i + 1; j < e.size(); ++j) {
            auto id = g.edge_id(e[i], e[j]);
            if (id == no_edge)
                return false;
            ids.push_back(id);
        }
    }
    return is_compatible(g, sys, ids).compatible;
}

namespace
{
    auto require_clique(const Graph & g, const IncompatibilitySystem & sys, const KTuple & e) -> void
    {
        if (e.empty())
            throw Error(ErrorKind::BadParams, "empty tuple");
        check_distinct_in_range(g, e, "tuple");
        if (! is_compatible_clique(g, sys, e))
            throw Error(ErrorKind::NotACompatibleClique, "tuple does not induce a compatible clique");
    }

    /// Visits mates of e in lexicographic order until visit returns false.
    template <typename Visit>
    auto for_each_mate(const Graph & g, const IncompatibilitySystem & sys, const KTuple & e,
            const Bitset * allowed, Visit && visit) -> void
    {
        require_clique(g, sys, e);
        auto k = e.size();
        auto pattern = Pattern::power(2 * k, k, SequenceKind::Path);
        PartialEmbedding embedding(g, sys, pattern);
        for (auto u : e)
            embedding.push(u);
        Bitset pool = allowed ? *allowed : all_vertices(g);

        auto dfs = [&](auto & self) -> bool {
            if (embedding.complete())
                return visit(KTuple(embedding.image().begin() + k, embedding.image().end()));
            auto & cand = embedding.candidates(pool);
            for (size_t w = cand.find_first(); w < cand.size(); w = cand.find_next(w + 1)) {
                embedding.push(Vertex(w));
                bool go_on = self(self);
                embedding.pop();
                if (! go_on)
                    return false;
            }
            return true;
        };
        dfs(dfs);
    }
}

auto ihs::enumerate_mates(const Graph & g, const IncompatibilitySystem & sys, const KTuple & e,
        optional<size_t> limit, const Bitset * allowed) -> vector<KTuple>
{
    vector<KTuple> result;
    if (limit && *limit == 0) {
        require_clique(g, sys, e);
        return result;
    }
    for_each_mate(g, sys, e, allowed, [&](KTuple f) {
        result.push_back(std::move(f));
        return ! (limit && result.size() >= *limit);
    });
    return result;
}

auto ihs::count_mates(const Graph & g, const IncompatibilitySystem & sys, const KTuple & e,
        optional<uint64_t> cap, const Bitset * allowed) -> uint64_t
{
    uint64_t result = 0;
    if (cap && *cap == 0) {
        require_clique(g, sys, e);
        return 0;
    }
    for_each_mate(g, sys, e, allowed, [&](const KTuple &) {
        ++result;
        return ! (cap && result >= *cap);
    });
    return result;
}

auto ihs::solve_power_hamilton(const Graph & g, const IncompatibilitySystem & sys, size_t k,
        const SolveOptions & options) -> SolveOutcome
{
    auto n = g.order();
    if (k == 0)
        throw Error(ErrorKind::BadParams, "k must be at least 1");
    if (n < k + 1 || n < 2)
        throw Error(ErrorKind::BadParams, "need n >= k+1 and n >= 2");

    auto pattern = Pattern::power(n, k, SequenceKind::Cycle);
    auto everything = all_vertices(g);

    std::atomic<uint64_t> total{0};
    std::atomic<bool> stop{false};
    unsigned workers = std::max(1u, options.threads);

    if (workers == 1 || n < 3) {
        BudgetMeter meter(options.budget);
        HamiltonSearch search{PartialEmbedding(g, sys, pattern), meter, everything, std::nullopt};
        if (meter.tick()) {
            search.embedding.push(0);
            search.dfs();
        }
        auto result = finish(search.found, meter.exhausted(), meter.nodes(), SequenceKind::Cycle);
        if (result.witness)
            require_valid(g, sys, *result.witness, k, "solve_power_hamilton");
        return result;
    }

    // Split on the vertex at position 1.
    PartialEmbedding root(g, sys, pattern);
    root.push(0);
    auto firsts = root.candidates(everything).to_vector();

    std::atomic<size_t> next{0};
    std::mutex found_mutex;
    optional<vector<Vertex>> found;
    std::atomic<bool> any_exhausted{false};

    auto work = [&] {
        BudgetMeter meter(options.budget, total, stop);
        HamiltonSearch search{PartialEmbedding(g, sys, pattern), meter, everything, std::nullopt};
        search.embedding.push(0);
        while (! stop.load()) {
            auto idx = next.fetch_add(1);
            if (idx >= firsts.size())
                break;
            if (! meter.tick())
                break;
            search.embedding.push(Vertex(firsts[idx]));
            if (search.dfs()) {
                std::lock_guard<std::mutex> lock(found_mutex);
                if (! found)
                    found = search.found;
                stop = true;
                break;
            }
            search.embedding.pop();
            if (meter.exhausted())
                break;
        }
        if (meter.exhausted()) {
            any_exhausted = true;
            stop = true;
        }
    };

    vector<std::thread> threads;
    for (unsigned t = 0; t < workers; ++t)
        threads.emplace_back(work);
    for (auto & t : threads)
        t.join();

    auto result = finish(found, any_exhausted.load(), total.load() + 1, SequenceKind::Cycle);
    if (result.witness)
        require_valid(g, sys, *result.witness, k, "solve_power_hamilton");
    return result;
}

auto ihs::solve_clique_factor(const Graph & g, const IncompatibilitySystem & sys, size_t r,
        const SolveOptions & options) -> SolveOutcome
{
    auto n = g.order();
    if (r == 0)
        throw Error(ErrorKind::BadParams, "clique size must be at least 1");
    if (n % r != 0)
        throw Error(ErrorKind::BadDivisibility, to_string(r) + " does not divide n = " + to_string(n));

    vector<std::pair<Vertex, Vertex>> blocks;
    for (size_t b = 0; b < n; b += r)
        for (size_t i = b; i < b + r; ++i)
            for (size_t j = i + 1; j < b + r; ++j)
                blocks.emplace_back(Vertex(i), Vertex(j));
    auto pattern = Pattern::from_graph(Graph(n, blocks));

    PartialEmbedding embedding(g, sys, pattern);
    BudgetMeter meter(options.budget);
    auto everything = all_vertices(g);
    optional<vector<Vertex>> found;

    // Cliques are listed by their least vertex, members ascending.
    auto dfs = [&](auto & self) -> bool {
        if (embedding.complete()) {
            found = embedding.image();
            return true;
        }
        size_t i = embedding.depth();
        if (i % r == 0) {
            Bitset free = everything;
            free.subtract(embedding.used());
            auto v = Vertex(free.find_first());
            if (! meter.tick())
                return false;
            embedding.push(v);
            if (self(self))
                return true;
            embedding.pop();
            return false;
        }
        auto & cand = embedding.candidates(everything);
        for (size_t w = cand.find_next(embedding.image().back() + 1); w < n; w = cand.find_next(w + 1)) {
            if (! meter.tick())
                return false;
            embedding.push(Vertex(w));
            if (self(self))
                return true;
            embedding.pop();
        }
        return false;
    };
    if (n > 0)
        dfs(dfs);

    auto result = finish(found, meter.exhausted(), meter.nodes(), SequenceKind::Path);
    if (result.witness)
        for (auto & block : factor_blocks(*result.witness, r))
            if (! is_compatible_clique(g, sys, block))
                throw std::logic_error("solve_clique_factor produced an invalid block");
    return result;
}

auto ihs::factor_blocks(const BaseSequence & witness, size_t r) -> vector<vector<Vertex>>
{
    vector<vector<Vertex>> result;
    if (r == 0)
        return result;
    for (size_t b = 0; b + r <= witness.vertices.size(); b += r)
        result.emplace_back(witness.vertices.begin() + b, witness.vertices.begin() + b + r);
    return result;
}

auto ihs::connect_sequences(const Graph & g, const IncompatibilitySystem & sys, size_t k,
        std::span<const Vertex> prefix, std::span<const Vertex> suffix,
        const Bitset & allowed, size_t max_interior,
        const Budget & budget, const ConnectionFilter & filter) -> SolveOutcome
{
    if (k == 0)
        throw Error(ErrorKind::BadParams, "k must be at least 1");
    vector<Vertex> ends(prefix.begin(), prefix.end());
    ends.insert(ends.end(), suffix.begin(), suffix.end());
    check_distinct_in_range(g, ends, "prefix and suffix");

    Bitset interior = allowed;
    for (auto v : ends)
        interior.reset(v);

    BudgetMeter meter(budget);
    for (size_t length = 0; length <= max_interior; ++length) {
        auto total = prefix.size() + length + suffix.size();
        auto pattern = Pattern::power(total, k, SequenceKind::Path);
        PartialEmbedding embedding(g, sys, pattern);

        bool prefix_ok = true;
        for (auto v : prefix) {
            if (! embedding.feasible(v)) {
                prefix_ok = false;
                break;
            }
            embedding.push(v);
        }
        if (! prefix_ok)
            return finish(std::nullopt, false, meter.nodes(), SequenceKind::Path);

        optional<vector<Vertex>> found;
        auto dfs = [&](auto & self) -> bool {
            if (embedding.complete()) {
                if (filter && ! filter(embedding.image()))
                    return false;
                found = embedding.image();
                return true;
            }
            size_t i = embedding.depth();
            if (i >= prefix.size() + length) {
                auto v = suffix[i - prefix.size() - length];
                if (! embedding.feasible(v) || ! meter.tick())
                    return false;
                embedding.push(v);
                bool ok = self(self);
                embedding.pop();
                return ok;
            }
            auto & cand = embedding.candidates(interior);
            for (size_t w = cand.find_first(); w < cand.size(); w = cand.find_next(w + 1)) {
                if (! meter.tick())
                    return false;
                embedding.push(Vertex(w));
                bool ok = self(self);
                embedding.pop();
                if (ok)
                    return true;
            }
            return false;
        };

        dfs(dfs);
        if (found) {
            auto result = finish(found, false, meter.nodes(), SequenceKind::Path);
            if (result.witness->vertices.size() >= 2)
                require_valid(g, sys, *result.witness, k, "connect_sequences");
            return result;
        }
        if (meter.exhausted())
            return finish(std::nullopt, true, meter.nodes(), SequenceKind::Path);
    }
    return finish(std::nullopt, false, meter.nodes(), SequenceKind::Path);
}

auto ihs::connect_ends(const Graph & g, const IncompatibilitySystem & sys, const KTuple & e1, const KTuple & e2,
        std::span<const Vertex> avoid, size_t max_interior, const Budget & budget) -> SolveOutcome
{
    if (e1.empty() || e1.size() != e2.size())
        throw Error(ErrorKind::BadParams, "ends must be non-empty tuples of equal length");
    Bitset allowed = all_vertices(g);
    for (auto v : avoid) {
        if (v >= g.order())
            throw Error(ErrorKind::VertexOutOfRange, "avoid set contains vertex " + to_string(v));
        if (std::find(e1.begin(), e1.end(), v) != e1.end() || std::find(e2.begin(), e2.end(), v) != e2.end())
            throw Error(ErrorKind::BadParams, "avoid set meets an end");
        allowed.reset(v);
    }
    auto tail = reversed(e2);
    return connect_sequences(g, sys, e1.size(), e1, tail, allowed, max_interior, budget);
}

auto ihs::enumerate_absorbers_min_mates(const Graph & g, const IncompatibilitySystem & sys, Vertex v, size_t k,
        uint64_t min_mates, optional<size_t> limit, const Bitset * allowed, const Bitset * mate_pool) -> vector<PowerPathWitness>
{
    if (k == 0)
        throw Error(ErrorKind::BadParams, "k must be at least 1");
    if (v >= g.order())
        throw Error(ErrorKind::VertexOutOfRange, "vertex " + to_string(v));

    vector<PowerPathWitness> result;
    if (limit && *limit == 0)
        return result;

    auto plain = Pattern::power(2 * k, k, SequenceKind::Path);
    auto inserted = Pattern::power(2 * k + 1, k, SequenceKind::Path);
    PartialEmbedding a(g, sys, plain), b(g, sys, inserted);
    Bitset pool = allowed ? *allowed : all_vertices(g);
    pool.reset(v);

    std::map<KTuple, bool> rich;
    auto end_ok = [&](KTuple end) {
        if (min_mates == 0)
            return true;
        auto it = rich.find(end);
        if (it == rich.end())
            it = rich.emplace(end, count_mates(g, sys, end, min_mates, mate_pool) >= min_mates).first;
        return it->second;
    };

    auto dfs = [&](auto & self) -> bool {
        size_t d = a.depth();
        if (d == 2 * k) {
            KTuple last(a.image().begin() + k, a.image().end());
            if (end_ok(last)) {
                result.push_back(PowerPathWitness{BaseSequence{a.image(), SequenceKind::Path}, k});
                if (limit && result.size() >= *limit)
                    return false;
            }
            return true;
        }
        Bitset cand = a.candidates(pool);
        cand &= b.candidates(pool);
        for (size_t w = cand.find_first(); w < cand.size(); w = cand.find_next(w + 1)) {
            a.push(Vertex(w));
            b.push(Vertex(w));
            bool go_on = true;
            if (d + 1 == k) {
                KTuple first(a.image().rbegin(), a.image().rend());
                if (b.feasible(v) && end_ok(first)) {
                    b.push(v);
                    go_on = self(self);
                    b.pop();
                }
            }
            else
                go_on = self(self);
            b.pop();
            a.pop();
            if (! go_on)
                return false;
        }
        return true;
    };
    dfs(dfs);

    for (auto & w : result) {
        require_valid(g, sys, w.base, k, "enumerate_absorbers");
        require_valid(g, sys, absorb(w, v), k, "enumerate_absorbers");
    }
    return result;
}

auto ihs::enumerate_absorbers(const Graph & g, const IncompatibilitySystem & sys, Vertex v, size_t k,
        double beta, optional<size_t> limit, const Bitset * allowed) -> vector<PowerPathWitness>
{
    if (beta < 0.0)
        throw Error(ErrorKind::BadParams, "beta must be non-negative");
    uint64_t min_mates = 0;
    if (beta > 0.0)
        min_mates = uint64_t(std::ceil(beta * std::pow(double(g.order()), double(k))));
    return enumerate_absorbers_min_mates(g, sys, v, k, min_mates, limit, allowed);
}

auto ihs::absorb(const PowerPathWitness & absorber, Vertex v) -> BaseSequence
{
    auto & seq = absorber.base.vertices;
    auto k = absorber.k;
    if (seq.size() != 2 * k)
        throw Error(ErrorKind::BadParams, "an absorber has exactly 2k vertices");
    BaseSequence result{vector<Vertex>(seq.begin(), seq.begin() + k), SequenceKind::Path};
    result.vertices.push_back(v);
    result.vertices.insert(result.vertices.end(), seq.begin() + k, seq.end());
    return result;
}

auto ihs::count_compatible_copies(const Graph & g, const IncompatibilitySystem & sys, const Graph & pattern,
        const vector<Bitset> * part_constraints, size_t max_pattern_size) -> uint64_t
{
    auto h = pattern.order();
    if (h > max_pattern_size)
        throw Error(ErrorKind::PatternTooLarge, "pattern has " + to_string(h) + " vertices, limit is " +
                to_string(max_pattern_size));
    if (part_constraints && part_constraints->size() != h)
        throw Error(ErrorKind::BadParams, "need one constraint set per pattern vertex");

    auto shape = Pattern::from_graph(pattern);
    PartialEmbedding embedding(g, sys, shape);
    auto everything = all_vertices(g);
    uint64_t count = 0;

    auto dfs = [&](auto & self) -> void {
        if (embedding.complete()) {
            ++count;
            return;
        }
        auto i = embedding.depth();
        auto & allowed = part_constraints ? (*part_constraints)[i] : everything;
        if (allowed.size() != g.order())
            throw Error(ErrorKind::BadParams, "constraint set has the wrong width");
        auto & cand = embedding.candidates(allowed);
        for (size_t w = cand.find_first(); w < cand.size(); w = cand.find_next(w + 1)) {
            embedding.push(Vertex(w));
            self(self);
            embedding.pop();
        }
    };
    dfs(dfs);
    return count;
}

auto ihs::can_append(const Graph & g, const IncompatibilitySystem & sys, std::span<const Vertex> base,
        size_t k, Vertex w) -> bool
{
    auto s = base.size();
    if (w >= g.order() || std::find(base.begin(), base.end(), w) != base.end())
        return false;
    size_t lo = s > k ? s - k : 0;
    for (size_t j = lo; j < s; ++j) {
        Vertex x = base[j];
        if (! g.adjacent(x, w))
            return false;
        size_t from = j > k ? j - k : 0;
        for (size_t l = from; l < s && l <= j + k; ++l)
            if (l != j && sys.incompatible_at(x, w, base[l]))
                return false;
    }
    for (size_t a = lo; a < s; ++a)
        for (size_t b = a + 1; b < s; ++b)
            if (sys.incompatible_at(w, base[a], base[b]))
                return false;
    return true;
}

namespace
{
    auto clique_extensions(const Graph & g, const IncompatibilitySystem & sys, const vector<Vertex> & seq,
            size_t k, Vertex w, const Bitset & free) -> size_t
    {
        vector<Vertex> top(seq.end() - std::min(seq.size(), k - 1), seq.end());
        top.push_back(w);
        top.push_back(0);
        size_t count = 0;
        free.for_each([&](size_t x) {
            if (x == w)
                return;
            top.back() = Vertex(x);
            if (is_compatible_clique(g, sys, top))
                ++count;
        });
        return count;
    }

    auto pick_extension(const Graph & g, const IncompatibilitySystem & sys, const vector<Vertex> & seq,
            size_t k, const Bitset & free, size_t min_clique_extensions) -> optional<Vertex>
    {
        optional<Vertex> fallback;
        for (size_t w = free.find_first(); w < free.size(); w = free.find_next(w + 1)) {
            if (! can_append(g, sys, seq, k, Vertex(w)))
                continue;
            if (min_clique_extensions == 0 || seq.size() + 1 < k
                    || clique_extensions(g, sys, seq, k, Vertex(w), free) >= min_clique_extensions)
                return Vertex(w);
            if (! fallback)
                fallback = Vertex(w);
        }
        return fallback;
    }
}

auto ihs::greedy_longest_power_path(const Graph & g, const IncompatibilitySystem & sys, const Bitset & allowed,
        size_t k, std::uint64_t seed, const GreedyOptions & options) -> PowerPathWitness
{
    if (k == 0)
        throw Error(ErrorKind::BadParams, "k must be at least 1");
    auto starts = allowed.to_vector();
    if (starts.empty())
        throw Error(ErrorKind::BadParams, "allowed vertex set is empty");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, starts.size() - 1);
    vector<Vertex> best;

    for (size_t r = 0; r < std::max<size_t>(1, options.restarts); ++r) {
        vector<Vertex> seq{Vertex(starts[pick(rng)])};
        Bitset free = allowed;
        free.reset(seq.front());

        auto extend_end = [&] {
            bool grew = false;
            while (auto w = pick_extension(g, sys, seq, k, free, options.min_clique_extensions)) {
                seq.push_back(*w);
                free.reset(*w);
                grew = true;
            }
            return grew;
        };

        extend_end();
        while (true) {
            std::reverse(seq.begin(), seq.end());
            bool front = extend_end();
            std::reverse(seq.begin(), seq.end());
            bool back = extend_end();
            if (! front && ! back)
                break;
        }

        if (seq.size() > best.size())
            best = std::move(seq);
    }

    PowerPathWitness result{BaseSequence{best, SequenceKind::Path}, k};
    require_valid(g, sys, result.base, k, "greedy_longest_power_path");
    return result;
}

auto ihs::filter_good_mates(const Graph & g, const IncompatibilitySystem & sys, const PowerPathWitness & p,
        optional<Vertex> insert, const vector<KTuple> & mates) -> vector<KTuple>
{
    auto k = p.k;
    auto & seq = p.base.vertices;
    if (seq.size() < 2 * k)
        throw Error(ErrorKind::BadParams, "the path needs at least 2k vertices");

    vector<Vertex> plain(seq.end() - 2 * k, seq.end());
    vector<Vertex> with_insert = plain;
    if (insert)
        with_insert.insert(with_insert.begin() + k, *insert);

    vector<KTuple> result;
    for (auto & f : mates) {
        BaseSequence a{plain, SequenceKind::Path};
        a.vertices.insert(a.vertices.end(), f.begin(), f.end());
        if (! check_power_witness(g, sys, a, k).valid)
            continue;
        if (insert) {
            BaseSequence b{with_insert, SequenceKind::Path};
            b.vertices.insert(b.vertices.end(), f.begin(), f.end());
            if (! check_power_witness(g, sys, b, k).valid)
                continue;
        }
        result.push_back(f);
    }
    return result;
}
