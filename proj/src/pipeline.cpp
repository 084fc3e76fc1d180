#include <ihs/pipeline.hpp>
#include <ihs/error.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace ihs;

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace
{
    auto full_set(const Graph & g) -> Bitset
    {
        Bitset b(g.order());
        b.set_all();
        return b;
    }

    auto set_of(const Graph & g, const vector<Vertex> & vs) -> Bitset
    {
        Bitset b(g.order());
        for (auto v : vs)
            b.set(v);
        return b;
    }

    auto count_in(const Bitset & set, const Bitset & row) -> size_t
    {
        Bitset t = set;
        t &= row;
        return t.count();
    }

    /// Checks A1..A4 for one sample; returns the name and reason of the first
    /// violated property.
    auto reservoir_violation(const Graph & g, const IncompatibilitySystem & sys, const vector<Vertex> & r,
            double p, double gamma, size_t k, const ReservoirChecks & checks, std::mt19937_64 & rng) -> optional<string>
    {
        auto n = double(g.order());
        auto size = double(r.size());
        if (r.empty() || size < 0.5 * p * n || size > 1.5 * p * n)
            return "A1: |R| = " + to_string(r.size()) + " outside [pn/2, 3pn/2]";

        auto in_r = set_of(g, r);
        double need = (double(k) / double(k + 1) + gamma / 2.0) * size;
        for (Vertex v = 0; v < g.order(); ++v)
            if (double(count_in(in_r, g.neighbours(v))) < need)
                return "A2: d_R(" + to_string(v) + ") below (k/(k+1) + gamma/2)|R|";

        std::uniform_int_distribution<Vertex> any_vertex(0, Vertex(g.order() - 1));
        auto everything = full_set(g);

        for (size_t s = 0; s < checks.absorber_samples; ++s) {
            auto v = any_vertex(rng);
            auto in_g = greedy_disjoint_absorbers(g, sys, v, k, checks.min_mates, everything);
            double threshold = std::pow(p, double(2 * k)) / 2.0 * double(in_g.size());
            if (threshold <= 0.0)
                continue;
            auto in_reservoir = greedy_disjoint_absorbers(g, sys, v, k, checks.min_mates, in_r, nullptr,
                    size_t(std::ceil(threshold)));
            if (double(in_reservoir.size()) < threshold)
                return "A3: vertex " + to_string(v) + " has " + to_string(in_reservoir.size()) +
                    " disjoint absorbers in R, needs " + to_string(threshold);
        }

        for (size_t s = 0, attempts = 0; s < checks.mate_samples && attempts < 20 * checks.mate_samples; ++attempts) {
            KTuple e;
            while (e.size() < k) {
                auto v = any_vertex(rng);
                if (std::find(e.begin(), e.end(), v) == e.end())
                    e.push_back(v);
            }
            if (! is_compatible_clique(g, sys, e))
                continue;
            auto total = count_mates(g, sys, e);
            if (total == 0 || total < checks.min_mates)
                continue;
            ++s;
            double threshold = std::pow(p, double(k)) / 2.0 * double(total);
            auto inside = count_mates(g, sys, e, uint64_t(std::ceil(threshold)), &in_r);
            if (double(inside) < threshold)
                return "A4: a tuple keeps " + to_string(inside) + " mates in R, needs " + to_string(threshold);
        }
        return std::nullopt;
    }

    /// A base sequence with absorber slots: slot v may be inserted between
    /// base[after] and base[after + 1].
    struct Slot
    {
        Vertex v;
        size_t after;
    };

    struct Chain
    {
        vector<Vertex> base;
        vector<Slot> slots;
    };

    auto flip(const Chain & c) -> Chain
    {
        Chain result{vector<Vertex>(c.base.rbegin(), c.base.rend()), {}};
        for (auto s : c.slots)
            result.slots.push_back(Slot{s.v, c.base.size() - 2 - s.after});
        return result;
    }

    struct Window
    {
        vector<Vertex> base;
        vector<Slot> slots;
    };

    auto tail_window(const Chain & c, size_t width, const Bitset & placed) -> Window
    {
        width = std::min(width, c.base.size());
        size_t from = c.base.size() - width;
        Window w{vector<Vertex>(c.base.begin() + from, c.base.end()), {}};
        for (auto s : c.slots)
            if (s.after >= from && s.after + 1 < c.base.size() && ! placed.test(s.v))
                w.slots.push_back(Slot{s.v, s.after - from});
        return w;
    }

    auto head_window(const Chain & c, size_t width, const Bitset & placed) -> Window
    {
        width = std::min(width, c.base.size());
        Window w{vector<Vertex>(c.base.begin(), c.base.begin() + width), {}};
        for (auto s : c.slots)
            if (s.after + 1 < width && ! placed.test(s.v))
                w.slots.push_back(Slot{s.v, s.after});
        return w;
    }

    auto with_insertions(const Window & w, unsigned mask) -> vector<Vertex>
    {
        vector<Vertex> result;
        for (size_t i = 0; i < w.base.size(); ++i) {
            result.push_back(w.base[i]);
            for (size_t s = 0; s < w.slots.size(); ++s)
                if ((mask >> s) & 1u && w.slots[s].after == i)
                    result.push_back(w.slots[s].v);
        }
        return result;
    }

    /// Every presence combination of the slots near the joint keeps
    /// left Q right compatible.
    auto joint_variants_ok(const Graph & g, const IncompatibilitySystem & sys, size_t k,
            const Window & left, const vector<Vertex> & interior, const Window & right) -> bool
    {
        auto m = left.slots.size() + right.slots.size();
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            if (mask == 0)
                continue;
            auto seq = with_insertions(left, mask & ((1u << left.slots.size()) - 1));
            seq.insert(seq.end(), interior.begin(), interior.end());
            auto tail = with_insertions(right, mask >> left.slots.size());
            seq.insert(seq.end(), tail.begin(), tail.end());
            if (! check_power_witness(g, sys, BaseSequence{seq, SequenceKind::Path}, k).valid)
                return false;
        }
        return true;
    }

    /// Shortest interior from allowed joining the end of left to the start
    /// of right, containing every required vertex.
    auto find_joint(const Graph & g, const IncompatibilitySystem & sys, size_t k, const Chain & left,
            const Chain & right, const Bitset & allowed, const Bitset & placed, size_t max_interior,
            const Budget & budget, const vector<Vertex> & required = {}) -> optional<vector<Vertex>>
    {
        auto wide = 3 * k + 1;
        auto lw = tail_window(left, wide, placed);
        auto rw = head_window(right, wide, placed);
        auto pl = std::min(left.base.size(), 2 * k);
        auto sl = std::min(right.base.size(), 2 * k);
        vector<Vertex> prefix(left.base.end() - pl, left.base.end());
        vector<Vertex> suffix(right.base.begin(), right.base.begin() + sl);

        auto filter = [&](const vector<Vertex> & image) {
            vector<Vertex> interior(image.begin() + pl, image.end() - sl);
            for (auto v : required)
                if (std::find(interior.begin(), interior.end(), v) == interior.end())
                    return false;
            if (lw.slots.empty() && rw.slots.empty())
                return true;
            auto l = lw, r = rw;
            auto drop = [&](Window & w) {
                std::erase_if(w.slots, [&](const Slot & s) {
                    return std::find(interior.begin(), interior.end(), s.v) != interior.end();
                });
            };
            drop(l);
            drop(r);
            return joint_variants_ok(g, sys, k, l, interior, r);
        };

        auto outcome = connect_sequences(g, sys, k, prefix, suffix, allowed, max_interior, budget, filter);
        if (outcome.status != SolveStatus::Sat)
            return std::nullopt;
        auto & w = outcome.witness->vertices;
        return vector<Vertex>(w.begin() + pl, w.end() - sl);
    }

    auto concat(const Chain & left, const vector<Vertex> & interior, const Chain & right) -> Chain
    {
        Chain result = left;
        result.base.insert(result.base.end(), interior.begin(), interior.end());
        auto shift = result.base.size();
        result.base.insert(result.base.end(), right.base.begin(), right.base.end());
        for (auto s : right.slots)
            result.slots.push_back(Slot{s.v, s.after + shift});
        return result;
    }

    auto describe(const vector<Vertex> & vs) -> string
    {
        std::ostringstream out;
        out << vs.size() << " vertices";
        return out.str();
    }

    class Run
    {
        public:
            Run(const Graph & g, const IncompatibilitySystem & sys, size_t k, double gamma,
                    const PipelineParams & params, uint64_t seed, PipelineReport & report) :
                _g(g), _sys(sys), _k(k), _gamma(gamma), _params(params), _seed(seed), _report(report),
                _placed(g.order()), _reservoir(g.order())
            {
                _max_interior = params.max_interior.value_or(3 * k + 6);
                _min_segment = params.min_segment.value_or(3 * (k + 1));
            }

            auto go() -> void;

        private:
            auto fail(const string & stage, const string & reason) -> void
            {
                _report.failure = PipelineFailure{stage, reason};
            }

            auto record(const string & stage, vector<Vertex> vs, const string & detail = "") -> void
            {
                _report.stages.push_back(StageRecord{stage, std::move(vs), detail});
            }

            auto place(const vector<Vertex> & vs) -> void
            {
                for (auto v : vs)
                    _placed.set(v);
            }

            auto guard_ok(const string & stage) -> bool
            {
                if (! _params.enforce_avoid_guard)
                    return true;
                double n = double(_g.order());
                double cap = std::min(_gamma * n / 2.0, _params.beta * n / 2.0);
                if (double(_placed.count()) >= cap) {
                    fail(stage, "avoid set of " + to_string(_placed.count()) + " vertices reaches the guard " + to_string(cap));
                    return false;
                }
                return true;
            }

            /// A joint from pool between left and right, threading through as
            /// many leftover vertices as it can (greedily, in id order).
            auto joint_with_leftovers(const Chain & left, const Chain & right, const Bitset & pool)
                -> optional<vector<Vertex>>
            {
                Bitset allowed = pool;
                allowed.subtract(_placed);
                auto joint = find_joint(_g, _sys, _k, left, right, allowed, _placed, _max_interior,
                        _params.connect_budget);
                if (! joint)
                    return std::nullopt;

                vector<Vertex> taken;
                for (auto v : _leftover) {
                    if (_placed.test(v))
                        continue;
                    auto required = taken;
                    required.push_back(v);
                    Bitset with = allowed;
                    for (auto r : required)
                        with.set(r);
                    auto cap = std::min(_max_interior, required.size() + 2 * _k);
                    auto better = find_joint(_g, _sys, _k, left, right, with, _placed, cap,
                            _params.rest_budget, required);
                    if (better) {
                        joint = better;
                        taken = required;
                    }
                }
                return joint;
            }

            /// Joins piece (either orientation) onto the end of chain with an
            /// interior from pool.
            auto append(Chain & chain, const Chain & piece, const Bitset & pool, const string & stage) -> bool
            {
                if (! guard_ok(stage))
                    return false;
                for (auto & candidate : {piece, flip(piece)}) {
                    auto joint = joint_with_leftovers(chain, candidate, pool);
                    if (joint) {
                        place(*joint);
                        record(stage, *joint, "connection with " + describe(*joint) + " interior" +
                                leftovers_in(*joint));
                        chain = concat(chain, *joint, candidate);
                        return true;
                    }
                }
                fail(stage, "no connection within " + to_string(_max_interior) + " interior vertices");
                return false;
            }

            auto leftovers_in(const vector<Vertex> & interior) const -> string
            {
                string out;
                for (auto v : interior)
                    if (std::find(_leftover.begin(), _leftover.end(), v) != _leftover.end())
                        out += (out.empty() ? ", threading leftover " : ", ") + to_string(v);
                return out;
            }

            auto leftover_absorber(Vertex v, const string & stage) -> optional<Chain>
            {
                Bitset allowed = _reservoir;
                allowed.subtract(_placed);
                Bitset pool = allowed;
                auto found = enumerate_absorbers_min_mates(_g, _sys, v, _k, _params.reservoir_min_mates, 1,
                        &allowed, &pool);
                if (found.empty()) {
                    fail(stage, "no absorber for leftover vertex " + to_string(v) + " inside the reservoir");
                    return std::nullopt;
                }
                auto absorbed = absorb(found.front(), v);
                place(absorbed.vertices);
                record(stage, absorbed.vertices, "absorber for leftover vertex " + to_string(v));
                return Chain{absorbed.vertices, {}};
            }

            const Graph & _g;
            const IncompatibilitySystem & _sys;
            size_t _k;
            double _gamma;
            const PipelineParams & _params;
            uint64_t _seed;
            PipelineReport & _report;
            Bitset _placed;
            Bitset _reservoir;
            size_t _max_interior = 0;
            size_t _min_segment = 0;
            /// Vertices the cover left behind; joins may thread them.
            vector<Vertex> _leftover;
    };

    auto Run::go() -> void
    {
        auto n = _g.order();
        auto everything = full_set(_g);

        // Reservoir
        ReservoirChecks checks = _params.checks;
        uint64_t beta_mates = uint64_t(std::ceil(_params.beta * std::pow(double(n), double(_k))));
        if (checks.min_mates == 0)
            checks.min_mates = beta_mates;
        Reservoir reservoir;
        try {
            reservoir = sample_reservoir(_g, _sys, _params.p, _gamma, _k, _seed, _params.max_retries, checks);
        }
        catch (const Error & e) {
            if (e.kind() != ErrorKind::ReservoirFailure)
                throw;
            fail("reservoir", e.what());
            return;
        }
        _reservoir = set_of(_g, reservoir.vertices);
        record("reservoir", reservoir.vertices, "retries " + to_string(reservoir.retries_used));

        // Connecting absorbers: one robust absorber per reservoir vertex,
        // outside the reservoir, chained through V - R.
        Bitset outside = everything;
        outside.subtract(_reservoir);
        vector<Chain> absorbers;
        for (auto v : reservoir.vertices) {
            Bitset allowed = outside;
            allowed.subtract(_placed);
            auto found = enumerate_absorbers_min_mates(_g, _sys, v, _k, beta_mates, 1, &allowed);
            if (found.empty()) {
                fail("absorbers", "no disjoint absorber for reservoir vertex " + to_string(v));
                return;
            }
            place(found.front().base.vertices);
            record("absorbers", found.front().base.vertices, "absorber for " + to_string(v));
            absorbers.push_back(Chain{found.front().base.vertices, {Slot{v, _k - 1}}});
        }

        Chain chain = absorbers.front();
        for (size_t i = 1; i < absorbers.size(); ++i)
            if (! append(chain, absorbers[i], outside, "connect-absorbers"))
                return;

        // Almost cover of what is left outside the reservoir.
        Bitset remaining = outside;
        remaining.subtract(_placed);
        double limit = _params.tau * double(n);
        vector<Chain> segments;
        while (remaining.any() && double(remaining.count()) >= limit) {
            GreedyOptions options{_params.greedy_restarts, _params.min_clique_extensions};
            auto path = greedy_longest_power_path(_g, _sys, remaining, _k,
                    _seed ^ (0x9e3779b97f4a7c15ull * (segments.size() + 1)), options);
            auto seq = path.base.vertices;

            Bitset mate_pool = _reservoir;
            mate_pool.subtract(_placed);
            auto end_rich = [&](KTuple end) {
                return count_mates(_g, _sys, end, _params.reservoir_min_mates, &mate_pool) >= _params.reservoir_min_mates;
            };
            // Fewer than min_segment vertices left: a shorter final segment
            // is accepted, or the rest is left over.
            bool final_piece = remaining.count() < _min_segment;
            size_t need = final_piece ? 2 * _k : std::max(_min_segment, 2 * _k);
            while (seq.size() >= need && ! end_rich(KTuple(seq.end() - _k, seq.end())))
                seq.pop_back();
            while (seq.size() >= need && ! end_rich(KTuple(seq.rend() - _k, seq.rend())))
                seq.erase(seq.begin());

            if (seq.size() < need) {
                if (final_piece)
                    break;
                fail("cover", to_string(remaining.count()) + " vertices remain but the longest usable segment has " +
                        to_string(seq.size()) + " vertices");
                return;
            }
            for (auto v : seq)
                remaining.reset(v);
            place(seq);
            record("cover", seq, "segment of " + describe(seq));
            segments.push_back(Chain{seq, {}});
        }

        for (auto v : remaining.to_vector())
            _leftover.push_back(Vertex(v));

        for (auto & segment : segments)
            if (! append(chain, segment, _reservoir, "connect-cover"))
                return;

        // Leftover vertices no joint could thread get an absorber inside the
        // reservoir: the first forms the sandwich, the rest follow.
        bool first = true;
        for (auto v : _leftover) {
            if (_placed.test(v))
                continue;
            string stage = first ? "sandwich" : "rest";
            first = false;
            auto piece = leftover_absorber(v, stage);
            if (! piece)
                return;
            if (! append(chain, *piece, _reservoir, stage))
                return;
        }

        // Close the cycle through the reservoir.
        if (chain.base.size() < 2 * (3 * _k + 1)) {
            fail("close", "chain of " + to_string(chain.base.size()) + " vertices is too short to close");
            return;
        }
        if (! guard_ok("close"))
            return;
        auto joint = joint_with_leftovers(chain, chain, _reservoir);
        if (! joint) {
            fail("close", "no closing connection within " + to_string(_max_interior) + " interior vertices");
            return;
        }
        place(*joint);
        record("close", *joint, "closing connection with " + describe(*joint) + " interior" + leftovers_in(*joint));
        for (auto v : _leftover)
            if (! _placed.test(v)) {
                fail("close", "leftover vertex " + to_string(v) + " was dropped");
                return;
            }
        auto cycle = chain.base;
        cycle.insert(cycle.end(), joint->begin(), joint->end());

        // Absorb every reservoir vertex the cycle missed.
        auto slots = chain.slots;
        std::sort(slots.begin(), slots.end(), [](const Slot & a, const Slot & b) { return a.after > b.after; });
        vector<Vertex> inserted;
        for (auto s : slots)
            if (! _placed.test(s.v)) {
                cycle.insert(cycle.begin() + s.after + 1, s.v);
                inserted.push_back(s.v);
            }
        std::sort(inserted.begin(), inserted.end());
        place(inserted);
        record("absorption", inserted, "absorbed " + describe(inserted));

        BaseSequence certificate{cycle, SequenceKind::Cycle};
        auto check = check_hamilton_power(_g, _sys, certificate, _k);
        if (! check.valid) {
            fail("absorption", "final cycle rejected by the validator: " + check.reason);
            return;
        }
        _report.certificate = std::move(certificate);
    }
}

auto ihs::greedy_disjoint_absorbers(const Graph & g, const IncompatibilitySystem & sys, Vertex v, size_t k,
        uint64_t min_mates, const Bitset & allowed, const Bitset * mate_pool, size_t max_count) -> vector<PowerPathWitness>
{
    vector<PowerPathWitness> result;
    Bitset pool = allowed;
    while (result.size() < max_count) {
        auto found = enumerate_absorbers_min_mates(g, sys, v, k, min_mates, 1, &pool, mate_pool);
        if (found.empty())
            break;
        for (auto u : found.front().base.vertices)
            pool.reset(u);
        result.push_back(std::move(found.front()));
    }
    return result;
}

auto ihs::sample_reservoir(const Graph & g, const IncompatibilitySystem & sys, double p, double gamma, size_t k,
        uint64_t seed, size_t max_retries, const ReservoirChecks & checks) -> Reservoir
{
    if (! (p >= 0.0 && p <= 1.0))
        throw Error(ErrorKind::BadParams, "p must lie in [0, 1]");
    if (k == 0)
        throw Error(ErrorKind::BadParams, "k must be at least 1");
    if (g.order() == 0)
        throw Error(ErrorKind::BadParams, "empty graph");
    if (p == 0.0)
        throw Error(ErrorKind::ReservoirFailure, "A1: p = 0 gives an empty reservoir");

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution include(p);
    string last;
    for (size_t attempt = 0; attempt <= max_retries; ++attempt) {
        vector<Vertex> r;
        for (Vertex v = 0; v < g.order(); ++v)
            if (include(rng))
                r.push_back(v);
        auto violation = reservoir_violation(g, sys, r, p, gamma, k, checks, rng);
        if (! violation)
            return Reservoir{std::move(r), p, attempt};
        last = *violation;
    }
    throw Error(ErrorKind::ReservoirFailure, last + " (after " + to_string(max_retries) + " retries)");
}

auto ihs::validate(const PipelineParams & params) -> void
{
    if (! (params.p > 0.0 && params.p <= 1.0))
        throw Error(ErrorKind::BadParams, "p must lie in (0, 1]");
    if (! (params.tau >= 0.0 && params.tau <= 1.0))
        throw Error(ErrorKind::BadParams, "tau must lie in [0, 1]");
    if (! (params.beta >= 0.0))
        throw Error(ErrorKind::BadParams, "beta must be non-negative");
    if (params.min_segment && *params.min_segment == 0)
        throw Error(ErrorKind::BadParams, "min_segment must be positive");
    if (params.greedy_restarts == 0)
        throw Error(ErrorKind::BadParams, "greedy_restarts must be positive");
}

auto ihs::run_pipeline(const Graph & g, const IncompatibilitySystem & sys, size_t k, double gamma,
        const PipelineParams & params, uint64_t seed) -> PipelineReport
{
    validate(params);
    if (k == 0)
        throw Error(ErrorKind::BadParams, "k must be at least 1");
    if (gamma < 0.0)
        throw Error(ErrorKind::BadParams, "gamma must be non-negative");
    if (g.order() < 2 * k + 1)
        throw Error(ErrorKind::BadParams, "graph too small for the pipeline");

    PipelineReport report;
    report.k = k;
    report.gamma = gamma;
    report.seed = seed;
    report.mu_bound = boundedness(sys);
    report.params = params;

    Run run(g, sys, k, gamma, params, seed, report);
    run.go();
    return report;
}
