#ifndef IHS_SOLVER_HPP
#define IHS_SOLVER_HPP 1

#include <ihs/embedding.hpp>
#include <ihs/graph.hpp>
#include <ihs/incompat.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ihs
{
    /// Ordered k-tuple of distinct vertices: the end of a power path.
    using KTuple = std::vector<Vertex>;

    auto reversed(const KTuple & e) -> KTuple;

    /// A base path together with the power k; claims that the k-th power of
    /// the base is a compatible subgraph.
    struct PowerPathWitness
    {
        BaseSequence base;
        std::size_t k = 1;

        friend auto operator==(const PowerPathWitness &, const PowerPathWitness &) -> bool = default;
    };

    enum class SolveStatus
    {
        Sat,
        Unsat,
        Timeout
    };

    auto to_string(SolveStatus status) -> std::string;

    struct SolveOutcome
    {
        SolveStatus status = SolveStatus::Unsat;
        std::optional<BaseSequence> witness;
        std::uint64_t nodes_expanded = 0;
    };

    struct SolveOptions
    {
        Budget budget;
        /// Worker count for the top-level branch split; 1 is the deterministic
        /// single-threaded mode.
        unsigned threads = 1;
    };

    /// Independent checker: does the k-th power of base exist in g and is it
    /// compatible? Builds the edge set from power_edges and runs
    /// is_compatible; shares no state with the search code.
    struct WitnessCheck
    {
        bool valid = false;
        std::string reason;
    };

    auto check_power_witness(const Graph & g, const IncompatibilitySystem & sys,
            const BaseSequence & base, std::size_t k) -> WitnessCheck;

    /// As check_power_witness, additionally requiring a cycle through every
    /// vertex of g.
    auto check_hamilton_power(const Graph & g, const IncompatibilitySystem & sys,
            const BaseSequence & base, std::size_t k) -> WitnessCheck;

    /// Does the vertex set of e induce a compatible complete graph?
    auto is_compatible_clique(const Graph & g, const IncompatibilitySystem & sys, std::span<const Vertex> e) -> bool;

    /// Mates of e: k-tuples f disjoint from e such that e followed by f is a
    /// compatible k-th power of a path on 2k vertices. Returns at most limit
    /// (when given) in lexicographic order. If allowed is given, every vertex
    /// of f must lie in it. Throws NotACompatibleClique if e does not induce a
    /// compatible K_k.
    auto enumerate_mates(const Graph & g, const IncompatibilitySystem & sys, const KTuple & e,
            std::optional<std::size_t> limit = std::nullopt, const Bitset * allowed = nullptr) -> std::vector<KTuple>;

    /// M(e), counting no further than cap when cap is given.
    auto count_mates(const Graph & g, const IncompatibilitySystem & sys, const KTuple & e,
            std::optional<std::uint64_t> cap = std::nullopt, const Bitset * allowed = nullptr) -> std::uint64_t;

    /// Compatible k-th power of a Hamilton cycle. Vertex 0 is fixed first and
    /// reflections are broken by requiring the second vertex to be smaller
    /// than the last, so Unsat means the whole space was exhausted.
    auto solve_power_hamilton(const Graph & g, const IncompatibilitySystem & sys, std::size_t k,
            const SolveOptions & options = {}) -> SolveOutcome;

    /// Partition into n/r compatible r-cliques. The witness lists the cliques
    /// consecutively. Throws BadDivisibility unless r divides n.
    auto solve_clique_factor(const Graph & g, const IncompatibilitySystem & sys, std::size_t r,
            const SolveOptions & options = {}) -> SolveOutcome;

    /// Splits a clique-factor witness (or any sequence) into consecutive
    /// blocks of size r.
    auto factor_blocks(const BaseSequence & witness, std::size_t r) -> std::vector<std::vector<Vertex>>;

    /// Called on every complete base sequence a connection search finds;
    /// returning false rejects it and the search continues.
    using ConnectionFilter = std::function<bool (const std::vector<Vertex> &)>;

    /// Shortest interior Q drawn from allowed such that prefix Q suffix is a
    /// compatible k-th power of a path. Interior lengths 0..max_interior are
    /// tried in order.
    auto connect_sequences(const Graph & g, const IncompatibilitySystem & sys, std::size_t k,
            std::span<const Vertex> prefix, std::span<const Vertex> suffix,
            const Bitset & allowed, std::size_t max_interior,
            const Budget & budget = {}, const ConnectionFilter & filter = {}) -> SolveOutcome;

    /// Compatible power path u_1..u_k Q v_k..v_1 with at most max_interior
    /// interior vertices, all outside avoid. The ends of the witness are the
    /// reverses of e1 and e2. The witness is the full base sequence.
    auto connect_ends(const Graph & g, const IncompatibilitySystem & sys, const KTuple & e1, const KTuple & e2,
            std::span<const Vertex> avoid, std::size_t max_interior, const Budget & budget = {}) -> SolveOutcome;

    /// Absorbers for v: compatible k-th powers of paths a_1..a_2k such that
    /// a_1..a_k v a_{k+1}..a_2k is also compatible. With beta > 0 both ends
    /// must additionally have at least beta * n^k mates. If allowed is given,
    /// the a_i are drawn from it.
    auto enumerate_absorbers(const Graph & g, const IncompatibilitySystem & sys, Vertex v, std::size_t k,
            double beta, std::optional<std::size_t> limit = std::nullopt,
            const Bitset * allowed = nullptr) -> std::vector<PowerPathWitness>;

    /// As enumerate_absorbers, with the mate threshold given as an absolute
    /// count and mates of the ends drawn from mate_pool (all of V when null).
    auto enumerate_absorbers_min_mates(const Graph & g, const IncompatibilitySystem & sys, Vertex v, std::size_t k,
            std::uint64_t min_mates, std::optional<std::size_t> limit,
            const Bitset * allowed, const Bitset * mate_pool = nullptr) -> std::vector<PowerPathWitness>;

    /// Inserts v between positions k and k+1 of an absorber.
    auto absorb(const PowerPathWitness & absorber, Vertex v) -> BaseSequence;

    inline constexpr std::size_t default_max_pattern_size = 8;

    /// Number of injective maps of pattern into g whose image edges exist and
    /// form a compatible subgraph, with pattern vertex i mapped into
    /// part_constraints[i] when constraints are given. Throws PatternTooLarge
    /// beyond max_pattern_size vertices.
    auto count_compatible_copies(const Graph & g, const IncompatibilitySystem & sys, const Graph & pattern,
            const std::vector<Bitset> * part_constraints = nullptr,
            std::size_t max_pattern_size = default_max_pattern_size) -> std::uint64_t;

    struct GreedyOptions
    {
        std::size_t restarts = 8;
        /// When positive, extensions whose new last k-set has fewer than this
        /// many compatible (k+1)-clique extensions are tried last.
        std::size_t min_clique_extensions = 0;
    };

    /// Can w be appended to the end of base (as a k-th power of a path)?
    auto can_append(const Graph & g, const IncompatibilitySystem & sys, std::span<const Vertex> base,
            std::size_t k, Vertex w) -> bool;

    /// A compatible power path inside allowed that no single vertex of allowed
    /// extends at either end. Each restart starts from a seeded random vertex
    /// and extends with the lowest feasible id; the longest is returned.
    auto greedy_longest_power_path(const Graph & g, const IncompatibilitySystem & sys, const Bitset & allowed,
            std::size_t k, std::uint64_t seed, const GreedyOptions & options = {}) -> PowerPathWitness;

    /// Keeps the mates f of P's end for which a_1..a_k u_1..u_k f and, when
    /// insert is given, a_1..a_k insert u_1..u_k f are compatible; a_1..u_k are
    /// the last 2k vertices of P's base.
    auto filter_good_mates(const Graph & g, const IncompatibilitySystem & sys, const PowerPathWitness & p,
            std::optional<Vertex> insert, const std::vector<KTuple> & mates) -> std::vector<KTuple>;
}

#endif
