#ifndef IHS_INCOMPAT_HPP
#define IHS_INCOMPAT_HPP 1

#include <ihs/bitset.hpp>
#include <ihs/graph.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ihs
{
    /// A pair {e, f} of edges meeting exactly at a vertex, stored with e < f.
    struct EdgePair
    {
        EdgeId first;
        EdgeId second;

        friend auto operator<=>(const EdgePair &, const EdgePair &) = default;
    };

    /// Per-vertex families F_v of forbidden edge pairs over a fixed graph.
    ///
    /// A pair {vx, vy} in F_v is stored as bit y of the row for (v, x) and
    /// bit x of the row for (v, y), so "is vx incompatible with vy at v" is a
    /// single bit test and the set of all y blocked by vx is a row.
    class IncompatibilitySystem
    {
        public:
            IncompatibilitySystem() = default;

            /// The empty system over g.
            explicit IncompatibilitySystem(const Graph & g);

            auto order() const noexcept -> std::size_t { return _n; }

            /// Adds {e1, e2} to F_v. Returns false if it was already present.
            /// Throws EdgeOutOfRange for unknown ids, InvalidPair if the edges
            /// are equal or do not meet exactly at v.
            auto add_pair(const Graph & g, Vertex v, EdgeId e1, EdgeId e2) -> bool;

            /// Removes {e1, e2} from F_v. Returns false if it was absent.
            auto remove_pair(const Graph & g, Vertex v, EdgeId e1, EdgeId e2) -> bool;

            /// Are edges vx and vy incompatible at v?
            auto incompatible_at(Vertex v, Vertex x, Vertex y) const noexcept -> bool
            {
                return _pair_count && _rows[v * _n + x].test(y);
            }

            /// Vertices y such that {vx, vy} is in F_v.
            auto conflicts(Vertex v, Vertex x) const noexcept -> const Bitset & { return _rows[v * _n + x]; }

            /// Number of pairs in F_v that contain edge vx.
            auto local_count(Vertex v, Vertex x) const noexcept -> std::size_t { return _counts[v * _n + x]; }

            /// F_v in canonical order (by first, then second edge id).
            auto pairs_at(const Graph & g, Vertex v) const -> std::vector<EdgePair>;

            auto pair_count() const noexcept -> std::size_t { return _pair_count; }
            auto empty() const noexcept -> bool { return _pair_count == 0; }

            friend auto operator==(const IncompatibilitySystem & a, const IncompatibilitySystem & b) -> bool
            {
                return a._n == b._n && a._pair_count == b._pair_count && a._rows == b._rows;
            }

        private:
            auto check_pair(const Graph & g, Vertex v, EdgeId e1, EdgeId e2) const -> std::pair<Vertex, Vertex>;

            std::size_t _n = 0;
            std::size_t _pair_count = 0;
            std::vector<Bitset> _rows;
            std::vector<std::uint32_t> _counts;
    };

    /// Minimal Δ for which sys is Δ-bounded.
    auto boundedness(const IncompatibilitySystem & sys) -> std::size_t;

    struct Violation
    {
        Vertex vertex;
        EdgeId first;
        EdgeId second;

        friend auto operator<=>(const Violation &, const Violation &) = default;
    };

    struct CompatibilityVerdict
    {
        bool compatible = true;
        std::optional<Violation> violation;
    };

    /// Decides whether the subgraph with the given edges is compatible. On
    /// failure reports the least violation ordered by (vertex, first edge,
    /// second edge). Throws EdgeOutOfRange for unknown edge ids.
    auto is_compatible(const Graph & g, const IncompatibilitySystem & sys,
            std::span<const EdgeId> subgraph_edges) -> CompatibilityVerdict;

    /// Is e compatible with every edge of s at their shared endpoints? Same
    /// answer as is_compatible on s ∪ {e} restricted to pairs involving e.
    auto compatible_with(const Graph & g, const IncompatibilitySystem & sys,
            EdgeId e, std::span<const EdgeId> s) -> bool;

    /// Rejection-sampled system with boundedness at most bound. Deterministic
    /// in seed.
    auto gen_random_system(const Graph & g, std::size_t bound, std::uint64_t seed) -> IncompatibilitySystem;

    using Color = std::int64_t;

    /// Adjacent edges are incompatible exactly when they share a colour.
    /// coloring[e] is the colour of edge e; throws MissingColor if any entry is
    /// unset or the span is shorter than |E|.
    auto gen_color_system(const Graph & g, std::span<const std::optional<Color>> coloring) -> IncompatibilitySystem;
}

#endif
