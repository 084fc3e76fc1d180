#ifndef IHS_EMBEDDING_HPP
#define IHS_EMBEDDING_HPP 1

#include <ihs/bitset.hpp>
#include <ihs/graph.hpp>
#include <ihs/incompat.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <vector>

namespace ihs
{
    /// A labelled pattern graph whose vertices are embedded in index order.
    class Pattern
    {
        public:
            /// k-th power of a path or cycle on length positions.
            static auto power(std::size_t length, std::size_t k, SequenceKind kind) -> Pattern;

            static auto from_graph(const Graph & h) -> Pattern;

            auto size() const noexcept -> std::size_t { return _adjacent.size(); }

            /// Neighbours of position i with a smaller index.
            auto back(std::size_t i) const noexcept -> const std::vector<std::uint32_t> & { return _back[i]; }

            /// All neighbours of position i, ascending.
            auto adjacent(std::size_t i) const noexcept -> const std::vector<std::uint32_t> & { return _adjacent[i]; }

        private:
            explicit Pattern(std::vector<std::vector<std::uint32_t>> adjacent);

            std::vector<std::vector<std::uint32_t>> _adjacent;
            std::vector<std::vector<std::uint32_t>> _back;
    };

    /// Injective, edge-preserving, compatibility-preserving partial map from
    /// a pattern prefix 0..depth()-1 into the host graph. Extension is
    /// checked locally: the new edges at the new vertex pairwise, and each new
    /// edge against the already-embedded edges at its other endpoint.
    class PartialEmbedding
    {
        public:
            PartialEmbedding(const Graph & g, const IncompatibilitySystem & sys, const Pattern & pattern);

            auto depth() const noexcept -> std::size_t { return _image.size(); }
            auto complete() const noexcept -> bool { return _image.size() == _pattern->size(); }
            auto image() const noexcept -> const std::vector<Vertex> & { return _image; }
            auto used() const noexcept -> const Bitset & { return _used; }

            /// Can w be placed at position depth()?
            auto feasible(Vertex w) const -> bool;

            /// Every w that is feasible at position depth(), restricted to
            /// allowed. The returned reference stays valid until the next call
            /// at the same depth.
            auto candidates(const Bitset & allowed) const -> const Bitset &;

            auto push(Vertex w) -> void;
            auto pop() -> void;

        private:
            auto pairs_ok_at(Vertex w) const -> bool;

            const Graph * _g;
            const IncompatibilitySystem * _sys;
            const Pattern * _pattern;
            std::vector<Vertex> _image;
            Bitset _used;
            mutable std::vector<Bitset> _scratch;
    };

    /// Node and wall-clock limits for exact searches; zero means unlimited.
    struct Budget
    {
        std::uint64_t max_nodes = 0;
        double max_seconds = 0.0;
    };

    /// Tracks expansion against a budget.
    class BudgetMeter
    {
        public:
            explicit BudgetMeter(const Budget & budget);

            /// Meter whose node limit applies to the sum over all meters sharing
            /// total; raising stop ends every sharer.
            BudgetMeter(const Budget & budget, std::atomic<std::uint64_t> & total, std::atomic<bool> & stop);

            /// Counts one node; returns false once the budget is exhausted.
            auto tick() -> bool;

            auto exhausted() const noexcept -> bool { return _exhausted; }

            /// Stopped by a sharer rather than by the budget.
            auto cancelled() const noexcept -> bool { return _stop && _stop->load(std::memory_order_relaxed) && ! _exhausted; }
            auto nodes() const noexcept -> std::uint64_t { return _nodes; }

        private:
            Budget _budget;
            std::chrono::steady_clock::time_point _start;
            std::uint64_t _nodes = 0;
            bool _exhausted = false;
            std::atomic<std::uint64_t> * _total = nullptr;
            std::atomic<bool> * _stop = nullptr;
    };
}

#endif
