#ifndef IHS_BITSET_HPP
#define IHS_BITSET_HPP 1

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace ihs
{
    /// Fixed-width (set at construction) bitset over vertex ids. Used for
    /// adjacency rows, conflict rows and candidate sets during search.
    class Bitset
    {
        public:
            using Word = std::uint64_t;
            static constexpr std::size_t bits_per_word = 64;

            Bitset() = default;
            explicit Bitset(std::size_t size) :
                _size(size),
                _words((size + bits_per_word - 1) / bits_per_word, 0)
            {
            }

            auto size() const noexcept -> std::size_t { return _size; }

            auto test(std::size_t i) const noexcept -> bool
            {
                return (_words[i / bits_per_word] >> (i % bits_per_word)) & 1u;
            }

            auto set(std::size_t i) noexcept -> void
            {
                _words[i / bits_per_word] |= Word{1} << (i % bits_per_word);
            }

            auto reset(std::size_t i) noexcept -> void
            {
                _words[i / bits_per_word] &= ~(Word{1} << (i % bits_per_word));
            }

            auto set_all() noexcept -> void
            {
                for (auto & w : _words)
                    w = ~Word{0};
                trim();
            }

            auto clear() noexcept -> void
            {
                for (auto & w : _words)
                    w = 0;
            }

            auto count() const noexcept -> std::size_t
            {
                std::size_t result = 0;
                for (auto w : _words)
                    result += std::popcount(w);
                return result;
            }

            auto any() const noexcept -> bool
            {
                for (auto w : _words)
                    if (w)
                        return true;
                return false;
            }

            auto none() const noexcept -> bool { return ! any(); }

            /// Index of the lowest set bit at or after from, or size() if none.
            auto find_next(std::size_t from) const noexcept -> std::size_t
            {
                if (from >= _size)
                    return _size;
                std::size_t wi = from / bits_per_word;
                Word w = _words[wi] & (~Word{0} << (from % bits_per_word));
                while (true) {
                    if (w)
                        return wi * bits_per_word + std::countr_zero(w);
                    if (++wi == _words.size())
                        return _size;
                    w = _words[wi];
                }
            }

            auto find_first() const noexcept -> std::size_t { return find_next(0); }

            template <typename F>
            auto for_each(F && f) const -> void
            {
                for (std::size_t wi = 0; wi < _words.size(); ++wi) {
                    Word w = _words[wi];
                    while (w) {
                        f(wi * bits_per_word + std::countr_zero(w));
                        w &= w - 1;
                    }
                }
            }

            auto to_vector() const -> std::vector<std::size_t>
            {
                std::vector<std::size_t> result;
                for_each([&](std::size_t i) { result.push_back(i); });
                return result;
            }

            auto operator&=(const Bitset & other) noexcept -> Bitset &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] &= other._words[i];
                return *this;
            }

            auto operator|=(const Bitset & other) noexcept -> Bitset &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            /// this &= ~other
            auto subtract(const Bitset & other) noexcept -> Bitset &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] &= ~other._words[i];
                return *this;
            }

            auto intersects(const Bitset & other) const noexcept -> bool
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    if (_words[i] & other._words[i])
                        return true;
                return false;
            }

            friend auto operator==(const Bitset &, const Bitset &) -> bool = default;

        private:
            auto trim() noexcept -> void
            {
                if (_size % bits_per_word && ! _words.empty())
                    _words.back() &= (Word{1} << (_size % bits_per_word)) - 1;
            }

            std::size_t _size = 0;
            std::vector<Word> _words;
    };
}

#endif
