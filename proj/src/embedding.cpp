#include <ihs/embedding.hpp>
#include <ihs/error.hpp>

#include <algorithm>

using namespace ihs;

using std::size_t;
using std::uint32_t;
using std::vector;

Pattern::Pattern(vector<vector<uint32_t>> adjacent) :
    _adjacent(std::move(adjacent)),
    _back(_adjacent.size())
{
    for (size_t i = 0; i < _adjacent.size(); ++i) {
        std::sort(_adjacent[i].begin(), _adjacent[i].end());
        for (auto j : _adjacent[i])
            if (j < i)
                _back[i].push_back(j);
    }
}

auto Pattern::power(size_t length, size_t k, SequenceKind kind) -> Pattern
{
    vector<vector<uint32_t>> adj(length);
    for (size_t i = 0; i < length; ++i)
        for (size_t j = 0; j < length; ++j)
            if (i != j && sequence_distance(i, j, length, kind) <= k)
                adj[i].push_back(uint32_t(j));
    return Pattern(std::move(adj));
}

auto Pattern::from_graph(const Graph & h) -> Pattern
{
    vector<vector<uint32_t>> adj(h.order());
    for (auto & [u, v] : h.edges()) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return Pattern(std::move(adj));
}

PartialEmbedding::PartialEmbedding(const Graph & g, const IncompatibilitySystem & sys, const Pattern & pattern) :
    _g(&g),
    _sys(&sys),
    _pattern(&pattern),
    _used(g.order()),
    _scratch(pattern.size() + 1, Bitset(g.order()))
{
    if (sys.order() != g.order())
        throw Error(ErrorKind::BadParams, "system and graph disagree on vertex count");
    _image.reserve(pattern.size());
}

auto PartialEmbedding::pairs_ok_at(Vertex w) const -> bool
{
    auto & back = _pattern->back(_image.size());
    if (_sys->empty())
        return true;
    for (size_t a = 0; a < back.size(); ++a)
        for (size_t b = a + 1; b < back.size(); ++b)
            if (_sys->incompatible_at(w, _image[back[a]], _image[back[b]]))
                return false;
    return true;
}

auto PartialEmbedding::feasible(Vertex w) const -> bool
{
    size_t i = _image.size();
    if (i >= _pattern->size() || w >= _g->order() || _used.test(w))
        return false;
    for (auto j : _pattern->back(i)) {
        Vertex x = _image[j];
        if (! _g->adjacent(x, w))
            return false;
        for (auto l : _pattern->adjacent(j)) {
            if (l >= i)
                break;
            if (_sys->incompatible_at(x, w, _image[l]))
                return false;
        }
    }
    return pairs_ok_at(w);
}

auto PartialEmbedding::candidates(const Bitset & allowed) const -> const Bitset &
{
    size_t i = _image.size();
    auto & result = _scratch[i];
    result = allowed;
    if (i >= _pattern->size()) {
        result.clear();
        return result;
    }
    result.subtract(_used);
    for (auto j : _pattern->back(i)) {
        Vertex x = _image[j];
        result &= _g->neighbours(x);
        if (! _sys->empty())
            for (auto l : _pattern->adjacent(j)) {
                if (l >= i)
                    break;
                result.subtract(_sys->conflicts(x, _image[l]));
            }
    }
    if (! _sys->empty() && _pattern->back(i).size() >= 2)
        result.for_each([&](size_t w) {
            if (! pairs_ok_at(Vertex(w)))
                result.reset(w);
        });
    return result;
}

auto PartialEmbedding::push(Vertex w) -> void
{
    _image.push_back(w);
    _used.set(w);
}

auto PartialEmbedding::pop() -> void
{
    _used.reset(_image.back());
    _image.pop_back();
}

BudgetMeter::BudgetMeter(const Budget & budget) :
    _budget(budget),
    _start(std::chrono::steady_clock::now())
{
}

BudgetMeter::BudgetMeter(const Budget & budget, std::atomic<std::uint64_t> & total, std::atomic<bool> & stop) :
    _budget(budget),
    _start(std::chrono::steady_clock::now()),
    _total(&total),
    _stop(&stop)
{
}

auto BudgetMeter::tick() -> bool
{
    if (_exhausted)
        return false;
    if (_stop && _stop->load(std::memory_order_relaxed))
        return false;
    ++_nodes;
    auto counted = _total ? _total->fetch_add(1, std::memory_order_relaxed) + 1 : _nodes;
    if (_budget.max_nodes && counted > _budget.max_nodes)
        _exhausted = true;
    else if (_budget.max_seconds > 0.0 && (_nodes & 1023) == 0) {
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - _start;
        if (elapsed.count() > _budget.max_seconds)
            _exhausted = true;
    }
    return ! _exhausted;
}
