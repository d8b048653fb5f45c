#include "colstack/stack.hpp"
#include "colstack/stack_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace colstack {

Stack Stack::atom(std::string symbol, Link link)
{
    Stack s;
    s.order_ = 0;
    s.atom_ = Atom{std::move(symbol), link};
    return s;
}

Stack Stack::empty(int order)
{
    if (order < 1)
        throw std::invalid_argument("empty stack must have order >= 1");
    Stack s;
    s.order_ = order;
    return s;
}

Stack Stack::of(int order, std::vector<Stack> components)
{
    if (order < 1)
        throw std::invalid_argument("stack order must be >= 1");
    for (const auto& c : components) {
        if (c.order() != order - 1)
            throw std::invalid_argument("component of order " + std::to_string(c.order()) +
                                        " inside an order-" + std::to_string(order) + " stack");
    }
    Stack s;
    s.order_ = order;
    s.items_ = std::move(components);
    return s;
}

const Atom& Stack::as_atom() const
{
    if (!is_atom())
        throw std::logic_error("not an atom");
    return atom_;
}

std::size_t Stack::atom_count() const
{
    if (is_atom())
        return 1;
    std::size_t total = 0;
    for (const auto& c : items_)
        total += c.atom_count();
    return total;
}

bool operator==(const Stack& a, const Stack& b)
{
    if (a.order_ != b.order_)
        return false;
    if (a.is_atom())
        return a.atom_ == b.atom_;
    return a.items_ == b.items_;
}

std::strong_ordering operator<=>(const Stack& a, const Stack& b)
{
    if (auto c = a.order_ <=> b.order_; c != 0)
        return c;
    if (a.is_atom())
        return a.atom_ <=> b.atom_;
    return std::lexicographical_compare_three_way(a.items_.begin(), a.items_.end(),
                                                  b.items_.begin(), b.items_.end());
}

namespace {

constexpr std::size_t kNoLink = static_cast<std::size_t>(-1);

// Returns, per link order o (index o), the largest link index found in s,
// or kNoLink. Sets ok=false on the first violation.
std::vector<std::size_t> max_links(const Stack& s, int n, const std::vector<std::string>* alphabet,
                                   bool& ok)
{
    std::vector<std::size_t> result(static_cast<std::size_t>(n) + 1, kNoLink);
    if (!ok)
        return result;
    if (s.is_atom()) {
        const auto& a = s.as_atom();
        if (a.link.order < 1 || a.link.order > n) {
            ok = false;
            return result;
        }
        if (alphabet && std::find(alphabet->begin(), alphabet->end(), a.symbol) == alphabet->end()) {
            ok = false;
            return result;
        }
        result[static_cast<std::size_t>(a.link.order)] = a.link.index;
        return result;
    }
    const auto m = s.size();
    const auto o = static_cast<std::size_t>(s.order());
    for (std::size_t j = 0; j < m; ++j) {
        auto sub = max_links(s.components()[j], n, alphabet, ok);
        if (!ok)
            return result;
        // links of this stack's order must point strictly below component j
        if (o <= static_cast<std::size_t>(n) && sub[o] != kNoLink && sub[o] > m - 1 - j) {
            ok = false;
            return result;
        }
        for (std::size_t k = 1; k < result.size(); ++k) {
            if (sub[k] != kNoLink && (result[k] == kNoLink || sub[k] > result[k]))
                result[k] = sub[k];
        }
    }
    return result;
}

bool well_formed(const Stack& w, int n, const std::vector<std::string>* alphabet)
{
    if (n < 1 || w.order() != n)
        return false;
    bool ok = true;
    max_links(w, n, alphabet, ok);
    return ok;
}

// Pointer to the topmost order-(k-1) stack inside s, or null.
const Stack* find_top(int k, const Stack& s)
{
    if (k == s.order() + 1)
        return &s;
    if (k < 1 || k > s.order() || s.empty())
        return nullptr;
    const Stack& first = s.components().front();
    if (k == s.order())
        return &first;
    return find_top(k, first);
}

// Rebuilds s with its top component replaced.
Stack replace_top(const Stack& s, Stack new_top)
{
    std::vector<Stack> items(s.components().begin(), s.components().end());
    items.front() = std::move(new_top);
    return Stack::of(s.order(), std::move(items));
}

} // namespace

bool is_well_formed(const Stack& w, int n)
{
    return well_formed(w, n, nullptr);
}

bool is_well_formed(const Stack& w, int n, std::span<const std::string> alphabet)
{
    std::vector<std::string> letters(alphabet.begin(), alphabet.end());
    return well_formed(w, n, &letters);
}

std::optional<Stack> top(int k, const Stack& w)
{
    if (const Stack* t = find_top(k, w))
        return *t;
    return std::nullopt;
}

std::optional<Stack> bottom(int k, std::size_t i, const Stack& w)
{
    if (i == 0 || k < 1 || k > w.order())
        return std::nullopt;
    if (k == w.order()) {
        if (i > w.size())
            return std::nullopt;
        auto first = w.components().end() - static_cast<std::ptrdiff_t>(i);
        return Stack::of(w.order(), std::vector<Stack>(first, w.components().end()));
    }
    if (w.empty())
        return std::nullopt;
    auto inner = bottom(k, i, w.components().front());
    if (!inner)
        return std::nullopt;
    return replace_top(w, std::move(*inner));
}

Stack compose(const Stack& u, int k, const Stack& v)
{
    if (k < 1 || k > v.order() || u.order() != k - 1)
        throw std::invalid_argument("compose: order mismatch");
    if (k == v.order()) {
        std::vector<Stack> items;
        items.reserve(v.size() + 1);
        items.push_back(u);
        items.insert(items.end(), v.components().begin(), v.components().end());
        return Stack::of(v.order(), std::move(items));
    }
    if (v.empty())
        throw std::invalid_argument("compose: empty stack above order " + std::to_string(k));
    return replace_top(v, compose(u, k, v.components().front()));
}

std::optional<std::pair<Stack, Stack>> decompose(int k, const Stack& w)
{
    if (k < 1 || k > w.order() || w.empty())
        return std::nullopt;
    if (k == w.order()) {
        std::vector<Stack> rest(w.components().begin() + 1, w.components().end());
        return std::pair{w.components().front(), Stack::of(w.order(), std::move(rest))};
    }
    auto inner = decompose(k, w.components().front());
    if (!inner)
        return std::nullopt;
    return std::pair{std::move(inner->first), replace_top(w, std::move(inner->second))};
}

bool is_valid_operation(const StackOperation& op, int n)
{
    using K = StackOperation::Kind;
    switch (op.kind) {
    case K::Pop:
        return op.order >= 1 && op.order <= n;
    case K::Push:
    case K::Collapse:
        return op.order >= 2 && op.order <= n;
    case K::CPush:
        return op.order >= 2 && op.order <= n && !op.symbol.empty();
    case K::Rew:
        return op.order == 1 && !op.symbol.empty() && n >= 1;
    }
    return false;
}

std::optional<Stack> apply(const StackOperation& op, const Stack& w)
{
    using K = StackOperation::Kind;
    if (!is_valid_operation(op, w.order()))
        return std::nullopt;
    switch (op.kind) {
    case K::Pop: {
        auto parts = decompose(op.order, w);
        if (!parts)
            return std::nullopt;
        return std::move(parts->second);
    }
    case K::Push: {
        auto parts = decompose(op.order, w);
        if (!parts)
            return std::nullopt;
        return compose(parts->first, op.order, w);
    }
    case K::Collapse: {
        const Stack* t = find_top(1, w);
        if (!t)
            return std::nullopt;
        const Link& link = t->as_atom().link;
        if (link.order != op.order || link.index == 0)
            return std::nullopt;
        return bottom(op.order, link.index, w);
    }
    case K::CPush: {
        const Stack* target = find_top(op.order + 1, w);
        if (!target || target->empty() || !find_top(2, w))
            return std::nullopt;
        Link link{op.order, target->size() - 1};
        return compose(Stack::atom(op.symbol, link), 1, w);
    }
    case K::Rew: {
        auto parts = decompose(1, w);
        if (!parts)
            return std::nullopt;
        return compose(Stack::atom(op.symbol, parts->first.as_atom().link), 1, parts->second);
    }
    }
    return std::nullopt;
}

std::vector<Stack> substacks(const Stack& w)
{
    std::vector<Stack> out;
    Stack s = w;
    while (true) {
        out.push_back(s);
        // Walk down the spine to the first empty stack or the top atom.
        const Stack* cur = &s;
        while (!cur->is_atom() && !cur->empty())
            cur = &cur->components().front();
        int next_pop;
        if (cur->is_atom())
            next_pop = 1;
        else if (cur->order() < w.order())
            next_pop = cur->order() + 1;
        else
            break;
        auto parts = decompose(next_pop, s);
        s = std::move(parts->second);
    }
    return out;
}

std::optional<std::size_t> link_destination(std::size_t p, const Stack& w)
{
    StackIndex index(w);
    if (p >= index.size())
        return std::nullopt;
    return index.link_destination(p);
}

// ---------------------------------------------------------------------------
// StackIndex

StackIndex::StackIndex(const Stack& w) : order_(w.order())
{
    if (w.is_atom())
        throw std::invalid_argument("StackIndex needs a stack of order >= 1");
    tokens_.reserve(w.atom_count() * 2 + 1);
    flatten(w);

    const auto n = static_cast<std::size_t>(order_);
    const auto len = tokens_.size();
    next_close_.assign(n, std::vector<std::uint32_t>(len));
    for (std::size_t k = 1; k <= n; ++k) {
        auto& row = next_close_[k - 1];
        auto next = static_cast<std::uint32_t>(len);
        for (std::size_t p = len; p-- > 0;) {
            if (tokens_[p].close_order >= static_cast<int>(k))
                next = static_cast<std::uint32_t>(p);
            row[p] = next;
        }
    }
}

void StackIndex::flatten(const Stack& s)
{
    if (s.is_atom()) {
        tokens_.push_back(Token{0, &s.as_atom(), -1});
        return;
    }
    std::vector<std::uint32_t> starts;
    starts.reserve(s.size());
    for (const auto& c : s.components()) {
        starts.push_back(static_cast<std::uint32_t>(tokens_.size()));
        flatten(c);
    }
    auto group = static_cast<std::int32_t>(groups_.size());
    groups_.push_back(std::move(starts));
    tokens_.push_back(Token{s.order(), nullptr, group});
}

std::optional<std::size_t> StackIndex::pop(std::size_t p, int k) const
{
    if (p >= size() || k < 1 || k > order_)
        return std::nullopt;
    if (k == 1)
        return is_atom(p) ? std::optional<std::size_t>(p + 1) : std::nullopt;
    if (k <= lowest_order(p))
        return std::nullopt;
    return next_close(p, k - 1) + 1;
}

std::optional<std::size_t> StackIndex::link_destination(std::size_t p) const
{
    if (p >= size() || !is_atom(p))
        return std::nullopt;
    const Link& link = atom(p).link;
    if (link.is_null() || link.order > order_)
        return std::nullopt;
    const std::size_t end = next_close(p, link.order);
    const auto& starts = groups_[static_cast<std::size_t>(tokens_[end].group)];
    if (link.index > starts.size())
        return std::nullopt;
    const std::size_t dest = starts[starts.size() - link.index];
    if (dest <= p)
        return std::nullopt; // the link does not point strictly below
    return dest;
}

} // namespace colstack
