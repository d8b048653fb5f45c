#include "colstack/membership.hpp"
#include "colstack/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace colstack {

namespace detail {

struct CompiledOrderTransition {
    std::uint32_t from;
    std::uint32_t top;
    std::vector<std::uint32_t> rest;
};

struct CompiledLetterTransition {
    std::uint32_t from;
    int branch_order;
    std::vector<std::uint32_t> branch;
    std::vector<std::uint32_t> rest;
};

struct StateRef {
    int order;
    std::uint32_t id;
};

struct CompiledAutomaton {
    int order = 1;
    std::vector<std::vector<std::string>> names;        // [k] -> local id -> name
    std::vector<std::size_t> words;                     // [k] -> 64-bit words per set
    std::vector<std::vector<std::uint32_t>> finals;     // [k]
    std::vector<std::vector<CompiledOrderTransition>> deltas; // [k], k >= 2
    std::unordered_map<std::string, std::vector<CompiledLetterTransition>> letters;
    std::unordered_map<std::string, StateRef> lookup;

    explicit CompiledAutomaton(const StackAutomaton& a)
        : order(a.order())
    {
        if (auto v = find_violation(a))
            throw std::invalid_argument("invalid automaton: " + *v);
        const auto n = static_cast<std::size_t>(order);
        names.resize(n + 1);
        words.resize(n + 1, 0);
        finals.resize(n + 1);
        deltas.resize(n + 1);
        for (int k = 1; k <= order; ++k) {
            const auto& qs = a.states(k);
            auto& ks = names[static_cast<std::size_t>(k)];
            for (const auto& q : qs) {
                lookup.emplace(q, StateRef{k, static_cast<std::uint32_t>(ks.size())});
                ks.push_back(q);
            }
            words[static_cast<std::size_t>(k)] = (ks.size() + 63) / 64;
            for (const auto& f : a.finals(k))
                finals[static_cast<std::size_t>(k)].push_back(id(f));
        }
        for (int k = 2; k <= order; ++k) {
            for (const auto& t : a.transitions(k))
                deltas[static_cast<std::size_t>(k)].push_back({id(t.from), id(t.top), ids(t.rest)});
        }
        for (const auto& t : a.letter_transitions())
            letters[t.symbol].push_back({id(t.from), t.branch_order, ids(t.branch), ids(t.rest)});
    }

    std::uint32_t id(const std::string& q) const { return lookup.at(q).id; }

    std::vector<std::uint32_t> ids(const StateSet& qs) const
    {
        std::vector<std::uint32_t> out;
        out.reserve(qs.size());
        for (const auto& q : qs)
            out.push_back(id(q));
        return out;
    }
};

} // namespace detail

namespace {

bool test_bit(const std::uint64_t* set, std::uint32_t q)
{
    return (set[q / 64] >> (q % 64)) & 1u;
}

void set_bit(std::uint64_t* set, std::uint32_t q)
{
    set[q / 64] |= std::uint64_t{1} << (q % 64);
}

bool subset_of(const std::vector<std::uint32_t>& qs, const std::uint64_t* set)
{
    return std::all_of(qs.begin(), qs.end(), [set](std::uint32_t q) { return test_bit(set, q); });
}

} // namespace

// ---------------------------------------------------------------------------
// MembershipTable

const std::uint64_t* MembershipTable::entry(std::size_t p, int k) const
{
    return words_.data() + offsets_[p] + order_offset_[static_cast<std::size_t>(k)] -
           order_offset_[static_cast<std::size_t>(lowest_[p])];
}

std::uint64_t* MembershipTable::entry(std::size_t p, int k)
{
    return words_.data() + offsets_[p] + order_offset_[static_cast<std::size_t>(k)] -
           order_offset_[static_cast<std::size_t>(lowest_[p])];
}

bool MembershipTable::has(std::size_t p, int k) const
{
    return p < positions() && k >= lowest_[p] && k <= order_;
}

bool MembershipTable::contains(std::size_t p, int k, const std::string& state) const
{
    if (!has(p, k))
        return false;
    auto it = automaton_->lookup.find(state);
    if (it == automaton_->lookup.end() || it->second.order != k)
        return false;
    return test_bit(entry(p, k), it->second.id);
}

std::vector<std::string> MembershipTable::states(std::size_t p, int k) const
{
    std::vector<std::string> out;
    if (!has(p, k))
        return out;
    const auto* set = entry(p, k);
    const auto& names = automaton_->names[static_cast<std::size_t>(k)];
    for (std::uint32_t q = 0; q < names.size(); ++q) {
        if (test_bit(set, q))
            out.push_back(names[q]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// MembershipChecker

MembershipChecker::MembershipChecker(const StackAutomaton& a)
    : automaton_(std::make_shared<detail::CompiledAutomaton>(a))
{
}

int MembershipChecker::order() const
{
    return automaton_->order;
}

MembershipTable MembershipChecker::table(const Stack& w) const
{
    if (w.order() != automaton_->order) {
        throw OrderMismatch("stack has order " + std::to_string(w.order()) + ", automaton has order " +
                            std::to_string(automaton_->order));
    }
    if (!is_well_formed(w, w.order()))
        throw std::invalid_argument("stack is not well formed");
    StackIndex index(w);
    MembershipTable t;
    fill(t, index);
    return t;
}

void MembershipChecker::fill(MembershipTable& t, const StackIndex& index) const
{
    const auto& A = *automaton_;
    const int n = A.order;
    const std::size_t len = index.size();

    t.automaton_ = automaton_;
    t.order_ = n;
    t.order_offset_.assign(static_cast<std::size_t>(n) + 2, 0);
    for (int k = 1; k <= n; ++k) {
        t.order_offset_[static_cast<std::size_t>(k) + 1] =
            t.order_offset_[static_cast<std::size_t>(k)] + A.words[static_cast<std::size_t>(k)];
    }
    t.lowest_.resize(len);
    t.offsets_.resize(len);
    std::size_t total = 0;
    for (std::size_t p = 0; p < len; ++p) {
        const int low = index.lowest_order(p);
        t.lowest_[p] = low;
        t.offsets_[p] = total;
        total += t.order_offset_[static_cast<std::size_t>(n) + 1] - t.order_offset_[static_cast<std::size_t>(low)];
        t.entries_ += static_cast<std::size_t>(n - low + 1);
    }
    t.words_.assign(total, 0);

    // Bottom to top: every entry reads only lower positions, or the same
    // position at a lower order.
    for (std::size_t p = len; p-- > 0;) {
        const int low = index.lowest_order(p);
        if (index.is_atom(p)) {
            auto* out = t.entry(p, 1);
            const Atom& a = index.atom(p);
            auto it = A.letters.find(a.symbol);
            if (it != A.letters.end()) {
                const auto* below = t.entry(p + 1, 1);
                const auto dest = a.link.is_null() ? std::nullopt : index.link_destination(p);
                for (const auto& tr : it->second) {
                    if (!subset_of(tr.rest, below))
                        continue;
                    if (!tr.branch.empty()) {
                        if (!dest || tr.branch_order != a.link.order)
                            continue;
                        if (!subset_of(tr.branch, t.entry(*dest, a.link.order)))
                            continue;
                    }
                    set_bit(out, tr.from);
                }
            }
        } else {
            auto* out = t.entry(p, low);
            for (auto f : A.finals[static_cast<std::size_t>(low)])
                set_bit(out, f);
        }
        for (int k = low + 1; k <= n; ++k) {
            auto* out = t.entry(p, k);
            const auto* head = t.entry(p, k - 1);
            const auto* rest = t.entry(*index.pop(p, k), k);
            for (const auto& tr : A.deltas[static_cast<std::size_t>(k)]) {
                if (test_bit(head, tr.top) && subset_of(tr.rest, rest))
                    set_bit(out, tr.from);
            }
        }
    }
}

int MembershipChecker::initial_order(const StateSet& initial) const
{
    int k = 0;
    for (const auto& q : initial) {
        auto it = automaton_->lookup.find(q);
        if (it == automaton_->lookup.end())
            throw std::invalid_argument("unknown state " + q);
        if (k != 0 && it->second.order != k)
            throw std::invalid_argument("initial states mix orders");
        k = it->second.order;
    }
    return k;
}

bool MembershipChecker::accepts(const MembershipTable& t, const StateSet& initial) const
{
    const int k = initial_order(initial);
    if (k == 0)
        return true;
    if (!t.has(0, k))
        return false;
    const auto* set = t.entry(0, k);
    return std::all_of(initial.begin(), initial.end(),
                       [&](const std::string& q) { return test_bit(set, automaton_->id(q)); });
}

bool MembershipChecker::accepts(const Stack& w, const StateSet& initial) const
{
    return accepts(table(w), initial);
}

bool member(const Stack& w, const StackAutomaton& a, const StateSet& initial)
{
    return MembershipChecker(a).accepts(w, initial);
}

RunCertificate extract_run(const Stack& w, const StackAutomaton& a, const StateSet& initial)
{
    MembershipChecker checker(a);
    auto t = checker.table(w);
    if (!checker.accepts(t, initial))
        throw NotAccepted("stack is not accepted from the given states");
    RunCertificate r;
    for (std::size_t p = 0; p < t.positions(); ++p) {
        for (int k = 1; k <= t.order(); ++k) {
            if (!t.has(p, k))
                continue;
            auto names = t.states(p, k);
            r.set(p, k, StateSet(names.begin(), names.end()));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Run certificate checking

namespace {

bool subset(const StateSet& small, const StateSet& big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

bool check_run(const Stack& w, const StackAutomaton& a, const RunCertificate& r,
               const StateSet& initial)
{
    if (auto v = find_violation(a))
        throw std::invalid_argument("invalid automaton: " + *v);
    const int n = a.order();
    if (w.order() != n)
        throw OrderMismatch("stack and automaton orders differ");
    if (!is_well_formed(w, n))
        throw std::invalid_argument("stack is not well formed");
    StackIndex index(w);

    for (const auto& [key, states] : r.entries) {
        const auto [p, k] = key;
        if (p >= index.size() || !index.has_order(p, k)) {
            throw MalformedCertificate("entry at position " + std::to_string(p) + " order " +
                                       std::to_string(k) + " does not exist");
        }
        for (const auto& q : states) {
            if (a.order_of(q) != k)
                throw MalformedCertificate("state " + q + " is not an order-" + std::to_string(k) + " state");
        }
    }
    auto need = [&](std::size_t p, int k) -> const StateSet& {
        const StateSet* s = r.find(p, k);
        if (!s) {
            throw MalformedCertificate("missing entry at position " + std::to_string(p) + " order " +
                                       std::to_string(k));
        }
        return *s;
    };

    bool ok = true;
    for (std::size_t p = 0; p < index.size(); ++p) {
        const int low = index.lowest_order(p);
        if (index.is_atom(p)) {
            const Atom& atom = index.atom(p);
            const StateSet& here = need(p, 1);
            const StateSet& below = need(p + 1, 1);
            const auto dest = atom.link.is_null() ? std::nullopt : index.link_destination(p);
            const StateSet* target = dest ? &need(*dest, atom.link.order) : nullptr;
            for (const auto& q : here) {
                bool found = false;
                for (const auto& t : a.letter_transitions()) {
                    if (t.from != q || t.symbol != atom.symbol || !subset(t.rest, below))
                        continue;
                    if (!t.branch.empty() &&
                        (!target || t.branch_order != atom.link.order || !subset(t.branch, *target)))
                        continue;
                    found = true;
                    break;
                }
                ok = ok && found;
            }
        } else {
            // empty order-`low` stack: bottom of the whole stack or an
            // exhausted order-`low` component
            ok = ok && subset(need(p, low), a.finals(low));
        }
        for (int k = low + 1; k <= n; ++k) {
            const StateSet& here = need(p, k);
            const StateSet& head = need(p, k - 1);
            const StateSet& rest = need(*index.pop(p, k), k);
            for (const auto& q : here) {
                bool found = false;
                for (const auto& t : a.transitions(k)) {
                    if (t.from == q && head.count(t.top) && subset(t.rest, rest)) {
                        found = true;
                        break;
                    }
                }
                ok = ok && found;
            }
        }
    }
    if (!ok)
        return false;

    if (initial.empty())
        return true;
    const auto k = a.order_of(*initial.begin());
    for (const auto& q : initial) {
        const auto qk = a.order_of(q);
        if (!qk)
            throw std::invalid_argument("unknown state " + q);
        if (qk != k)
            throw std::invalid_argument("initial states mix orders");
    }
    if (!index.has_order(0, *k))
        return false;
    return subset(initial, need(0, *k));
}

} // namespace colstack
