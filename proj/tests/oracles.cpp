#include "oracles.hpp"

#include "colstack/text_io.hpp"

#include <set>

namespace oracle {

using namespace colstack;

bool TopDown::accepts(const Stack& u, int k, const std::string& q)
{
    auto key = std::make_tuple(print_stack(u), k, q);
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;

    bool result = false;
    auto split = decompose(k, u);
    if (!split) {
        result = a_.finals(k).count(q) > 0;
    } else if (k >= 2) {
        const Stack& v = split->second;
        for (const auto& t : a_.transitions(k)) {
            if (t.from != q || !accepts(u, k - 1, t.top))
                continue;
            bool all = true;
            for (const auto& r : t.rest)
                all = all && accepts(v, k, r);
            if (all) {
                result = true;
                break;
            }
        }
    } else {
        const Atom& ch = split->first.as_atom();
        const Stack& v = split->second;
        for (const auto& t : a_.letter_transitions()) {
            if (t.from != q || t.symbol != ch.symbol)
                continue;
            bool all = true;
            for (const auto& r : t.rest)
                all = all && accepts(v, 1, r);
            if (!all)
                continue;
            if (!t.branch.empty()) {
                if (ch.link.order != t.branch_order || ch.link.order < 2 || ch.link.index == 0)
                    continue;
                auto dest = bottom(ch.link.order, ch.link.index, u);
                if (!dest)
                    continue;
                for (const auto& p : t.branch)
                    all = all && accepts(*dest, ch.link.order, p);
            }
            if (all) {
                result = true;
                break;
            }
        }
    }
    memo_[key] = result;
    return result;
}

bool TopDown::accepts(const Stack& w, const StateSet& initial)
{
    for (const auto& q : initial) {
        auto k = a_.order_of(q);
        if (!k || !accepts(w, *k, q))
            return false;
    }
    return true;
}

std::optional<bool> exists_certificate(const Stack& w, const StackAutomaton& a, const StateSet& initial,
                                       std::uint64_t max_certificates)
{
    const int n = a.order();
    const auto subs = substacks(w);
    struct Slot {
        std::size_t position;
        int order;
        std::size_t states;
    };
    std::vector<Slot> slots;
    std::uint64_t space = 1;
    for (std::size_t p = 0; p < subs.size(); ++p) {
        for (int k = 1; k <= n; ++k) {
            if (!top(k + 1, subs[p]))
                continue;
            const std::size_t q = a.states(k).size();
            slots.push_back({p, k, q});
            if (q >= 63 || space > (max_certificates >> q))
                return std::nullopt;
            space <<= q;
        }
    }
    std::vector<std::uint64_t> mask(slots.size(), 0);
    while (true) {
        RunCertificate r;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            StateSet set;
            const auto& names = a.states(slots[s].order);
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (mask[s] >> i & 1u)
                    set.insert(names[i]);
            }
            r.set(slots[s].position, slots[s].order, std::move(set));
        }
        if (check_run(w, a, r, initial))
            return true;
        std::size_t s = 0;
        for (; s < slots.size(); ++s) {
            if (++mask[s] < (std::uint64_t{1} << slots[s].states))
                break;
            mask[s] = 0;
        }
        if (s == slots.size())
            return false;
    }
}

std::vector<Stack> substack_closure(const Stack& w)
{
    std::set<Stack> seen{w};
    std::vector<Stack> work{w};
    while (!work.empty()) {
        Stack x = work.back();
        work.pop_back();
        for (int k = 1; k <= w.order(); ++k) {
            if (auto d = decompose(k, x); d && seen.insert(d->second).second)
                work.push_back(d->second);
        }
    }
    return {seen.begin(), seen.end()};
}

namespace {

// All labelled order-k trees with exactly `atoms` atoms; links over a range
// wide enough to contain every valid one.
std::vector<Stack> trees(int n, int k, std::size_t atoms, std::size_t width, const std::vector<std::string>& sigma)
{
    std::vector<Stack> out;
    if (k == 0) {
        if (atoms != 1)
            return out;
        for (const auto& s : sigma) {
            for (int o = 1; o <= n; ++o) {
                for (std::size_t i = 0; i <= width; ++i)
                    out.push_back(Stack::atom(s, Link{o, i}));
            }
        }
        return out;
    }
    // sequences of children, built by prepending a first child
    std::function<void(std::size_t, std::size_t, std::vector<Stack>&)> rec = [&](std::size_t left, std::size_t slots,
                                                                                std::vector<Stack>& prefix) {
        if (left == 0)
            out.push_back(Stack::of(k, prefix));
        if (slots == 0)
            return;
        for (std::size_t a = 0; a <= left; ++a) {
            for (const auto& child : trees(n, k - 1, a, width, sigma)) {
                prefix.push_back(child);
                rec(left - a, slots - 1, prefix);
                prefix.pop_back();
            }
        }
    };
    std::vector<Stack> prefix;
    rec(atoms, width, prefix);
    return out;
}

} // namespace

std::uint64_t count_stacks(int n, std::size_t max_atoms, std::size_t max_width, const std::vector<std::string>& alphabet)
{
    std::set<Stack> found;
    for (std::size_t a = 0; a <= max_atoms; ++a) {
        for (const auto& w : trees(n, n, a, max_width, alphabet)) {
            if (is_well_formed(w, n))
                found.insert(w);
        }
    }
    return found.size();
}

namespace {

Stack random_shape(std::mt19937& rng, int k, std::size_t width, std::size_t& atoms_left)
{
    if (k == 0) {
        --atoms_left;
        return Stack::atom("");
    }
    std::uniform_int_distribution<std::size_t> pick(0, width);
    std::size_t c = pick(rng);
    std::vector<Stack> comps;
    for (std::size_t i = 0; i < c; ++i) {
        if (k == 1 && atoms_left == 0)
            break;
        comps.push_back(random_shape(rng, k - 1, width, atoms_left));
    }
    return Stack::of(k, std::move(comps));
}

Stack random_labels(std::mt19937& rng, const Stack& s, int n, std::vector<std::size_t>& idx, std::vector<std::size_t>& size,
                    const std::vector<std::string>& sigma)
{
    if (s.is_atom()) {
        std::uniform_int_distribution<std::size_t> sym(0, sigma.size() - 1);
        std::uniform_int_distribution<int> ord(1, n);
        const int o = ord(rng);
        std::uniform_int_distribution<std::size_t> index(0, size[o] - idx[o]);
        return Stack::atom(sigma[sym(rng)], Link{o, index(rng)});
    }
    std::vector<Stack> comps;
    const auto cs = s.components();
    for (std::size_t j = 0; j < cs.size(); ++j) {
        idx[s.order()] = j + 1;
        size[s.order()] = cs.size();
        comps.push_back(random_labels(rng, cs[j], n, idx, size, sigma));
    }
    return Stack::of(s.order(), std::move(comps));
}

StateSet random_subset(std::mt19937& rng, const std::vector<std::string>& from, double p)
{
    std::bernoulli_distribution keep(p);
    StateSet out;
    for (const auto& q : from) {
        if (keep(rng))
            out.insert(q);
    }
    return out;
}

} // namespace

Stack random_stack(std::mt19937& rng, int n, std::size_t max_width, const std::vector<std::string>& alphabet,
                   std::size_t max_atoms)
{
    std::size_t left = max_atoms;
    Stack shape = random_shape(rng, n, max_width, left);
    std::vector<std::size_t> idx(n + 1, 0), size(n + 1, 0);
    return random_labels(rng, shape, n, idx, size, alphabet);
}

StackAutomaton random_automaton(std::mt19937& rng, int n, const std::vector<std::string>& alphabet, std::size_t max_states)
{
    StackAutomaton a(n);
    for (const auto& s : alphabet)
        a.add_symbol(s);
    std::uniform_int_distribution<std::size_t> count(1, max_states);
    std::bernoulli_distribution coin(0.5);
    for (int k = n; k >= 1; --k) {
        const std::size_t c = count(rng);
        for (std::size_t i = 0; i < c; ++i)
            a.add_state(k, "s" + std::to_string(k) + "_" + std::to_string(i), coin(rng));
    }
    auto any = [&](const std::vector<std::string>& v) {
        std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
        return v[d(rng)];
    };
    std::uniform_int_distribution<int> how_many(1, 5);
    for (int k = n; k >= 2; --k) {
        const int t = how_many(rng);
        for (int i = 0; i < t; ++i)
            a.add_transition(k, OrderTransition{any(a.states(k)), any(a.states(k - 1)),
                                                random_subset(rng, a.states(k), 0.35)});
    }
    std::uniform_int_distribution<int> letters(1, 7);
    std::bernoulli_distribution branching(n >= 2 ? 0.35 : 0.0);
    const int t = letters(rng);
    for (int i = 0; i < t; ++i) {
        LetterTransition lt{any(a.states(1)), any(alphabet), 0, {}, random_subset(rng, a.states(1), 0.35)};
        if (branching(rng)) {
            std::uniform_int_distribution<int> o(2, n);
            lt.branch_order = o(rng);
            lt.branch = random_subset(rng, a.states(lt.branch_order), 0.5);
            if (lt.branch.empty())
                lt.branch_order = 0;
        }
        a.add_transition(std::move(lt));
    }
    return a;
}

std::vector<TilingSolution> all_assignments(const TilingProblem& p, unsigned n)
{
    const std::size_t cells = std::size_t{1} << (2 * n);
    std::vector<std::size_t> pick(cells, 0);
    std::vector<TilingSolution> out;
    while (true) {
        std::vector<std::string> grid;
        for (auto i : pick)
            grid.push_back(p.tiles[i]);
        out.emplace_back(n, std::move(grid));
        std::size_t c = cells;
        while (true) {
            if (c == 0)
                return out;
            --c;
            if (++pick[c] < p.tiles.size())
                break;
            pick[c] = 0;
        }
    }
}

} // namespace oracle
