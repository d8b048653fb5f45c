#include "colstack/emptiness.hpp"
#include "colstack/errors.hpp"
#include "colstack/membership.hpp"

#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace colstack {

namespace {

/// Unlabelled stack trees (atoms with empty symbols) by order and atom count.
class ShapeTable {
public:
    explicit ShapeTable(std::size_t max_width) : max_width_(max_width) {}

    const std::vector<Stack>& get(int k, std::size_t atoms)
    {
        auto key = std::make_pair(k, atoms);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        std::vector<Stack> out;
        if (k == 0) {
            if (atoms == 1)
                out.push_back(Stack::atom(""));
        } else {
            for (std::size_t c = 0; c <= max_width_; ++c) {
                if (c == 0 && atoms > 0)
                    continue;
                std::vector<std::size_t> parts(c, 0);
                compositions(k, atoms, 0, parts, out);
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    // parts[0..at) fixed; distributes the remaining atoms lexicographically.
    void compositions(int k, std::size_t left, std::size_t at, std::vector<std::size_t>& parts,
                      std::vector<Stack>& out)
    {
        if (at == parts.size()) {
            if (left == 0)
                products(k, parts, out);
            return;
        }
        if (at + 1 == parts.size()) {
            parts[at] = left;
            compositions(k, 0, at + 1, parts, out);
            return;
        }
        for (std::size_t x = 0; x <= left; ++x) {
            parts[at] = x;
            compositions(k, left - x, at + 1, parts, out);
        }
    }

    void products(int k, const std::vector<std::size_t>& parts, std::vector<Stack>& out)
    {
        std::vector<const std::vector<Stack>*> lists;
        for (auto p : parts) {
            lists.push_back(&get(k - 1, p));
            if (lists.back()->empty())
                return;
        }
        std::vector<std::size_t> pick(parts.size(), 0);
        while (true) {
            std::vector<Stack> comps;
            comps.reserve(parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i)
                comps.push_back((*lists[i])[pick[i]]);
            out.push_back(Stack::of(k, std::move(comps)));
            std::size_t i = parts.size();
            while (i > 0) {
                --i;
                if (++pick[i] < lists[i]->size())
                    break;
                pick[i] = 0;
                if (i == 0)
                    return;
            }
            if (parts.empty())
                return;
        }
    }

    std::size_t max_width_;
    std::map<std::pair<int, std::size_t>, std::vector<Stack>> memo_;
};

// For every atom of the shape, top first: the largest link index per order.
void link_limits(const Stack& s, std::vector<std::size_t>& path_index, std::vector<std::size_t>& path_size,
                 std::vector<std::vector<std::size_t>>& out)
{
    if (s.is_atom()) {
        // path_index[o] / path_size[o]: position inside the enclosing order-o stack
        std::vector<std::size_t> limits(path_index.size(), 0);
        for (std::size_t o = 1; o < path_index.size(); ++o)
            limits[o] = path_size[o] - path_index[o];
        out.push_back(std::move(limits));
        return;
    }
    const int k = s.order();
    const auto comps = s.components();
    for (std::size_t j = 0; j < comps.size(); ++j) {
        path_index[k] = j + 1;
        path_size[k] = comps.size();
        link_limits(comps[j], path_index, path_size, out);
    }
}

Stack relabel(const Stack& s, const std::vector<Atom>& atoms, std::size_t& next)
{
    if (s.is_atom()) {
        const Atom& a = atoms[next++];
        return Stack::atom(a.symbol, a.link);
    }
    std::vector<Stack> comps;
    comps.reserve(s.size());
    for (const auto& c : s.components())
        comps.push_back(relabel(c, atoms, next));
    return Stack::of(s.order(), std::move(comps));
}

bool for_each_labelling(int n, const Stack& shape, const std::vector<std::string>& alphabet,
                        const std::function<bool(const Stack&)>& visit)
{
    std::vector<std::size_t> idx(n + 1, 0), size(n + 1, 0);
    std::vector<std::vector<std::size_t>> limits;
    link_limits(shape, idx, size, limits);

    std::vector<std::vector<Atom>> options(limits.size());
    for (std::size_t a = 0; a < limits.size(); ++a) {
        for (const auto& sym : alphabet) {
            for (int o = 1; o <= n; ++o) {
                for (std::size_t i = 0; i <= limits[a][o]; ++i)
                    options[a].push_back(Atom{sym, Link{o, i}});
            }
        }
        if (options[a].empty())
            return true;
    }

    std::vector<std::size_t> pick(limits.size(), 0);
    std::vector<Atom> atoms(limits.size());
    while (true) {
        for (std::size_t a = 0; a < atoms.size(); ++a)
            atoms[a] = options[a][pick[a]];
        std::size_t next = 0;
        if (!visit(relabel(shape, atoms, next)))
            return false;
        std::size_t a = pick.size();
        while (true) {
            if (a == 0)
                return true;
            --a;
            if (++pick[a] < options[a].size())
                break;
            pick[a] = 0;
        }
    }
}

} // namespace

void for_each_stack(int n, const EnumerationBounds& b, const std::function<bool(const Stack&)>& visit)
{
    if (n < 1)
        throw std::invalid_argument("stack order must be at least 1");
    if (b.max_width == 0)
        throw std::invalid_argument("max_width must be at least 1");
    ShapeTable shapes(b.max_width);
    for (std::size_t atoms = 0; atoms <= b.max_atoms; ++atoms) {
        for (const auto& shape : shapes.get(n, atoms)) {
            if (!for_each_labelling(n, shape, b.alphabet, visit))
                return;
        }
    }
}

std::vector<Stack> enumerate_stacks(int n, const EnumerationBounds& b, std::size_t limit)
{
    std::vector<Stack> out;
    if (limit == 0)
        return out;
    for_each_stack(n, b, [&](const Stack& w) {
        out.push_back(w);
        return out.size() < limit;
    });
    return out;
}

EmptinessVerdict is_empty_bounded(const StackAutomaton& a, const StateSet& initial, const EnumerationBounds& b,
                                  const SearchBudget& budget)
{
    const MembershipChecker checker(a);
    const unsigned threads = std::max(1u, budget.threads);
    const auto deadline = budget.max_time ? std::chrono::steady_clock::now() + *budget.max_time
                                          : std::chrono::steady_clock::time_point::max();
    constexpr auto none = std::numeric_limits<std::uint64_t>::max();

    std::atomic<std::uint64_t> best{none};
    std::atomic<bool> exhausted_budget{false};
    std::atomic<std::uint64_t> streamed{0};
    std::mutex result_mutex;
    std::optional<Stack> witness;
    std::exception_ptr failure;

    auto worker = [&](unsigned t) {
        try {
            std::uint64_t index = 0;
            for_each_stack(a.order(), b, [&](const Stack& w) {
                const std::uint64_t mine = index++;
                if (mine >= best.load())
                    return false;
                if (budget.max_stacks && mine >= *budget.max_stacks) {
                    exhausted_budget = true;
                    return false;
                }
                if (mine % threads != t)
                    return true;
                if ((mine / threads) % 256 == 0 && std::chrono::steady_clock::now() > deadline) {
                    exhausted_budget = true;
                    return false;
                }
                if (!checker.accepts(w, initial))
                    return true;
                std::lock_guard lock(result_mutex);
                if (mine < best.load()) {
                    best = mine;
                    witness = w;
                }
                return false;
            });
            if (t == 0)
                streamed = index;
        } catch (...) {
            std::lock_guard lock(result_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker, t);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    EmptinessVerdict v;
    if (witness) {
        v.examined = best.load() + 1;
        v.witness = std::move(witness);
        return v;
    }
    if (exhausted_budget)
        throw ResourceBoundExceeded("enumeration budget exhausted before the bounds were covered");
    v.examined = streamed.load();
    return v;
}

EmptinessVerdict search_shaped(const StackAutomaton& a, const StateSet& initial, const std::vector<Stack>& shapes)
{
    const MembershipChecker checker(a);
    EmptinessVerdict v;
    for (const auto& w : shapes) {
        ++v.examined;
        if (checker.accepts(w, initial)) {
            v.witness = w;
            return v;
        }
    }
    return v;
}

} // namespace colstack
