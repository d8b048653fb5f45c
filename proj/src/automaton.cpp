#include "colstack/automaton.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace colstack {

StackAutomaton::StackAutomaton(int order)
    : order_(order)
{
    if (order < 1)
        throw std::invalid_argument("automaton order must be >= 1");
    const auto n = static_cast<std::size_t>(order);
    states_.resize(n);
    finals_.resize(n);
    transitions_.resize(n);
}

std::size_t StackAutomaton::index(int k) const
{
    if (k < 1 || k > order_)
        throw std::out_of_range("order " + std::to_string(k) + " outside 1.." + std::to_string(order_));
    return static_cast<std::size_t>(k - 1);
}

std::vector<OrderTransition>& StackAutomaton::transitions(int k)
{
    if (k < 2)
        throw std::out_of_range("order-1 transitions are letter transitions");
    return transitions_.at(index(k));
}

const std::vector<OrderTransition>& StackAutomaton::transitions(int k) const
{
    if (k < 2)
        throw std::out_of_range("order-1 transitions are letter transitions");
    return transitions_.at(index(k));
}

void StackAutomaton::add_symbol(std::string symbol)
{
    if (std::find(alphabet_.begin(), alphabet_.end(), symbol) == alphabet_.end())
        alphabet_.push_back(std::move(symbol));
}

void StackAutomaton::add_state(int k, std::string name, bool accepting)
{
    auto& qs = states(k);
    if (std::find(qs.begin(), qs.end(), name) == qs.end())
        qs.push_back(name);
    if (accepting)
        finals(k).insert(std::move(name));
}

void StackAutomaton::add_transition(int k, OrderTransition t)
{
    transitions(k).push_back(std::move(t));
}

void StackAutomaton::add_transition(LetterTransition t)
{
    letters_.push_back(std::move(t));
}

std::size_t StackAutomaton::state_count() const
{
    std::size_t total = 0;
    for (const auto& qs : states_)
        total += qs.size();
    return total;
}

std::size_t StackAutomaton::transition_count() const
{
    std::size_t total = letters_.size();
    for (const auto& ts : transitions_)
        total += ts.size();
    return total;
}

std::optional<int> StackAutomaton::order_of(const std::string& state) const
{
    for (int k = 1; k <= order_; ++k) {
        const auto& qs = states(k);
        if (std::find(qs.begin(), qs.end(), state) != qs.end())
            return k;
    }
    return std::nullopt;
}

std::optional<std::string> find_violation(const StackAutomaton& a)
{
    const int n = a.order();
    std::map<std::string, int> owner;
    for (int k = 1; k <= n; ++k) {
        for (const auto& q : a.states(k)) {
            auto [it, inserted] = owner.emplace(q, k);
            if (!inserted) {
                return "state " + q + " declared in both Q" + std::to_string(it->second) + " and Q" +
                       std::to_string(k);
            }
        }
    }
    auto in_order = [&](const std::string& q, int k) {
        auto it = owner.find(q);
        return it != owner.end() && it->second == k;
    };
    auto name_of = [](int k) { return "Q" + std::to_string(k); };

    std::set<std::string> letters;
    for (const auto& s : a.alphabet()) {
        if (!letters.insert(s).second)
            return "symbol " + s + " declared twice";
    }

    for (int k = 1; k <= n; ++k) {
        for (const auto& q : a.finals(k)) {
            if (!in_order(q, k))
                return "final state " + q + " of order " + std::to_string(k) + " is not in " + name_of(k);
        }
    }

    for (int k = 2; k <= n; ++k) {
        for (const auto& t : a.transitions(k)) {
            const std::string where = "order-" + std::to_string(k) + " transition from " + t.from;
            if (!in_order(t.from, k))
                return where + ": source is not in " + name_of(k);
            if (!in_order(t.top, k - 1))
                return where + ": top state " + t.top + " is not in " + name_of(k - 1);
            for (const auto& q : t.rest) {
                if (!in_order(q, k))
                    return where + ": target " + q + " is not in " + name_of(k);
            }
        }
    }

    for (const auto& t : a.letter_transitions()) {
        const std::string where = "order-1 transition from " + t.from + " on " + t.symbol;
        if (!in_order(t.from, 1))
            return where + ": source is not in Q1";
        if (!letters.count(t.symbol))
            return where + ": symbol not in the alphabet";
        for (const auto& q : t.rest) {
            if (!in_order(q, 1))
                return where + ": target " + q + " is not in Q1";
        }
        if (t.branch.empty()) {
            if (t.branch_order != 0)
                return where + ": empty branch set carries an order tag";
            continue;
        }
        if (t.branch_order < 2 || t.branch_order > n)
            return where + ": branch order " + std::to_string(t.branch_order) + " outside 2.." +
                   std::to_string(n);
        for (const auto& q : t.branch) {
            auto it = owner.find(q);
            if (it == owner.end())
                return where + ": branch state " + q + " is undeclared";
            if (it->second != t.branch_order)
                return where + ": branch set spans Q" + std::to_string(t.branch_order) + " and Q" +
                       std::to_string(it->second);
        }
    }
    return std::nullopt;
}

} // namespace colstack
