#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace colstack {

using StateSet = std::set<std::string>;

/// q ->_{top} rest in Delta_k for k >= 2: the topmost order-(k-1) stack is
/// read from `top` and the remainder from every state of `rest`.
struct OrderTransition {
    std::string from;
    std::string top;
    StateSet rest;

    auto operator<=>(const OrderTransition&) const = default;
};

/// q -(a, branch)-> rest in Delta_1. A non-empty branch set carries the order
/// of the link it follows (2..n); an empty one has branch_order 0 and fires on
/// any link, null links included.
struct LetterTransition {
    std::string from;
    std::string symbol;
    int branch_order = 0;
    StateSet branch;
    StateSet rest;

    auto operator<=>(const LetterTransition&) const = default;
};

/// Order-n stack automaton. States of each order are kept in declaration
/// order so that printing is stable.
class StackAutomaton {
public:
    explicit StackAutomaton(int order = 1);

    int order() const { return order_; }

    std::vector<std::string>& alphabet() { return alphabet_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }

    std::vector<std::string>& states(int k) { return states_.at(index(k)); }
    const std::vector<std::string>& states(int k) const { return states_.at(index(k)); }

    StateSet& finals(int k) { return finals_.at(index(k)); }
    const StateSet& finals(int k) const { return finals_.at(index(k)); }

    /// Delta_k for 2 <= k <= n.
    std::vector<OrderTransition>& transitions(int k);
    const std::vector<OrderTransition>& transitions(int k) const;

    std::vector<LetterTransition>& letter_transitions() { return letters_; }
    const std::vector<LetterTransition>& letter_transitions() const { return letters_; }

    void add_symbol(std::string symbol);
    void add_state(int k, std::string name, bool accepting = false);
    void add_transition(int k, OrderTransition t);
    void add_transition(LetterTransition t);

    std::size_t state_count() const;
    std::size_t transition_count() const;

    /// Order of a declared state, or nullopt.
    std::optional<int> order_of(const std::string& state) const;

    friend bool operator==(const StackAutomaton&, const StackAutomaton&) = default;

private:
    std::size_t index(int k) const;

    int order_;
    std::vector<std::string> alphabet_;
    std::vector<std::vector<std::string>> states_;
    std::vector<StateSet> finals_;
    std::vector<std::vector<OrderTransition>> transitions_; // [k-1], k >= 2
    std::vector<LetterTransition> letters_;
};

/// First violation of the automaton's well-formedness conditions, or nullopt
/// when it is valid: disjoint state sets, F_k within Q_k, transitions typed by
/// order, branch sets within a single Q_o with o in 2..n.
std::optional<std::string> find_violation(const StackAutomaton& a);

inline bool is_valid(const StackAutomaton& a) { return !find_violation(a); }

} // namespace colstack
