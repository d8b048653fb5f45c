#pragma once

#include "colstack/stack.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace colstack {

/// (q, a, op, q'): in control q with top character a, apply op and move to q'.
struct OrdinaryRule {
    std::string source;
    std::string symbol;
    StackOperation op;
    std::string target;

    auto operator<=>(const OrdinaryRule&) const = default;
};

/// (q, {q1 .. qk}): universal branching without touching the stack.
struct AlternatingRule {
    std::string source;
    std::set<std::string> targets;

    auto operator<=>(const AlternatingRule&) const = default;
};

using CpdsRule = std::variant<OrdinaryRule, AlternatingRule>;

struct Configuration {
    std::string control;
    Stack stack;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend std::strong_ordering operator<=>(const Configuration& a, const Configuration& b)
    {
        if (auto c = a.control <=> b.control; c != 0)
            return c;
        return a.stack <=> b.stack;
    }
};

/// A successor is either one configuration or, for alternating rules, a set
/// of configurations that must all be reached.
using SuccessorItem = std::variant<Configuration, std::vector<Configuration>>;

class Cpds {
public:
    explicit Cpds(int order = 1) : order_(order) {}

    int order() const { return order_; }
    const std::vector<std::string>& controls() const { return controls_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<CpdsRule>& rules() const { return rules_; }

    void add_control(std::string q);
    void add_symbol(std::string a);
    /// Duplicates of an existing rule are dropped.
    void add_rule(CpdsRule r);

    friend bool operator==(const Cpds&, const Cpds&) = default;

private:
    int order_;
    std::vector<std::string> controls_;
    std::vector<std::string> alphabet_;
    std::vector<CpdsRule> rules_;
};

/// First problem with the system (unknown control, symbol or operation of
/// the wrong order), or nullopt.
std::optional<std::string> find_violation(const Cpds& sys);

/// Throws std::invalid_argument when c's stack is not a well-formed stack of
/// the system's order. Rules are tried in declaration order.
std::vector<SuccessorItem> successors(const Configuration& c, const Cpds& sys);

/// Configurations reachable in at most depth steps, members of alternating
/// successor sets counted as reached. Throws ResourceBoundExceeded when more
/// than max_visited configurations are found.
std::set<Configuration> bounded_reach(const Configuration& start, const Cpds& sys, std::size_t depth,
                                      std::size_t max_visited = 1'000'000);

} // namespace colstack
