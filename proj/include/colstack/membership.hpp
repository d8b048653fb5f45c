#pragma once

#include "colstack/automaton.hpp"
#include "colstack/stack.hpp"
#include "colstack/stack_index.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace colstack {

/// Assignment of at most one state set per (substack position, order).
struct RunCertificate {
    using Key = std::pair<std::size_t, int>;

    std::map<Key, StateSet> entries;

    void set(std::size_t position, int order, StateSet states)
    {
        entries[{position, order}] = std::move(states);
    }
    const StateSet* find(std::size_t position, int order) const
    {
        auto it = entries.find({position, order});
        return it == entries.end() ? nullptr : &it->second;
    }

    friend bool operator==(const RunCertificate&, const RunCertificate&) = default;
};

namespace detail {
struct CompiledAutomaton;
}

/// Result of the bottom-up pass: for every position p and every order k in
/// lowest_order(p)..n, the largest set of order-k states from which the
/// suffix at p is accepted.
class MembershipTable {
public:
    std::size_t positions() const { return offsets_.size(); }
    int order() const { return order_; }

    bool has(std::size_t p, int k) const;
    bool contains(std::size_t p, int k, const std::string& state) const;
    /// State names of the entry, in declaration order.
    std::vector<std::string> states(std::size_t p, int k) const;

    /// Number of (position, order) entries that were computed.
    std::size_t entry_count() const { return entries_; }

private:
    friend class MembershipChecker;

    const std::uint64_t* entry(std::size_t p, int k) const;
    std::uint64_t* entry(std::size_t p, int k);

    std::shared_ptr<const detail::CompiledAutomaton> automaton_;
    int order_ = 0;
    std::vector<int> lowest_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> order_offset_; // words before order k within a position, k indexed
    std::vector<std::uint64_t> words_;
    std::size_t entries_ = 0;
};

/// Compiles an automaton once and answers membership queries against it.
/// Throws std::invalid_argument for invalid automata.
class MembershipChecker {
public:
    explicit MembershipChecker(const StackAutomaton& a);

    int order() const;

    /// Throws OrderMismatch when w's order differs from the automaton's, and
    /// std::invalid_argument when w is not well formed.
    MembershipTable table(const Stack& w) const;

    /// initial must be a set of states of one order; empty sets accept all.
    bool accepts(const Stack& w, const StateSet& initial) const;
    bool accepts(const MembershipTable& t, const StateSet& initial) const;

private:
    void fill(MembershipTable& t, const StackIndex& index) const;
    int initial_order(const StateSet& initial) const;

    std::shared_ptr<const detail::CompiledAutomaton> automaton_;
};

bool member(const Stack& w, const StackAutomaton& a, const StateSet& initial);

/// The full membership table as a certificate. Throws NotAccepted when w is
/// not accepted from initial.
RunCertificate extract_run(const Stack& w, const StackAutomaton& a, const StateSet& initial);

/// Checks r against the acceptance conditions of a run on w and that its set
/// at position 0 contains initial. Throws MalformedCertificate when an entry a
/// condition depends on is missing or r names unknown positions or states.
bool check_run(const Stack& w, const StackAutomaton& a, const RunCertificate& r,
               const StateSet& initial);

} // namespace colstack
