#pragma once

// Reference implementations used only by the tests. They follow the
// definitions directly on stack trees and share no code with the
// position-indexed algorithms in the library.

#include "colstack/automaton.hpp"
#include "colstack/membership.hpp"
#include "colstack/stack.hpp"
#include "colstack/tiling.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using colstack::Stack;
using colstack::StackAutomaton;
using colstack::StateSet;

/// Top-down evaluation of the acceptance conditions: q (of order k) accepts
/// the stack u when a proof tree exists. Memoized per instance.
class TopDown {
public:
    explicit TopDown(const StackAutomaton& a) : a_(a) {}

    bool accepts(const Stack& u, int k, const std::string& q);
    /// Every state of initial accepts w at its own order.
    bool accepts(const Stack& w, const StateSet& initial);

private:
    const StackAutomaton& a_;
    std::map<std::tuple<std::string, int, std::string>, bool> memo_;
};

/// Literal search over every certificate (one subset of Q_k per position and
/// order). nullopt when the space exceeds max_certificates.
std::optional<bool> exists_certificate(const Stack& w, const StackAutomaton& a, const StateSet& initial,
                                       std::uint64_t max_certificates = 1u << 20);

/// Substacks as the least set containing w closed under u :_k v -> v.
std::vector<Stack> substack_closure(const Stack& w);

/// Number of well-formed order-n stacks within the bounds, by generating a
/// superset of labelled trees and filtering with the well-formedness check.
std::uint64_t count_stacks(int n, std::size_t max_atoms, std::size_t max_width,
                           const std::vector<std::string>& alphabet);

/// Random well-formed order-n stack; every link is drawn from its valid range.
Stack random_stack(std::mt19937& rng, int n, std::size_t max_width, const std::vector<std::string>& alphabet,
                   std::size_t max_depth_atoms = 12);

/// Random automaton with 1..max_states states per order, initial candidates
/// taken from the order-n states.
StackAutomaton random_automaton(std::mt19937& rng, int n, const std::vector<std::string>& alphabet,
                                std::size_t max_states = 3);

/// Every |T|^(4^n) assignment of the grid.
std::vector<colstack::TilingSolution> all_assignments(const colstack::TilingProblem& p, unsigned n);

} // namespace oracle
