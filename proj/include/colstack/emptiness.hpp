#pragma once

#include "colstack/automaton.hpp"
#include "colstack/stack.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace colstack {

struct EnumerationBounds {
    std::size_t max_atoms = 1;
    std::size_t max_width = 1; ///< components per stack, at every order
    std::vector<std::string> alphabet;
};

/// Visits every well-formed order-n stack within bounds once, in canonical
/// order: atom count, then shape (fewer components first, then component
/// shapes), then characters and links atom by atom from the top. Stops early
/// when visit returns false. Throws std::invalid_argument for n < 1 or
/// max_width == 0.
void for_each_stack(int n, const EnumerationBounds& b, const std::function<bool(const Stack&)>& visit);

/// The same stream collected; limit caps the number of stacks returned.
std::vector<Stack> enumerate_stacks(int n, const EnumerationBounds& b,
                                    std::size_t limit = static_cast<std::size_t>(-1));

struct EmptinessVerdict {
    std::optional<Stack> witness; ///< nullopt: no witness within bounds
    std::uint64_t examined = 0;   ///< stacks checked before the verdict

    bool found() const { return witness.has_value(); }
};

struct SearchBudget {
    std::optional<std::uint64_t> max_stacks;
    std::optional<std::chrono::milliseconds> max_time;
    unsigned threads = 1;
};

/// First stack of the canonical stream accepted from initial. The answer does
/// not depend on the thread count. Stacks are enumerated at the automaton's
/// order. Throws ResourceBoundExceeded when the budget runs out before the
/// stream is exhausted and nothing was found.
EmptinessVerdict is_empty_bounded(const StackAutomaton& a, const StateSet& initial, const EnumerationBounds& b,
                                  const SearchBudget& budget = {});

/// First stack of shapes accepted from initial.
EmptinessVerdict search_shaped(const StackAutomaton& a, const StateSet& initial, const std::vector<Stack>& shapes);

} // namespace colstack
