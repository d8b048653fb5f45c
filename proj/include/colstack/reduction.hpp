#pragma once

#include "colstack/automaton.hpp"
#include "colstack/stack.hpp"
#include "colstack/tiling.hpp"

#include <string>

namespace colstack {

/// Stack characters used by the grid encoding besides the tiles themselves.
inline const std::string kSpacer = "_";
inline const std::string kBitZero = "0";
inline const std::string kBitOne = "1";

struct ReductionOutput {
    StackAutomaton automaton{2};
    std::string initial;
};

/// Order-2 stack automaton accepting exactly the grid-shaped stacks that
/// encode solutions of p over the 2^n x 2^n corridor. Throws
/// std::invalid_argument when n == 0, p is inconsistent, or a tile name
/// clashes with the spacer or bit characters. Links on last-row spacers are
/// not inspected.
ReductionOutput build_automaton(const TilingProblem& p, unsigned n);

/// Grid layout: three spacer-only order-1 stacks, then one order-1 stack per
/// cell in row-major order holding spacer, row bits, column bits, tile. The
/// spacer of a cell outside the last row links (order 2) to the cell below.
Stack encode_witness(const TilingProblem& p, unsigned n, const TilingSolution& s);

/// Inverse of encode_witness, ignoring link values. Throws MalformedWitness
/// naming the first deviation from the layout.
TilingSolution decode_witness(const Stack& w, unsigned n);

} // namespace colstack
