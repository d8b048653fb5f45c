#pragma once

#include "colstack/automaton.hpp"
#include "colstack/cpds.hpp"
#include "colstack/membership.hpp"
#include "colstack/stack.hpp"
#include "colstack/tiling.hpp"

#include <string>
#include <string_view>

namespace colstack {

// Every parser throws ParseError with a 1-based line and column. Printers
// emit the canonical form: single spaces, one item per line, trailing newline
// for line-oriented formats.

/// `[[[a(3,1) b(1,0)]1]2 [[c(2,1)]1]2]3`, leftmost item on top. An atom
/// written without a link gets <1,0>.
std::string print_stack(const Stack& w);
Stack parse_stack(std::string_view text);

/// pop1, push2, collapse3, cpush2:b, rew:b
std::string print_operation(const StackOperation& op);
StackOperation parse_operation(std::string_view text);

/// Line-oriented automaton format:
///   order 2
///   alphabet a b
///   states2 p pf
///   final2 pf
///   states1 q f
///   final1 f
///   t2 p / q -> { pf }
///   t1 q a / 2 { p } -> { f }
///   t1 q b / { } -> { }
/// `#` starts a comment. The parsed automaton is validated; a violation is
/// reported as a ParseError at the end of the input.
std::string print_automaton(const StackAutomaton& a);
StackAutomaton parse_automaton(std::string_view text);

/// One line per entry: `pos P order K { q1 ... }`.
std::string print_certificate(const RunCertificate& r);
RunCertificate parse_certificate(std::string_view text);

/// Lines `tiles ...`, `init t`, `final t`, `h a b`, `v a b`.
std::string print_tiling(const TilingProblem& p);
TilingProblem parse_tiling(std::string_view text);

/// One grid row per line, tiles separated by spaces; n follows from the cell
/// count, which must be a power of four.
std::string print_solution(const TilingSolution& s);
TilingSolution parse_solution(std::string_view text);

/// Lines `order N`, `alphabet ...`, `controls ...`, `rule q a OP q'` and
/// `alt q { q1 q2 }`. Duplicate rules are dropped.
std::string print_cpds(const Cpds& sys);
Cpds parse_cpds(std::string_view text);

/// `q STACK`
std::string print_configuration(const Configuration& c);
Configuration parse_configuration(std::string_view text);

/// A configuration, or `{ q1 STACK ; q2 STACK }` for an alternating set.
std::string print_successor(const SuccessorItem& item);

} // namespace colstack
