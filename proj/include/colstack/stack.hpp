#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace colstack {

/// Collapse link <order, index>. Order-1 links are never followed; they
/// behave as null links whatever their index.
struct Link {
    int order = 1;
    std::size_t index = 0;

    auto operator<=>(const Link&) const = default;
    bool is_null() const { return order < 2 || index == 0; }
};

struct Atom {
    std::string symbol;
    Link link;

    auto operator<=>(const Atom&) const = default;
};

/// An order-k collapsible stack. Order 0 is a single atom; order k >= 1 is a
/// sequence of order-(k-1) stacks stored top first. Values are immutable once
/// built; every operation below returns a fresh stack.
class Stack {
public:
    /// Empty order-1 stack.
    Stack() = default;

    static Stack atom(std::string symbol, Link link = {});
    static Stack empty(int order);
    /// Throws std::invalid_argument unless every component has order - 1.
    static Stack of(int order, std::vector<Stack> components);

    int order() const { return order_; }
    bool is_atom() const { return order_ == 0; }
    const Atom& as_atom() const;

    /// Components, top first. Empty for atoms.
    std::span<const Stack> components() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return order_ > 0 && items_.empty(); }

    /// Number of atoms in the whole tree.
    std::size_t atom_count() const;

    friend bool operator==(const Stack& a, const Stack& b);
    friend std::strong_ordering operator<=>(const Stack& a, const Stack& b);

private:
    int order_ = 1;
    Atom atom_;
    std::vector<Stack> items_;
};

/// Well-formedness: w has order n, every link order lies in 1..n, and a link
/// <o,i> on a character inside component j (1-based, top first) of an order-o
/// stack with m components satisfies i <= m - j.
bool is_well_formed(const Stack& w, int n);

/// Same as above, and every character belongs to the given alphabet.
bool is_well_formed(const Stack& w, int n, std::span<const std::string> alphabet);

/// Topmost order-(k-1) stack, 1 <= k <= order+1. top(order+1, w) is w.
std::optional<Stack> top(int k, const Stack& w);

/// Keep only the i bottommost components of the topmost order-k stack;
/// nullopt for i == 0 or when fewer than i components exist.
std::optional<Stack> bottom(int k, std::size_t i, const Stack& w);

/// u :_k v, placing the order-(k-1) stack u on top of the topmost order-k
/// stack of v. Throws std::invalid_argument when the orders do not fit or
/// the spine of v is empty above order k.
Stack compose(const Stack& u, int k, const Stack& v);

/// Inverse of compose: w = u :_k v.
std::optional<std::pair<Stack, Stack>> decompose(int k, const Stack& w);

struct StackOperation {
    enum class Kind { Pop, Push, Collapse, CPush, Rew };

    Kind kind = Kind::Pop;
    int order = 1;      ///< 1 for Rew
    std::string symbol; ///< CPush and Rew only

    static StackOperation pop(int k) { return {Kind::Pop, k, {}}; }
    static StackOperation push(int k) { return {Kind::Push, k, {}}; }
    static StackOperation collapse(int k) { return {Kind::Collapse, k, {}}; }
    static StackOperation cpush(std::string b, int k) { return {Kind::CPush, k, std::move(b)}; }
    static StackOperation rew(std::string b) { return {Kind::Rew, 1, std::move(b)}; }

    auto operator<=>(const StackOperation&) const = default;
};

/// Structural sanity of the operation itself (push/collapse/cpush need k >= 2).
bool is_valid_operation(const StackOperation& op, int n);

/// Applies op; nullopt when the operation is undefined on w.
std::optional<Stack> apply(const StackOperation& op, const Stack& w);

/// Every suffix of w from w itself down to the empty order-n stack, top first.
std::vector<Stack> substacks(const Stack& w);

/// Position of the destination of the top character's link of the substack
/// at position p, or nullopt when the link is null or p has no top character.
std::optional<std::size_t> link_destination(std::size_t p, const Stack& w);

} // namespace colstack
