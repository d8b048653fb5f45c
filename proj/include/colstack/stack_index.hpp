#pragma once

#include "colstack/stack.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace colstack {

/// Flattened view of an order-n stack. Substack positions are numbered top
/// to bottom; position p is the suffix starting at token p, where a token is
/// either an atom or the closing bracket of an order-k stack. Position 0 is
/// the whole stack and the last position is the empty order-n stack.
class StackIndex {
public:
    explicit StackIndex(const Stack& w);

    int order() const { return order_; }
    std::size_t size() const { return tokens_.size(); }

    bool is_atom(std::size_t p) const { return tokens_[p].close_order == 0; }
    const Atom& atom(std::size_t p) const { return *tokens_[p].atom; }

    /// 1 for atoms, k when the topmost order-k stack at p is empty.
    int lowest_order(std::size_t p) const {
        return is_atom(p) ? 1 : tokens_[p].close_order;
    }

    /// Orders lowest_order(p)..n carry a run set at p.
    bool has_order(std::size_t p, int k) const {
        return k >= lowest_order(p) && k <= order_;
    }

    /// Position of pop_k at p; defined for k > lowest_order(p), and for k = 1
    /// on atoms.
    std::optional<std::size_t> pop(std::size_t p, int k) const;

    /// Destination of the top character's link at p (atoms only).
    std::optional<std::size_t> link_destination(std::size_t p) const;

private:
    struct Token {
        int close_order = 0; // 0 for atoms
        const Atom* atom = nullptr;
        std::int32_t group = -1; // component list of the closed stack
    };

    void flatten(const Stack& s);
    std::size_t next_close(std::size_t p, int k) const {
        return next_close_[static_cast<std::size_t>(k - 1)][p];
    }

    int order_;
    std::vector<Token> tokens_;
    std::vector<std::vector<std::uint32_t>> groups_;
    // next_close_[k-1][p]: first q >= p whose token closes a stack of order >= k
    std::vector<std::vector<std::uint32_t>> next_close_;
};

} // namespace colstack
