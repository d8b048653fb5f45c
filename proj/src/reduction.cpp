#include "colstack/reduction.hpp"
#include "colstack/errors.hpp"

#include <stdexcept>

namespace colstack {

namespace {

using Names = std::vector<std::string>;

std::string idx(const std::string& base, const char* key, unsigned v)
{
    return base + "." + key + "=" + std::to_string(v);
}

/// Accumulates the order-2 automaton. Bits of the 2n-bit number
/// bin(row) bin(col) are numbered from the right starting at 1, so an
/// order-1 cell stack reads spacer, bit 2n, ..., bit 1, tile.
class GridAutomatonBuilder {
public:
    GridAutomatonBuilder(const TilingProblem& p, unsigned n)
        : p_(p), n_(n), bits_(2 * n)
    {
    }

    ReductionOutput build();

private:
    std::string q2(const std::string& name, bool accepting = false)
    {
        a_.add_state(2, name, accepting);
        return name;
    }
    std::string q1(const std::string& name, bool accepting = false)
    {
        a_.add_state(1, name, accepting);
        return name;
    }
    void t2(const std::string& from, const std::string& top, const Names& rest)
    {
        a_.add_transition(2, OrderTransition{from, top, StateSet(rest.begin(), rest.end())});
    }
    void t1(const std::string& from, const std::string& symbol, const Names& rest)
    {
        a_.add_transition(LetterTransition{from, symbol, 0, {}, StateSet(rest.begin(), rest.end())});
    }

    /// Order-1 checker reading the spacer and then bits 2n down to `lowest`;
    /// allowed(j) gives the admissible bit characters at bit j. Everything
    /// after bit `lowest` is accepted unread.
    template <typename Allowed>
    std::string bit_pattern(const std::string& name, unsigned lowest, Allowed allowed)
    {
        q1(name);
        auto at = [&](unsigned j) { return idx(name, "j", j); };
        for (unsigned j = bits_; j >= lowest; --j)
            q1(at(j));
        t1(name, kSpacer, {at(bits_)});
        for (unsigned j = bits_; j >= lowest; --j) {
            Names next = j == lowest ? Names{} : Names{at(j - 1)};
            for (const auto& bit : allowed(j))
                t1(at(j), bit, next);
        }
        return name;
    }

    /// Bit i is `bit` and every bit between `lowest` and i holds the other
    /// value: the rightmost `bit` within bits lowest.. sits at position i.
    std::string rightmost(const std::string& name, const std::string& bit, unsigned i, unsigned lowest)
    {
        const std::string& other = bit == kBitZero ? kBitOne : kBitZero;
        return bit_pattern(name, lowest, [&, i](unsigned j) -> Names {
            if (j > i)
                return {kBitZero, kBitOne};
            if (j == i)
                return {bit};
            return {other};
        });
    }

    /// Bit i holds `bit`.
    std::string bit_is(unsigned i, const std::string& bit)
    {
        const std::string name = idx(idx("bit", "i", i), "b", bit == kBitOne ? 1u : 0u);
        if (a_.order_of(name))
            return name;
        return bit_pattern(name, i, [&, i](unsigned j) -> Names {
            if (j == i)
                return {bit};
            return {kBitZero, kBitOne};
        });
    }

    /// [q]_spacer: sends q through the order-2 link of the spacer.
    std::string pass(const std::string& q)
    {
        const std::string name = "pass[" + q + "]";
        q1(name);
        a_.add_transition(LetterTransition{name, kSpacer, 2, {q}, {}});
        return name;
    }

    std::string tile_state(const std::string& t) const { return "tile=" + t; }

    void shape();
    void first_index();
    void last_index();
    void counter_sequence();
    void link_grid();
    void initial_tile();
    void final_tile();
    void horizontal();
    void vertical();
    void placement();

    const TilingProblem& p_;
    unsigned n_;
    unsigned bits_;
    StackAutomaton a_{2};

    // shared states
    std::string qI_ = "qI", qf2_ = "qf2", qf1_ = "qf1", q_sp_ = "q_sp", q_any_ = "q_any";
    std::string last_row_ = "qDr", last_col_ = "qDc";
};

ReductionOutput GridAutomatonBuilder::build()
{
    a_.add_symbol(kSpacer);
    a_.add_symbol(kBitZero);
    a_.add_symbol(kBitOne);
    for (const auto& t : p_.tiles)
        a_.add_symbol(t);

    q2(qI_);
    q2(qf2_, true);
    q1(q_sp_);
    q1(q_any_);
    q1(qf1_, true);

    Names props;
    for (int k = 1; k <= 10; ++k)
        props.push_back(q2("p" + std::to_string(k)));
    t2(qI_, q_sp_, props);
    t1(q_sp_, kSpacer, {qf1_});
    t1(q_any_, kSpacer, {});

    // row index is 2^n - 1: bits 2n..n+1 are all ones
    bit_pattern(last_row_, n_ + 1, [](unsigned) -> Names { return {kBitOne}; });
    // column index is 2^n - 1: bits n..1 are all ones
    bit_pattern(last_col_, 1, [this](unsigned j) -> Names {
        if (j > n_)
            return {kBitZero, kBitOne};
        return {kBitOne};
    });
    for (const auto& t : p_.tiles) {
        const std::string q = q1(tile_state(t));
        for (const auto& c : {kSpacer, kBitZero, kBitOne})
            t1(q, c, {q});
        t1(q, t, {});
    }

    shape();
    first_index();
    last_index();
    counter_sequence();
    link_grid();
    initial_tile();
    final_tile();
    horizontal();
    vertical();
    placement();
    return ReductionOutput{std::move(a_), qI_};
}

// Three spacer stacks, then cells of the form spacer {0,1}^2n tile.
void GridAutomatonBuilder::shape()
{
    const std::string p = "p1", p1 = q2("p1.1"), p2 = q2("p1.2");
    t2(p, q_sp_, {p1});
    t2(p1, q_sp_, {p2});

    const std::string qS = q1("qS");
    auto qB = [](unsigned i) { return idx("qB", "i", i); };
    for (unsigned i = 0; i <= bits_; ++i)
        q1(qB(i));
    t1(qS, kSpacer, {qB(bits_)});
    for (unsigned i = 1; i <= bits_; ++i) {
        t1(qB(i), kBitZero, {qB(i - 1)});
        t1(qB(i), kBitOne, {qB(i - 1)});
    }
    for (const auto& t : p_.tiles)
        t1(qB(0), t, {qf1_});

    t2(p2, qS, {p2});
    t2(p2, qS, {qf2_});
}

// The first cell holds bin(0) bin(0).
void GridAutomatonBuilder::first_index()
{
    const std::string p = "p2", p1 = q2("p2.1"), p2 = q2("p2.2");
    const std::string q00 = bit_pattern("q00", 1, [](unsigned) -> Names { return {kBitZero}; });
    t2(p, q_any_, {p1});
    t2(p1, q_any_, {p2});
    t2(p2, q00, {});
}

// The last cell holds bin(2^n-1) bin(2^n-1).
void GridAutomatonBuilder::last_index()
{
    const std::string p = "p3";
    const std::string qDD = bit_pattern("qDD", 1, [](unsigned) -> Names { return {kBitOne}; });
    t2(p, q_any_, {p});
    t2(p, qDD, {qf2_});
}

// Each cell below the first holds the successor of the 2n-bit number above.
// p4 reading stack s launches the comparison of stacks s+2 and s+3.
void GridAutomatonBuilder::counter_sequence()
{
    const std::string p = "p4";
    auto zero = [](unsigned i) { return idx("p4.zero", "i", i); };
    auto eq = [](unsigned i) { return idx("p4.eq", "i", i); };
    auto eqb = [&](unsigned i, unsigned b) { return idx(eq(i), "b", b); };

    for (unsigned i = 1; i <= bits_; ++i) {
        q2(zero(i));
        q2(zero(i) + ".next");
        q2(idx("p4.one", "i", i));
        q2(eq(i));
        for (unsigned b = 0; b <= 1; ++b) {
            q2(eqb(i, b));
            q2(eqb(i, b) + ".next");
        }
    }

    for (unsigned i = 1; i <= bits_; ++i) {
        Names rest{p, zero(i)};
        for (unsigned j = i + 1; j <= bits_; ++j)
            rest.push_back(eq(j));
        t2(p, q_any_, rest);
    }
    for (unsigned i = 1; i <= bits_; ++i) {
        t2(zero(i), q_any_, {zero(i) + ".next"});
        for (unsigned b = 0; b <= 1; ++b)
            t2(eq(i), q_any_, {eqb(i, b)});
    }
    for (unsigned i = 1; i <= bits_; ++i) {
        const std::string one = idx("p4.one", "i", i);
        t2(zero(i) + ".next", rightmost(idx("z", "i", i), kBitZero, i, 1), {one});
        t2(one, rightmost(idx("o", "i", i), kBitOne, i, 1), {});
        for (unsigned b = 0; b <= 1; ++b) {
            const std::string& bit = b ? kBitOne : kBitZero;
            t2(eqb(i, b), bit_is(i, bit), {eqb(i, b) + ".next"});
            t2(eqb(i, b) + ".next", bit_is(i, bit), {});
        }
    }
    // the bottommost stack is left unchecked
    t2(p, q_any_, {qf2_});
    for (unsigned i = 1; i <= bits_; ++i) {
        for (const auto& q : {zero(i), zero(i) + ".next", eq(i), eqb(i, 0), eqb(i, 1)})
            t2(q, q_any_, {qf2_});
    }
}

// The spacer link of a cell outside the last row leads to the cell below:
// same column bits, row bits incremented.
void GridAutomatonBuilder::link_grid()
{
    const std::string p = "p5";
    auto zero = [](unsigned i) { return idx("p5.zero", "i", i); };
    auto one = [](unsigned i) { return idx("p5.one", "i", i); };
    auto eq = [](unsigned i) { return idx("p5.eq", "i", i); };
    auto eqb = [&](unsigned i, unsigned b) { return idx(eq(i), "b", b); };

    for (unsigned i = n_ + 1; i <= bits_; ++i) {
        q2(zero(i));
        q2(zero(i) + ".next");
        q2(one(i) + ".link");
        q2(one(i));
    }
    for (unsigned i = 1; i <= bits_; ++i) {
        q2(eq(i));
        for (unsigned b = 0; b <= 1; ++b) {
            q2(eqb(i, b));
            q2(eqb(i, b) + ".link");
            q2(eqb(i, b) + ".next");
        }
    }

    for (unsigned i = n_ + 1; i <= bits_; ++i) {
        Names rest{p};
        for (unsigned j = 1; j <= n_; ++j)
            rest.push_back(eq(j));
        rest.push_back(zero(i));
        for (unsigned j = i + 1; j <= bits_; ++j)
            rest.push_back(eq(j));
        t2(p, q_any_, rest);
    }
    for (unsigned i = 1; i <= bits_; ++i) {
        for (unsigned b = 0; b <= 1; ++b)
            t2(eq(i), q_any_, {eqb(i, b), eqb(i, b) + ".link"});
    }
    for (unsigned i = n_ + 1; i <= bits_; ++i)
        t2(zero(i), q_any_, {zero(i) + ".next", one(i) + ".link"});

    for (unsigned i = 1; i <= bits_; ++i) {
        for (unsigned b = 0; b <= 1; ++b) {
            const std::string& bit = b ? kBitOne : kBitZero;
            t2(eqb(i, b), bit_is(i, bit), {});
            t2(eqb(i, b) + ".link", pass(eqb(i, b) + ".next"), {});
            t2(eqb(i, b) + ".next", bit_is(i, bit), {});
        }
    }
    for (unsigned i = n_ + 1; i <= bits_; ++i) {
        t2(zero(i) + ".next", rightmost(idx("zr", "i", i), kBitZero, i, n_ + 1), {});
        t2(one(i) + ".link", pass(one(i)), {});
        t2(one(i), rightmost(idx("or", "i", i), kBitOne, i, n_ + 1), {});
    }

    // cells on the last row have no link to check
    t2(p, last_row_, {});
    for (unsigned i = n_ + 1; i <= bits_; ++i) {
        t2(zero(i), last_row_, {});
        t2(zero(i) + ".next", last_row_, {});
        t2(one(i) + ".link", last_row_, {});
    }
    for (unsigned i = 1; i <= bits_; ++i) {
        t2(eq(i), last_row_, {});
        for (unsigned b = 0; b <= 1; ++b) {
            t2(eqb(i, b), last_row_, {});
            t2(eqb(i, b) + ".link", last_row_, {});
        }
    }
}

void GridAutomatonBuilder::initial_tile()
{
    const std::string p = "p6", p1 = q2("p6.1"), p2 = q2("p6.2");
    t2(p, q_any_, {p1});
    t2(p1, q_any_, {p2});
    t2(p2, tile_state(p_.initial), {});
}

void GridAutomatonBuilder::final_tile()
{
    const std::string p = "p7";
    t2(p, q_any_, {p});
    t2(p, tile_state(p_.final), {qf2_});
}

// p8.run reading stack s guesses the pair held by stacks s+1 and s+2.
void GridAutomatonBuilder::horizontal()
{
    const std::string p = "p8", run = q2("p8.run");
    t2(p, q_any_, {run});
    for (const auto& [t, u] : p_.horizontal) {
        const std::string pair = q2("p8.pair.t=" + t + ".u=" + u);
        const std::string right = q2("p8.right.u=" + u);
        t2(run, q_any_, {run, pair});
        t2(pair, tile_state(t), {right});
        t2(right, tile_state(u), {});
        t2(pair, last_col_, {});
    }
    t2(run, last_col_, {qf2_});
}

// p9.run reading stack s guesses the tile of stack s+1 and of the cell its
// spacer links to.
void GridAutomatonBuilder::vertical()
{
    const std::string p = "p9", run = q2("p9.run");
    t2(p, q_any_, {run});
    for (const auto& [t, u] : p_.vertical) {
        const std::string here = q2("p9.v.t=" + t);
        const std::string link = q2("p9.link.u=" + u);
        const std::string below = q2("p9.below.u=" + u);
        t2(run, q_any_, {run, here, link});
        t2(here, tile_state(t), {});
        t2(link, pass(below), {});
        t2(below, tile_state(u), {});
        t2(here, last_row_, {});
        t2(link, last_row_, {});
    }
    t2(run, last_row_, {});
}

// The initial tile sits only in the first cell and the final tile only in
// the last: each cell either holds another tile, or holds the initial tile
// under index 0...0, or the final tile under index 1...1.
void GridAutomatonBuilder::placement()
{
    const std::string p = "p10", p1 = q2("p10.1"), p2 = q2("p10.2");
    t2(p, q_any_, {p1});
    t2(p1, q_any_, {p2});

    auto cell = [&](const std::string& name, const Names& bits, const Names& tiles) {
        if (tiles.empty())
            return;
        auto at = [&](unsigned j) { return idx(name, "j", j); };
        q1(name);
        for (unsigned j = 0; j <= bits_; ++j)
            q1(at(j));
        t1(name, kSpacer, {at(bits_)});
        for (unsigned j = bits_; j >= 1; --j) {
            for (const auto& b : bits)
                t1(at(j), b, {at(j - 1)});
        }
        for (const auto& t : tiles)
            t1(at(0), t, {});
        t2(p2, name, {p2});
        t2(p2, name, {qf2_});
    };
    Names others;
    for (const auto& t : p_.tiles) {
        if (t != p_.initial && t != p_.final)
            others.push_back(t);
    }
    cell("p10.other", {kBitZero, kBitOne}, others);
    // a tile that is both initial and final fits no cell of a grid with n >= 1
    if (p_.initial != p_.final) {
        cell("p10.first", {kBitZero}, {p_.initial});
        cell("p10.last", {kBitOne}, {p_.final});
    }
}

template <typename T>
void dedupe(std::vector<T>& v)
{
    std::vector<T> out;
    std::set<T> seen;
    for (auto& x : v) {
        if (seen.insert(x).second)
            out.push_back(std::move(x));
    }
    v = std::move(out);
}

std::string bin(std::size_t value, unsigned n, std::size_t i)
{
    return ((value >> (n - 1 - i)) & 1u) ? kBitOne : kBitZero;
}

} // namespace

ReductionOutput build_automaton(const TilingProblem& p, unsigned n)
{
    if (n == 0)
        throw std::invalid_argument("reduction needs n >= 1");
    if (auto v = find_violation(p))
        throw std::invalid_argument("invalid tiling problem: " + *v);
    for (const auto& t : p.tiles) {
        if (t == kSpacer || t == kBitZero || t == kBitOne)
            throw std::invalid_argument("tile name " + t + " clashes with a reserved character");
    }
    auto out = GridAutomatonBuilder(p, n).build();
    dedupe(out.automaton.transitions(2));
    dedupe(out.automaton.letter_transitions());
    return out;
}

Stack encode_witness(const TilingProblem& p, unsigned n, const TilingSolution& s)
{
    if (s.n() != n)
        throw DimensionMismatch("solution is a 2^" + std::to_string(s.n()) + " grid, expected 2^" +
                                std::to_string(n));
    if (auto v = find_violation(p))
        throw std::invalid_argument("invalid tiling problem: " + *v);
    const std::size_t side = s.side();
    const std::size_t m = 3 + side * side;

    std::vector<Stack> rows;
    rows.reserve(m);
    for (int k = 0; k < 3; ++k)
        rows.push_back(Stack::of(1, {Stack::atom(kSpacer)}));
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            const std::size_t pos = rows.size() + 1; // 1-based, top first
            Link link;
            if (r + 1 < side)
                link = Link{2, m - pos - side + 1};
            std::vector<Stack> cell;
            cell.reserve(2 * n + 2);
            cell.push_back(Stack::atom(kSpacer, link));
            for (unsigned b = 0; b < n; ++b)
                cell.push_back(Stack::atom(bin(r, n, b)));
            for (unsigned b = 0; b < n; ++b)
                cell.push_back(Stack::atom(bin(c, n, b)));
            cell.push_back(Stack::atom(s.at(r, c)));
            rows.push_back(Stack::of(1, std::move(cell)));
        }
    }
    return Stack::of(2, std::move(rows));
}

TilingSolution decode_witness(const Stack& w, unsigned n)
{
    if (w.order() != 2)
        throw MalformedWitness("witness must be an order-2 stack");
    if (n == 0 || n >= 16)
        throw MalformedWitness("unsupported grid size");
    const std::size_t side = std::size_t{1} << n;
    const std::size_t m = 3 + side * side;
    if (w.size() != m)
        throw MalformedWitness("expected " + std::to_string(m) + " order-1 stacks, found " +
                               std::to_string(w.size()));
    const auto comps = w.components();
    for (std::size_t k = 0; k < 3; ++k) {
        if (comps[k].size() != 1 || comps[k].components()[0].as_atom().symbol != kSpacer)
            throw MalformedWitness("order-1 stack " + std::to_string(k + 1) + " is not a lone spacer");
    }
    std::vector<std::string> cells;
    cells.reserve(side * side);
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            const std::size_t at = 3 + r * side + c;
            const auto chars = comps[at].components();
            const std::string where = "cell stack " + std::to_string(at + 1);
            if (chars.size() != 2 * n + 2)
                throw MalformedWitness(where + " has " + std::to_string(chars.size()) + " characters, expected " +
                                       std::to_string(2 * n + 2));
            if (chars[0].as_atom().symbol != kSpacer)
                throw MalformedWitness(where + " does not start with a spacer");
            for (unsigned b = 0; b < n; ++b) {
                if (chars[1 + b].as_atom().symbol != bin(r, n, b) ||
                    chars[1 + n + b].as_atom().symbol != bin(c, n, b))
                    throw MalformedWitness(where + " does not hold row " + std::to_string(r) + " column " +
                                           std::to_string(c));
            }
            const std::string& tile = chars[2 * n + 1].as_atom().symbol;
            if (tile == kSpacer || tile == kBitZero || tile == kBitOne)
                throw MalformedWitness(where + " does not end with a tile");
            cells.push_back(tile);
        }
    }
    return TilingSolution(n, std::move(cells));
}

} // namespace colstack
