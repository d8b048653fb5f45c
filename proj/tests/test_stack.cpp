#include "colstack/stack.hpp"
#include "colstack/stack_index.hpp"
#include "colstack/text_io.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace colstack;

namespace {

const char* const kExample = "[[[a(3,1) b(1,0)]1]2 [[c(2,1)]1 [d(1,1) e(1,0)]1]2]3";

Stack S(const char* text) { return parse_stack(text); }

const std::vector<std::string> kAB{"a", "b"};

std::vector<std::string> printed_all(const std::vector<Stack>& v)
{
    std::vector<std::string> out;
    for (const auto& x : v)
        out.push_back(print_stack(x));
    return out;
}

} // namespace

TEST_CASE("worked example")
{
    const Stack w = S(kExample);
    CHECK(is_well_formed(w, 3));
    CHECK(w.atom_count() == 5);
    CHECK(print_stack(w) == kExample);

    auto c = apply(StackOperation::collapse(3), w);
    REQUIRE(c);
    CHECK(print_stack(*c) == "[[[c(2,1)]1 [d(1,1) e(1,0)]1]2]3");

    CHECK_FALSE(apply(StackOperation::collapse(2), w));
    CHECK(print_stack(*apply(StackOperation::pop(1), w)) == "[[[b(1,0)]1]2 [[c(2,1)]1 [d(1,1) e(1,0)]1]2]3");
    CHECK(print_stack(*apply(StackOperation::pop(3), w)) == "[[[c(2,1)]1 [d(1,1) e(1,0)]1]2]3");
    CHECK(print_stack(*apply(StackOperation::push(2), w)) ==
          "[[[a(3,1) b(1,0)]1 [a(3,1) b(1,0)]1]2 [[c(2,1)]1 [d(1,1) e(1,0)]1]2]3");
}

TEST_CASE("well-formedness")
{
    CHECK(is_well_formed(S("[]1"), 1));
    CHECK(is_well_formed(S("[]3"), 3));
    CHECK_FALSE(is_well_formed(S("[]2"), 3));
    // link reaches further than the components below it
    CHECK_FALSE(is_well_formed(S("[[[a(3,2) b(1,0)]1]2 [[c(2,1)]1]2]3"), 3));
    CHECK_FALSE(is_well_formed(S("[[c(2,1)]1]2"), 2));
    CHECK(is_well_formed(S("[[c(2,1)]1 []1]2"), 2));
    // link order above the stack order
    CHECK_FALSE(is_well_formed(S("[[[a(3,2)]1]2 [[c(1,0)]1]2]3"), 3));
    CHECK_FALSE(is_well_formed(S("[[a(3,0)]1]2"), 2));
    CHECK(is_well_formed(S("[[a(2,0)]1]2"), 2));
    // order-1 links are never followed; the index is still bounded
    CHECK(is_well_formed(S("[[a(1,1) b(1,0)]1]2"), 2));
    CHECK_FALSE(is_well_formed(S("[[a(1,2) b(1,0)]1]2"), 2));

    const std::vector<std::string> sigma{"a", "b", "c", "d", "e"};
    CHECK(is_well_formed(S(kExample), 3, sigma));
    CHECK_FALSE(is_well_formed(S(kExample), 3, std::vector<std::string>{"a", "b"}));
}

TEST_CASE("top, bottom, compose and decompose")
{
    const Stack w = S(kExample);
    CHECK(print_stack(*top(1, w)) == "a(3,1)");
    CHECK(print_stack(*top(2, w)) == "[a(3,1) b(1,0)]1");
    CHECK(print_stack(*top(3, w)) == "[[a(3,1) b(1,0)]1]2");
    CHECK(*top(4, w) == w);
    CHECK_FALSE(top(1, S("[[]1]2")));

    CHECK(print_stack(*bottom(3, 1, w)) == "[[[c(2,1)]1 [d(1,1) e(1,0)]1]2]3");
    CHECK(print_stack(*bottom(1, 1, w)) == "[[[b(1,0)]1]2 [[c(2,1)]1 [d(1,1) e(1,0)]1]2]3");
    CHECK_FALSE(bottom(3, 0, w));
    CHECK(print_stack(*bottom(2, 1, S("[[[c(2,1)]1 [d(1,1) e(1,0)]1]2]3"))) == "[[[d(1,1) e(1,0)]1]2]3");
    CHECK(*bottom(2, 2, S("[[a(1,0)]1 []1]2")) == S("[[a(1,0)]1 []1]2"));
    CHECK(print_stack(compose(Stack::atom("a"), 1, S("[[]1]2"))) == "[[a(1,0)]1]2");
    CHECK(print_stack(compose(S("[x(1,0)]1"), 2, S("[[[y(1,0)]1]2]3"))) == "[[[x(1,0)]1 [y(1,0)]1]2]3");
    CHECK_FALSE(bottom(3, 3, w));

    for (int k = 1; k <= 3; ++k) {
        auto parts = decompose(k, w);
        REQUIRE(parts);
        CHECK(compose(parts->first, k, parts->second) == w);
    }
    CHECK_FALSE(decompose(1, S("[[]1]2")));
    CHECK_THROWS_AS(compose(S("[]1"), 1, S("[]2")), std::invalid_argument);
}

TEST_CASE("operations")
{
    const Stack w = S("[[a(1,0) b(1,0)]1 [c(1,0)]1]2");
    CHECK(print_stack(*apply(StackOperation::cpush("x", 2), w)) == "[[x(2,1) a(1,0) b(1,0)]1 [c(1,0)]1]2");
    CHECK(print_stack(*apply(StackOperation::rew("z"), S("[[a(2,1)]1 [c(1,0)]1]2"))) == "[[z(2,1)]1 [c(1,0)]1]2");
    CHECK_FALSE(apply(StackOperation::rew("z"), S("[[]1]2")));
    const Stack f = *apply(StackOperation::cpush("f", 2), S("[[x(1,0)]1 [y(1,0)]1]2"));
    CHECK(print_stack(f) == "[[f(2,1) x(1,0)]1 [y(1,0)]1]2");
    CHECK(print_stack(*apply(StackOperation::collapse(2), f)) == "[[y(1,0)]1]2");
    CHECK_FALSE(apply(StackOperation::pop(1), S("[[]1]2")));
    CHECK_FALSE(apply(StackOperation::pop(2), S("[]2")));
    CHECK_FALSE(apply(StackOperation::cpush("x", 2), S("[]2")));
    CHECK_FALSE(apply(StackOperation::collapse(2), S("[[a(1,0)]1]2")));
    CHECK_FALSE(apply(StackOperation::collapse(2), S("[[a(2,0)]1]2")));
    CHECK_FALSE(apply(StackOperation::pop(3), w));
    CHECK_FALSE(is_valid_operation(StackOperation::push(1), 2));
    CHECK_FALSE(is_valid_operation(StackOperation::collapse(3), 2));
    CHECK(is_valid_operation(StackOperation::cpush("a", 2), 2));
}

TEST_CASE("operation laws on random stacks")
{
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        const int n = 2 + i % 2;
        const Stack w = oracle::random_stack(rng, n, 3, kAB, 10);
        REQUIRE(is_well_formed(w, n));
        for (int k = 1; k <= n; ++k) {
            if (k >= 2) {
                if (auto pushed = apply(StackOperation::push(k), w)) {
                    CHECK(is_well_formed(*pushed, n));
                    CHECK(apply(StackOperation::pop(k), *pushed) == w);
                }
                auto cp = apply(StackOperation::cpush("a", k), w);
                auto popped = apply(StackOperation::pop(k), w);
                if (cp) {
                    CHECK(is_well_formed(*cp, n));
                    CHECK(top(1, *cp)->as_atom().symbol == "a");
                    auto back = apply(StackOperation::collapse(k), *cp);
                    if (top(k + 1, w)->size() >= 2)
                        CHECK(back == popped);
                    else
                        CHECK_FALSE(back);
                }
            }
            if (auto r = apply(StackOperation::pop(k), w))
                CHECK(is_well_formed(*r, n));
            if (auto r = apply(StackOperation::collapse(k), w))
                CHECK(is_well_formed(*r, n));
        }
        if (auto r = apply(StackOperation::rew("b"), w)) {
            CHECK(top(1, *r)->as_atom().link == top(1, w)->as_atom().link);
            CHECK(is_well_formed(*r, n));
        }
    }
}

TEST_CASE("substacks")
{
    const Stack w = S(kExample);
    const auto subs = substacks(w);
    CHECK(subs.size() == 11);
    CHECK(subs.front() == w);
    CHECK(print_stack(subs.back()) == "[]3");
    auto closure = oracle::substack_closure(w);
    CHECK(closure.size() == subs.size());
    for (const auto& s : subs)
        CHECK(std::find(closure.begin(), closure.end(), s) != closure.end());

    CHECK(printed_all(substacks(S("[[a(1,0)]1]2"))) == std::vector<std::string>{"[[a(1,0)]1]2", "[[]1]2", "[]2"});
    CHECK(substacks(S("[]2")).size() == 1);
    CHECK(substacks(S("[[]1]2")).size() == 2);

    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + i % 3;
        const Stack x = oracle::random_stack(rng, n, 3, kAB, 8);
        auto a = substacks(x);
        auto b = oracle::substack_closure(x);
        std::sort(a.begin(), a.end());
        CHECK(a == b);
    }
}

TEST_CASE("link destinations")
{
    const Stack w = S(kExample);
    const auto subs = substacks(w);
    auto d = link_destination(0, w);
    REQUIRE(d);
    CHECK(subs[*d] == *bottom(3, 1, w));
    CHECK_FALSE(link_destination(1, w)); // b(1,0)
    // c(2,1) sits at position 4, after a, b and two closing brackets
    auto dc = link_destination(4, w);
    REQUIRE(dc);
    CHECK(print_stack(subs[*dc]) == "[[[d(1,1) e(1,0)]1]2]3");
    CHECK_FALSE(link_destination(6, w)); // d(1,1): order-1 links are null

    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 2;
        const Stack x = oracle::random_stack(rng, n, 3, kAB, 10);
        const auto xs = substacks(x);
        const StackIndex index(x);
        REQUIRE(index.size() == xs.size());
        for (std::size_t p = 0; p < xs.size(); ++p) {
            auto t = top(1, xs[p]);
            auto dest = link_destination(p, x);
            if (!t || t->as_atom().link.is_null()) {
                CHECK_FALSE(dest);
                continue;
            }
            REQUIRE(dest);
            CHECK(*dest > p);
            CHECK(xs[*dest] == *bottom(t->as_atom().link.order, t->as_atom().link.index, xs[p]));
            CHECK(index.link_destination(p) == dest);
        }
    }
}

TEST_CASE("stack index pops agree with tree pops")
{
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + i % 3;
        const Stack x = oracle::random_stack(rng, n, 3, kAB, 10);
        const auto xs = substacks(x);
        const StackIndex index(x);
        for (std::size_t p = 0; p < xs.size(); ++p) {
            for (int k = 1; k <= n; ++k) {
                CHECK(index.has_order(p, k) == top(k + 1, xs[p]).has_value());
                if (!index.has_order(p, k))
                    continue;
                auto parts = decompose(k, xs[p]);
                auto q = index.pop(p, k);
                CHECK(parts.has_value() == q.has_value());
                if (parts && q)
                    CHECK(xs[*q] == parts->second);
            }
        }
    }
}

TEST_CASE("push copies keep link destinations")
{
    std::mt19937 rng(13);
    for (int i = 0; i < 300; ++i) {
        const int n = 2 + i % 2;
        const Stack w = oracle::random_stack(rng, n, 3, kAB, 10);
        auto t = top(1, w);
        if (!t || t->as_atom().link.is_null())
            continue;
        const int o = t->as_atom().link.order;
        for (int k = 2; k <= o; ++k) {
            auto pushed = apply(StackOperation::push(k), w);
            if (!pushed)
                continue;
            // collapsing from the new copy equals collapsing from the original
            CHECK(apply(StackOperation::collapse(o), *pushed) == apply(StackOperation::collapse(o), w));
        }
    }
}
