#include "colstack/cpds.hpp"
#include "colstack/errors.hpp"
#include "colstack/text_io.hpp"

#include <doctest.h>

using namespace colstack;

namespace {

Stack S(const char* text) { return parse_stack(text); }

Cpds load_system(const char* text) { return parse_cpds(text); }

} // namespace

TEST_CASE("successors of ordinary rules")
{
    const Cpds sys = load_system(R"(order 2
alphabet a b
controls q q1 q2
rule q a pop1 q1
rule q b pop1 q2
rule q a collapse2 q2
)");
    auto next = successors(Configuration{"q", S("[[a(1,0) b(1,0)]1]2")}, sys);
    REQUIRE(next.size() == 1);
    const auto& c = std::get<Configuration>(next[0]);
    CHECK(c.control == "q1");
    CHECK(print_stack(c.stack) == "[[b(1,0)]1]2");

    // collapse needs an order-2 link
    CHECK(successors(Configuration{"q1", S("[[a(1,0)]1]2")}, sys).empty());
    CHECK(successors(Configuration{"q", S("[[]1]2")}, sys).empty());
    CHECK_THROWS_AS(successors(Configuration{"q", S("[[c(2,1)]1]2")}, sys), std::invalid_argument);
}

TEST_CASE("collapse with a link of another order is inapplicable")
{
    const Cpds sys = load_system(R"(order 3
alphabet a
controls q r
rule q a collapse2 r
)");
    CHECK(successors(Configuration{"q", S("[[[a(3,1)]1]2 [[a(1,0)]1]2]3")}, sys).empty());
}

TEST_CASE("alternating rules")
{
    const Cpds sys = load_system(R"(order 2
alphabet a
controls q q1 q2
alt q { q1 q2 }
alt q { q2 q1 }
)");
    CHECK(sys.rules().size() == 1); // duplicate dropped
    const Stack w = S("[[a(1,0)]1]2");
    auto next = successors(Configuration{"q", w}, sys);
    REQUIRE(next.size() == 1);
    const auto& set = std::get<std::vector<Configuration>>(next[0]);
    REQUIRE(set.size() == 2);
    CHECK(set[0] == Configuration{"q1", w});
    CHECK(set[1] == Configuration{"q2", w});
}

TEST_CASE("bounded reachability")
{
    const Cpds chain = load_system(R"(order 1
alphabet a
controls q
rule q a pop1 q
)");
    const Configuration start{"q", S("[a(1,0) a(1,0) a(1,0)]1")};
    CHECK(bounded_reach(start, chain, 0) == std::set<Configuration>{start});
    CHECK(bounded_reach(start, chain, 2).size() == 3);
    CHECK(bounded_reach(start, chain, 10).size() == 4);

    const Cpds loop = load_system(R"(order 2
alphabet a b
controls p q r
rule p a push2 q
rule q a cpush2:b r
rule r b collapse2 p
)");
    const Configuration c0{"p", S("[[a(1,0)]1]2")};
    auto reach = bounded_reach(c0, loop, 3);
    CHECK(reach.count(Configuration{"q", S("[[a(1,0)]1 [a(1,0)]1]2")}));
    CHECK(reach.count(Configuration{"r", S("[[b(2,1) a(1,0)]1 [a(1,0)]1]2")}));
    // collapse undoes cpush and the push before it
    CHECK(reach.count(Configuration{"p", S("[[a(1,0)]1]2")}));
    for (const auto& c : reach)
        CHECK(is_well_formed(c.stack, 2));

    std::size_t last = 0;
    for (std::size_t d = 0; d < 6; ++d) {
        auto r = bounded_reach(c0, loop, d);
        CHECK(r.size() >= last);
        last = r.size();
    }

    const Cpds grow = load_system(R"(order 2
alphabet a
controls q
rule q a push2 q
)");
    CHECK_THROWS_AS(bounded_reach(Configuration{"q", S("[[a(1,0)]1]2")}, grow, 100, 10), ResourceBoundExceeded);
}

TEST_CASE("system validation")
{
    CHECK_THROWS_AS(load_system("order 2\nalphabet a\ncontrols q\nrule q a pop1 r\n"), ParseError);
    CHECK_THROWS_AS(load_system("order 2\nalphabet a\ncontrols q\nrule q a pop3 q\n"), ParseError);
    CHECK_THROWS_AS(load_system("order 2\nalphabet a\ncontrols q\nrule q c pop1 q\n"), ParseError);
    CHECK_THROWS_AS(load_system("order 2\nalphabet a\ncontrols q\nalt q { z }\n"), ParseError);
}
