#include "colstack/cpds.hpp"
#include "colstack/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace colstack {

namespace {

template <typename T>
void add_unique(std::vector<T>& v, T x)
{
    if (std::find(v.begin(), v.end(), x) == v.end())
        v.push_back(std::move(x));
}

std::optional<std::string> top_symbol(const Stack& w)
{
    auto t = top(1, w);
    if (!t)
        return std::nullopt;
    return t->as_atom().symbol;
}

} // namespace

void Cpds::add_control(std::string q) { add_unique(controls_, std::move(q)); }

void Cpds::add_symbol(std::string a) { add_unique(alphabet_, std::move(a)); }

void Cpds::add_rule(CpdsRule r) { add_unique(rules_, std::move(r)); }

std::optional<std::string> find_violation(const Cpds& sys)
{
    if (sys.order() < 1)
        return std::string("order must be at least 1");
    auto control = [&](const std::string& q) {
        return std::find(sys.controls().begin(), sys.controls().end(), q) != sys.controls().end();
    };
    auto symbol = [&](const std::string& a) {
        return std::find(sys.alphabet().begin(), sys.alphabet().end(), a) != sys.alphabet().end();
    };
    for (const auto& rule : sys.rules()) {
        if (const auto* r = std::get_if<OrdinaryRule>(&rule)) {
            if (!control(r->source) || !control(r->target))
                return "rule " + r->source + " -> " + r->target + " uses an unknown control state";
            if (!symbol(r->symbol))
                return "rule from " + r->source + " reads unknown character " + r->symbol;
            if (!is_valid_operation(r->op, sys.order()))
                return "rule from " + r->source + " has an operation outside orders 1.." +
                       std::to_string(sys.order());
            if ((r->op.kind == StackOperation::Kind::CPush || r->op.kind == StackOperation::Kind::Rew) &&
                !symbol(r->op.symbol))
                return "rule from " + r->source + " writes unknown character " + r->op.symbol;
        } else {
            const auto& a = std::get<AlternatingRule>(rule);
            if (!control(a.source))
                return "alternating rule from unknown control state " + a.source;
            for (const auto& q : a.targets) {
                if (!control(q))
                    return "alternating rule from " + a.source + " targets unknown control state " + q;
            }
        }
    }
    return std::nullopt;
}

std::vector<SuccessorItem> successors(const Configuration& c, const Cpds& sys)
{
    if (!is_well_formed(c.stack, sys.order()))
        throw std::invalid_argument("configuration stack is not a well-formed order-" +
                                    std::to_string(sys.order()) + " stack");
    std::vector<SuccessorItem> out;
    const auto sym = top_symbol(c.stack);
    for (const auto& rule : sys.rules()) {
        if (const auto* r = std::get_if<OrdinaryRule>(&rule)) {
            if (r->source != c.control || !sym || *sym != r->symbol)
                continue;
            if (auto next = apply(r->op, c.stack))
                out.emplace_back(Configuration{r->target, std::move(*next)});
        } else {
            const auto& a = std::get<AlternatingRule>(rule);
            if (a.source != c.control)
                continue;
            std::vector<Configuration> set;
            for (const auto& q : a.targets)
                set.push_back(Configuration{q, c.stack});
            out.emplace_back(std::move(set));
        }
    }
    return out;
}

std::set<Configuration> bounded_reach(const Configuration& start, const Cpds& sys, std::size_t depth,
                                      std::size_t max_visited)
{
    std::set<Configuration> seen{start};
    std::vector<Configuration> frontier{start};
    auto visit = [&](Configuration c, std::vector<Configuration>& next) {
        if (seen.count(c))
            return;
        if (seen.size() >= max_visited)
            throw ResourceBoundExceeded("bounded reachability visited more than " +
                                        std::to_string(max_visited) + " configurations");
        seen.insert(c);
        next.push_back(std::move(c));
    };
    for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<Configuration> next;
        for (const auto& c : frontier) {
            for (auto& item : successors(c, sys)) {
                if (auto* single = std::get_if<Configuration>(&item)) {
                    visit(std::move(*single), next);
                } else {
                    for (auto& member : std::get<std::vector<Configuration>>(item))
                        visit(std::move(member), next);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

} // namespace colstack
