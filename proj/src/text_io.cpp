#include "colstack/text_io.hpp"
#include "colstack/errors.hpp"

#include <charconv>
#include <sstream>

namespace colstack {

namespace {

bool is_symbol_char(char c)
{
    switch (c) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case '[': case ']': case '(': case ')': case ',': case '{': case '}': case '#': case '/':
        return false;
    default:
        return true;
    }
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

class StackReader {
public:
    StackReader(std::string_view text, std::size_t line, std::size_t column)
        : text_(text), line_(line), column_(column)
    {
    }

    Stack read_all()
    {
        skip_space();
        Stack w = read_item();
        skip_space();
        if (pos_ != text_.size())
            fail("expected end of stack");
        if (w.is_atom())
            fail("expected '[' opening a stack");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column_, message); }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool at_end() const { return pos_ >= text_.size(); }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (!at_end() && is_space(peek()))
            advance();
    }

    void expect(char c)
    {
        if (peek() != c || at_end())
            fail(std::string("expected '") + c + "'");
        advance();
    }

    std::size_t read_number(const char* what)
    {
        const std::size_t start = pos_;
        while (!at_end() && peek() >= '0' && peek() <= '9')
            advance();
        if (start == pos_)
            fail(std::string("expected ") + what);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc())
            fail(std::string(what) + " out of range");
        return v;
    }

    Stack read_item()
    {
        if (at_end())
            fail("expected a stack or character");
        if (peek() == '[') {
            advance();
            std::vector<Stack> items;
            while (true) {
                skip_space();
                if (at_end())
                    fail("expected ']' closing a stack");
                if (peek() == ']')
                    break;
                items.push_back(read_item());
            }
            advance();
            const std::size_t line = line_, column = column_;
            const std::size_t k = read_number("stack order after ']'");
            if (k < 1 || k > 64)
                throw ParseError(line, column, "stack order must lie in 1..64");
            for (const auto& item : items) {
                if (item.order() != static_cast<int>(k) - 1)
                    throw ParseError(line, column,
                                     "order-" + std::to_string(k) + " stack holds an order-" +
                                         std::to_string(item.order()) + " item");
            }
            return Stack::of(static_cast<int>(k), std::move(items));
        }
        const std::size_t start = pos_;
        while (!at_end() && is_symbol_char(peek()))
            advance();
        if (start == pos_)
            fail("expected a stack or character");
        std::string symbol(text_.substr(start, pos_ - start));
        Link link;
        if (peek() == '(' && !at_end()) {
            advance();
            const std::size_t line = line_, column = column_;
            const std::size_t o = read_number("link order");
            if (o < 1 || o > 64)
                throw ParseError(line, column, "link order must lie in 1..64");
            expect(',');
            const std::size_t i = read_number("link index");
            expect(')');
            link = Link{static_cast<int>(o), i};
        }
        return Stack::atom(std::move(symbol), link);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t column_;
};

void print_stack_to(const Stack& w, std::string& out)
{
    if (w.is_atom()) {
        const Atom& a = w.as_atom();
        out += a.symbol;
        out += '(';
        out += std::to_string(a.link.order);
        out += ',';
        out += std::to_string(a.link.index);
        out += ')';
        return;
    }
    out += '[';
    bool first = true;
    for (const auto& c : w.components()) {
        if (!first)
            out += ' ';
        first = false;
        print_stack_to(c, out);
    }
    out += ']';
    out += std::to_string(w.order());
}

struct Token {
    std::string text;
    std::size_t column;
};

struct Line {
    std::size_t number;
    std::string_view raw;
    std::vector<Token> tokens;
};

/// Splits text into non-empty lines of tokens; `{` and `}` are tokens of
/// their own and `#` starts a comment.
std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++number;
        std::string_view raw = text.substr(start, end - start);
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        Line line{number, raw, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            if (is_space(raw[i])) {
                ++i;
                continue;
            }
            if (raw[i] == '{' || raw[i] == '}') {
                line.tokens.push_back({std::string(1, raw[i]), i + 1});
                ++i;
                continue;
            }
            const std::size_t b = i;
            while (i < raw.size() && !is_space(raw[i]) && raw[i] != '{' && raw[i] != '}')
                ++i;
            line.tokens.push_back({std::string(raw.substr(b, i - b)), b + 1});
        }
        if (!line.tokens.empty())
            lines.push_back(std::move(line));
        if (end == text.size())
            break;
        start = end + 1;
    }
    return lines;
}

std::size_t end_line(std::string_view text)
{
    std::size_t n = 1;
    for (char c : text)
        n += c == '\n';
    return n;
}

/// Sequential reader over the tokens of one line.
class LineReader {
public:
    explicit LineReader(const Line& line) : line_(line) {}

    [[noreturn]] void fail(const std::string& message) const
    {
        const std::size_t column =
            at_ < line_.tokens.size() ? line_.tokens[at_].column : line_.raw.size() + 1;
        throw ParseError(line_.number, column, message);
    }

    bool done() const { return at_ == line_.tokens.size(); }
    const Token& peek() const { return line_.tokens[at_]; }

    std::string word(const char* what)
    {
        if (done() || peek().text == "{" || peek().text == "}")
            fail(std::string("expected ") + what);
        return line_.tokens[at_++].text;
    }

    void keyword(const char* k)
    {
        if (done() || peek().text != k)
            fail(std::string("expected '") + k + "'");
        ++at_;
    }

    bool accept(const char* k)
    {
        if (!done() && peek().text == k) {
            ++at_;
            return true;
        }
        return false;
    }

    std::size_t number(const char* what)
    {
        if (done())
            fail(std::string("expected ") + what);
        const std::string& t = peek().text;
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size())
            fail(std::string("expected ") + what);
        ++at_;
        return v;
    }

    StateSet set(const char* what)
    {
        keyword("{");
        StateSet out;
        while (!done() && peek().text != "}")
            out.insert(word(what));
        keyword("}");
        return out;
    }

    std::vector<std::string> rest(const char* what)
    {
        std::vector<std::string> out;
        while (!done())
            out.push_back(word(what));
        return out;
    }

    void end()
    {
        if (!done())
            fail("unexpected '" + peek().text + "'");
    }

    /// Column where the remainder of the line starts.
    std::size_t column() const { return done() ? line_.raw.size() + 1 : peek().column; }
    std::string_view remainder() const { return line_.raw.substr(column() - 1); }
    std::size_t line_number() const { return line_.number; }

private:
    const Line& line_;
    std::size_t at_ = 0;
};

std::string print_set(const StateSet& s)
{
    std::string out = "{";
    for (const auto& q : s)
        out += " " + q;
    out += " }";
    return out;
}

std::string join(const std::vector<std::string>& v)
{
    std::string out;
    for (const auto& x : v)
        out += " " + x;
    return out;
}

/// k from "statesK" style keywords.
std::optional<int> suffix_order(const std::string& word, std::string_view prefix)
{
    if (word.size() <= prefix.size() || word.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    int k = 0;
    auto [ptr, ec] = std::from_chars(word.data() + prefix.size(), word.data() + word.size(), k);
    if (ec != std::errc() || ptr != word.data() + word.size())
        return std::nullopt;
    return k;
}

int read_order_header(const std::vector<Line>& lines, std::string_view text)
{
    if (lines.empty())
        throw ParseError(end_line(text), 1, "expected 'order N'");
    LineReader r(lines.front());
    r.keyword("order");
    const std::size_t n = r.number("order");
    if (n < 1 || n > 64)
        r.fail("order must lie in 1..64");
    r.end();
    return static_cast<int>(n);
}

} // namespace

std::string print_stack(const Stack& w)
{
    std::string out;
    print_stack_to(w, out);
    return out;
}

Stack parse_stack(std::string_view text) { return StackReader(text, 1, 1).read_all(); }

std::string print_operation(const StackOperation& op)
{
    using K = StackOperation::Kind;
    const std::string k = std::to_string(op.order);
    switch (op.kind) {
    case K::Pop:
        return "pop" + k;
    case K::Push:
        return "push" + k;
    case K::Collapse:
        return "collapse" + k;
    case K::CPush:
        return "cpush" + k + ":" + op.symbol;
    case K::Rew:
        return "rew:" + op.symbol;
    }
    return {};
}

namespace {

StackOperation read_operation(std::string_view text, std::size_t line, std::size_t column)
{
    auto fail = [&](const std::string& m) -> StackOperation { throw ParseError(line, column, m); };
    if (text.starts_with("rew:")) {
        std::string sym(text.substr(4));
        if (sym.empty())
            return fail("expected a character after 'rew:'");
        for (char c : sym) {
            if (!is_symbol_char(c))
                return fail("invalid character name '" + sym + "'");
        }
        return StackOperation::rew(sym);
    }
    std::size_t letters = 0;
    while (letters < text.size() && text[letters] >= 'a' && text[letters] <= 'z')
        ++letters;
    const std::string_view name = text.substr(0, letters);
    std::size_t digits = letters;
    while (digits < text.size() && text[digits] >= '0' && text[digits] <= '9')
        ++digits;
    int k = 0;
    auto [ptr, ec] = std::from_chars(text.data() + letters, text.data() + digits, k);
    if (ec != std::errc() || k < 1)
        return fail("expected an operation order in '" + std::string(text) + "'");
    const std::string_view tail = text.substr(digits);
    if (name == "cpush") {
        if (!tail.starts_with(":") || tail.size() == 1)
            return fail("expected cpushK:CHAR");
        std::string sym(tail.substr(1));
        for (char c : sym) {
            if (!is_symbol_char(c))
                return fail("invalid character name '" + sym + "'");
        }
        return StackOperation::cpush(sym, k);
    }
    if (!tail.empty())
        return fail("unexpected '" + std::string(tail) + "' after operation");
    if (name == "pop")
        return StackOperation::pop(k);
    if (name == "push")
        return StackOperation::push(k);
    if (name == "collapse")
        return StackOperation::collapse(k);
    return fail("unknown operation '" + std::string(text) + "'");
}

} // namespace

StackOperation parse_operation(std::string_view text) { return read_operation(text, 1, 1); }

std::string print_automaton(const StackAutomaton& a)
{
    std::ostringstream out;
    const int n = a.order();
    out << "order " << n << "\n";
    out << "alphabet" << join(a.alphabet()) << "\n";
    for (int k = n; k >= 1; --k) {
        out << "states" << k << join(a.states(k)) << "\n";
        std::vector<std::string> finals;
        for (const auto& q : a.states(k)) {
            if (a.finals(k).count(q))
                finals.push_back(q);
        }
        out << "final" << k << join(finals) << "\n";
    }
    for (int k = n; k >= 2; --k) {
        for (const auto& t : a.transitions(k))
            out << "t" << k << " " << t.from << " / " << t.top << " -> " << print_set(t.rest) << "\n";
    }
    for (const auto& t : a.letter_transitions()) {
        out << "t1 " << t.from << " " << t.symbol << " / ";
        if (!t.branch.empty())
            out << t.branch_order << " ";
        out << print_set(t.branch) << " -> " << print_set(t.rest) << "\n";
    }
    return out.str();
}

StackAutomaton parse_automaton(std::string_view text)
{
    const auto lines = tokenize(text);
    const int n = read_order_header(lines, text);
    StackAutomaton a(n);
    auto order_in_range = [&](LineReader& r, std::optional<int> k, int lowest) {
        if (!k || *k < lowest || *k > n)
            r.fail("order out of range 1.." + std::to_string(n));
        return *k;
    };
    for (std::size_t i = 1; i < lines.size(); ++i) {
        LineReader r(lines[i]);
        const std::string head = r.word("a declaration");
        if (head == "alphabet") {
            for (auto& s : r.rest("character"))
                a.add_symbol(std::move(s));
        } else if (head.starts_with("states")) {
            const int k = order_in_range(r, suffix_order(head, "states"), 1);
            for (auto& q : r.rest("state"))
                a.add_state(k, std::move(q));
        } else if (head.starts_with("final")) {
            const int k = order_in_range(r, suffix_order(head, "final"), 1);
            for (auto& q : r.rest("state"))
                a.finals(k).insert(std::move(q));
        } else if (head == "t1") {
            LetterTransition t;
            t.from = r.word("source state");
            t.symbol = r.word("character");
            if (r.accept("/")) {
                if (!r.done() && r.peek().text != "{") {
                    const std::size_t o = r.number("branch order");
                    if (o < 2 || o > static_cast<std::size_t>(n))
                        r.fail("branch order must lie in 2.." + std::to_string(n));
                    t.branch_order = static_cast<int>(o);
                }
                t.branch = r.set("branch state");
                if (t.branch.empty())
                    t.branch_order = 0;
                else if (t.branch_order == 0)
                    r.fail("non-empty branch set needs an order");
            }
            r.keyword("->");
            t.rest = r.set("state");
            r.end();
            a.add_transition(std::move(t));
        } else if (head.starts_with("t")) {
            const int k = order_in_range(r, suffix_order(head, "t"), 2);
            OrderTransition t;
            t.from = r.word("source state");
            r.keyword("/");
            t.top = r.word("top state");
            r.keyword("->");
            t.rest = r.set("state");
            r.end();
            a.add_transition(k, std::move(t));
        } else if (head == "order") {
            r.fail("duplicate order declaration");
        } else {
            throw ParseError(lines[i].number, lines[i].tokens.front().column, "unknown declaration '" + head + "'");
        }
    }
    if (auto v = find_violation(a))
        throw ParseError(end_line(text), 1, "invalid automaton: " + *v);
    return a;
}

std::string print_certificate(const RunCertificate& r)
{
    std::string out;
    for (const auto& [key, states] : r.entries)
        out += "pos " + std::to_string(key.first) + " order " + std::to_string(key.second) + " " +
               print_set(states) + "\n";
    return out;
}

RunCertificate parse_certificate(std::string_view text)
{
    RunCertificate out;
    for (const auto& line : tokenize(text)) {
        LineReader r(line);
        r.keyword("pos");
        const std::size_t p = r.number("position");
        r.keyword("order");
        const std::size_t k = r.number("order");
        if (k < 1 || k > 64)
            r.fail("order must lie in 1..64");
        StateSet states = r.set("state");
        r.end();
        if (out.find(p, static_cast<int>(k)))
            throw ParseError(line.number, 1, "second entry for this position and order");
        out.set(p, static_cast<int>(k), std::move(states));
    }
    return out;
}

std::string print_tiling(const TilingProblem& p)
{
    std::string out = "tiles" + join(p.tiles) + "\n";
    out += "init " + p.initial + "\n";
    out += "final " + p.final + "\n";
    for (const auto& [a, b] : p.horizontal)
        out += "h " + a + " " + b + "\n";
    for (const auto& [a, b] : p.vertical)
        out += "v " + a + " " + b + "\n";
    return out;
}

TilingProblem parse_tiling(std::string_view text)
{
    TilingProblem p;
    bool have_tiles = false, have_init = false, have_final = false;
    for (const auto& line : tokenize(text)) {
        LineReader r(line);
        const std::string head = r.word("a declaration");
        if (head == "tiles") {
            if (have_tiles)
                throw ParseError(line.number, 1, "duplicate tiles declaration");
            have_tiles = true;
            p.tiles = r.rest("tile");
        } else if (head == "init" || head == "final") {
            bool& seen = head == "init" ? have_init : have_final;
            if (seen)
                throw ParseError(line.number, 1, "duplicate " + head + " declaration");
            seen = true;
            (head == "init" ? p.initial : p.final) = r.word("tile");
            r.end();
        } else if (head == "h" || head == "v") {
            std::string a = r.word("tile");
            std::string b = r.word("tile");
            r.end();
            (head == "h" ? p.horizontal : p.vertical).insert({std::move(a), std::move(b)});
        } else {
            throw ParseError(line.number, 1, "unknown declaration '" + head + "'");
        }
    }
    const std::size_t last = end_line(text);
    if (!have_tiles)
        throw ParseError(last, 1, "missing tiles declaration");
    if (!have_init)
        throw ParseError(last, 1, "missing init declaration");
    if (!have_final)
        throw ParseError(last, 1, "missing final declaration");
    if (auto v = find_violation(p))
        throw ParseError(last, 1, "invalid tiling problem: " + *v);
    return p;
}

std::string print_solution(const TilingSolution& s)
{
    std::string out;
    for (std::size_t r = 0; r < s.side(); ++r) {
        for (std::size_t c = 0; c < s.side(); ++c) {
            if (c)
                out += ' ';
            out += s.at(r, c);
        }
        out += '\n';
    }
    return out;
}

TilingSolution parse_solution(std::string_view text)
{
    const auto lines = tokenize(text);
    std::vector<std::string> cells;
    for (const auto& line : lines) {
        if (line.tokens.size() != lines.size())
            throw ParseError(line.number, 1,
                             "row has " + std::to_string(line.tokens.size()) + " tiles, expected " +
                                 std::to_string(lines.size()));
        for (const auto& t : line.tokens)
            cells.push_back(t.text);
    }
    unsigned n = 0;
    while (n < 16 && (std::size_t{1} << n) < lines.size())
        ++n;
    if (lines.empty() || (std::size_t{1} << n) != lines.size())
        throw ParseError(end_line(text), 1, "grid side must be a power of two");
    return TilingSolution(n, std::move(cells));
}

std::string print_cpds(const Cpds& sys)
{
    std::string out = "order " + std::to_string(sys.order()) + "\n";
    out += "alphabet" + join(sys.alphabet()) + "\n";
    out += "controls" + join(sys.controls()) + "\n";
    for (const auto& rule : sys.rules()) {
        if (const auto* r = std::get_if<OrdinaryRule>(&rule)) {
            out += "rule " + r->source + " " + r->symbol + " " + print_operation(r->op) + " " + r->target + "\n";
        } else {
            const auto& a = std::get<AlternatingRule>(rule);
            out += "alt " + a.source + " " + print_set(a.targets) + "\n";
        }
    }
    return out;
}

Cpds parse_cpds(std::string_view text)
{
    const auto lines = tokenize(text);
    Cpds sys(read_order_header(lines, text));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        LineReader r(lines[i]);
        const std::string head = r.word("a declaration");
        if (head == "alphabet") {
            for (auto& s : r.rest("character"))
                sys.add_symbol(std::move(s));
        } else if (head == "controls") {
            for (auto& q : r.rest("control state"))
                sys.add_control(std::move(q));
        } else if (head == "rule") {
            OrdinaryRule rule;
            rule.source = r.word("control state");
            rule.symbol = r.word("character");
            const std::size_t column = r.column();
            rule.op = read_operation(r.word("operation"), lines[i].number, column);
            rule.target = r.word("control state");
            r.end();
            sys.add_rule(std::move(rule));
        } else if (head == "alt") {
            AlternatingRule rule;
            rule.source = r.word("control state");
            rule.targets = r.set("control state");
            r.end();
            sys.add_rule(std::move(rule));
        } else {
            throw ParseError(lines[i].number, 1, "unknown declaration '" + head + "'");
        }
    }
    if (auto v = find_violation(sys))
        throw ParseError(end_line(text), 1, "invalid system: " + *v);
    return sys;
}

std::string print_configuration(const Configuration& c) { return c.control + " " + print_stack(c.stack); }

Configuration parse_configuration(std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.empty())
        throw ParseError(end_line(text), 1, "expected a configuration");
    if (lines.size() > 1)
        throw ParseError(lines[1].number, 1, "expected a single configuration line");
    LineReader r(lines.front());
    Configuration c;
    c.control = r.word("control state");
    c.stack = StackReader(r.remainder(), r.line_number(), r.column()).read_all();
    return c;
}

std::string print_successor(const SuccessorItem& item)
{
    if (const auto* c = std::get_if<Configuration>(&item))
        return print_configuration(*c);
    std::string out = "{";
    bool first = true;
    for (const auto& c : std::get<std::vector<Configuration>>(item)) {
        out += first ? " " : " ; ";
        first = false;
        out += print_configuration(c);
    }
    out += " }";
    return out;
}

} // namespace colstack
