#include "colstack/cli.hpp"
#include "colstack/emptiness.hpp"
#include "colstack/errors.hpp"
#include "colstack/membership.hpp"
#include "colstack/reduction.hpp"
#include "colstack/text_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace colstack {

namespace {

/// An input file could not be read.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Io {
public:
    Io(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

    std::string read(const std::string& path)
    {
        std::ostringstream buf;
        if (path == "-") {
            if (stdin_used_)
                throw InputError("standard input can back only one argument");
            stdin_used_ = true;
            buf << in_.rdbuf();
            return buf.str();
        }
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw InputError("cannot open " + path);
        buf << f.rdbuf();
        return buf.str();
    }

    void write(const std::string& path, const std::string& text)
    {
        if (path.empty() || path == "-") {
            out_ << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f || !(f << text))
            throw InputError("cannot write " + path);
    }

private:
    std::istream& in_;
    std::ostream& out_;
    bool stdin_used_ = false;
};


template <typename F>
auto parse_file(Io& io, const std::string& path, F parse)
{
    const std::string text = io.read(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw std::runtime_error((path == "-" ? "<stdin>" : path) + ":" + e.what());
    }
}

Stack load_stack(Io& io, const std::string& path, int order = 0)
{
    Stack w = parse_file(io, path, parse_stack);
    const int n = order ? order : w.order();
    if (!is_well_formed(w, n))
        throw std::invalid_argument(path + ": stack is not a well-formed order-" + std::to_string(n) + " stack");
    return w;
}

/// Budget for `empty`: flag, then COLSTACK_BUDGET, then unlimited.
std::optional<std::uint64_t> empty_budget(const std::optional<std::uint64_t>& flag)
{
    if (flag)
        return flag;
    if (const char* env = std::getenv("COLSTACK_BUDGET"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0')
            throw std::invalid_argument("COLSTACK_BUDGET must be a number of stacks");
        return v;
    }
    return std::nullopt;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Collapsible pushdown stacks, stack automata and the tiling reduction", "colstack"};
    app.require_subcommand(1);

    std::string file, op_text, automaton_path, stack_path, run_path, instance_path, solution_path, output_path,
        system_path, config_path;
    std::vector<std::string> states;
    std::size_t max_atoms = 0, max_width = 1;
    std::optional<std::uint64_t> budget;
    unsigned threads = 1;
    unsigned n = 1;
    std::optional<std::size_t> depth;

    auto* validate = app.add_subcommand("validate-stack", "Check that a stack is well formed");
    validate->add_option("FILE", file, "Stack file")->required();

    auto* apply_cmd = app.add_subcommand("apply", "Apply a stack operation");
    apply_cmd->add_option("--op", op_text, "pop1, push2, collapse3, cpush2:a, rew:a")->required();
    apply_cmd->add_option("FILE", file, "Stack file")->required();

    auto add_member_options = [&](CLI::App* c) {
        c->add_option("--automaton", automaton_path, "Automaton file")->required();
        c->add_option("--stack", stack_path, "Stack file")->required();
        c->add_option("--state", states, "Initial state (repeatable; none means the empty set)");
    };
    auto* member_cmd = app.add_subcommand("member", "Decide membership of a stack");
    add_member_options(member_cmd);

    auto* check_cmd = app.add_subcommand("check-run", "Check a run certificate");
    add_member_options(check_cmd);
    check_cmd->add_option("--run", run_path, "Run certificate file")->required();

    auto* extract_cmd = app.add_subcommand("extract-run", "Print an accepting run certificate");
    add_member_options(extract_cmd);
    extract_cmd->add_option("-o,--output", output_path, "Output file");

    auto* empty_cmd = app.add_subcommand("empty", "Bounded search for an accepted stack");
    empty_cmd->add_option("--automaton", automaton_path, "Automaton file")->required();
    empty_cmd->add_option("--state", states, "Initial state (repeatable)");
    empty_cmd->add_option("--max-atoms", max_atoms, "Largest atom count searched")->required();
    empty_cmd->add_option("--max-width", max_width, "Largest component count at every order")
        ->required()
        ->check(CLI::PositiveNumber);
    empty_cmd->add_option("--budget", budget, "Stacks examined before giving up (default: $COLSTACK_BUDGET)");
    empty_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* tiling_cmd = app.add_subcommand("tiling", "Solve or check tiling problems");
    tiling_cmd->require_subcommand(1);
    auto* solve_cmd = tiling_cmd->add_subcommand("solve", "Brute-force solver (n <= 3)");
    solve_cmd->add_option("--instance", instance_path, "Tiling problem file")->required();
    solve_cmd->add_option("--n", n, "Grid is 2^n x 2^n")->required();
    auto* tcheck_cmd = tiling_cmd->add_subcommand("check", "Check a solution");
    tcheck_cmd->add_option("--instance", instance_path, "Tiling problem file")->required();
    tcheck_cmd->add_option("--n", n, "Grid is 2^n x 2^n")->required();
    tcheck_cmd->add_option("--solution", solution_path, "Solution file")->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "Build the order-2 automaton for a tiling problem");
    reduce_cmd->add_option("--instance", instance_path, "Tiling problem file")->required();
    reduce_cmd->add_option("--n", n, "Grid is 2^n x 2^n")->required()->check(CLI::PositiveNumber);
    reduce_cmd->add_option("-o,--output", output_path, "Output file");

    auto* encode_cmd = app.add_subcommand("encode-witness", "Encode a tiling solution as a stack");
    encode_cmd->add_option("--instance", instance_path, "Tiling problem file")->required();
    encode_cmd->add_option("--n", n, "Grid is 2^n x 2^n")->required()->check(CLI::PositiveNumber);
    encode_cmd->add_option("--solution", solution_path, "Solution file")->required();
    encode_cmd->add_option("-o,--output", output_path, "Output file");

    auto* cpds_cmd = app.add_subcommand("cpds", "Collapsible pushdown systems");
    cpds_cmd->require_subcommand(1);
    auto* step_cmd = cpds_cmd->add_subcommand("step", "Successors, or configurations reachable within --depth");
    step_cmd->add_option("--system", system_path, "System file")->required();
    step_cmd->add_option("--config", config_path, "Configuration file")->required();
    step_cmd->add_option("--depth", depth, "Reachability depth");

    std::vector<std::string> argv_store{"colstack"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store)
        argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitYes : kExitBadInput;
    }

    Io io(in, out);
    const StateSet initial(states.begin(), states.end());
    try {
        if (validate->parsed()) {
            const Stack w = parse_file(io, file, parse_stack);
            if (is_well_formed(w, w.order())) {
                out << "valid\n";
                return kExitYes;
            }
            out << "invalid\n";
            return kExitNo;
        }
        if (apply_cmd->parsed()) {
            const StackOperation op = parse_operation(op_text);
            const Stack w = load_stack(io, file);
            if (!is_valid_operation(op, w.order()))
                throw std::invalid_argument(op_text + " is not an operation on order-" + std::to_string(w.order()) +
                                            " stacks");
            if (auto r = apply(op, w)) {
                out << print_stack(*r) << "\n";
                return kExitYes;
            }
            out << "undefined\n";
            return kExitNo;
        }
        if (member_cmd->parsed() || check_cmd->parsed() || extract_cmd->parsed()) {
            const StackAutomaton a = parse_file(io, automaton_path, parse_automaton);
            const Stack w = load_stack(io, stack_path);
            if (w.order() != a.order())
                throw OrderMismatch("stack has order " + std::to_string(w.order()) + ", automaton has order " +
                                    std::to_string(a.order()));
            if (member_cmd->parsed()) {
                const bool yes = member(w, a, initial);
                out << (yes ? "accept\n" : "reject\n");
                return yes ? kExitYes : kExitNo;
            }
            if (check_cmd->parsed()) {
                const RunCertificate r = parse_file(io, run_path, parse_certificate);
                try {
                    if (check_run(w, a, r, initial)) {
                        out << "valid\n";
                        return kExitYes;
                    }
                    out << "invalid\n";
                } catch (const MalformedCertificate& e) {
                    out << "invalid\n";
                    err << "colstack: " << e.what() << "\n";
                }
                return kExitNo;
            }
            try {
                io.write(output_path, print_certificate(extract_run(w, a, initial)));
            } catch (const NotAccepted& e) {
                out << "reject\n";
                return kExitNo;
            }
            return kExitYes;
        }
        if (empty_cmd->parsed()) {
            const StackAutomaton a = parse_file(io, automaton_path, parse_automaton);
            EnumerationBounds b{max_atoms, max_width, a.alphabet()};
            SearchBudget sb;
            sb.max_stacks = empty_budget(budget);
            sb.threads = threads;
            const EmptinessVerdict v = is_empty_bounded(a, initial, b, sb);
            if (v.found()) {
                out << print_stack(*v.witness) << "\n";
                return kExitYes;
            }
            out << "no-witness-within-bounds\n";
            out << "# searched " << v.examined << " stacks; bounded search does not prove the language empty\n";
            return kExitNo;
        }
        if (solve_cmd->parsed()) {
            const TilingProblem p = parse_file(io, instance_path, parse_tiling);
            if (auto s = solve_bruteforce(p, n)) {
                out << print_solution(*s);
                return kExitYes;
            }
            out << "no-solution\n";
            return kExitNo;
        }
        if (tcheck_cmd->parsed()) {
            const TilingProblem p = parse_file(io, instance_path, parse_tiling);
            const TilingSolution s = parse_file(io, solution_path, parse_solution);
            const bool ok = check_solution(p, n, s);
            out << (ok ? "valid\n" : "invalid\n");
            return ok ? kExitYes : kExitNo;
        }
        if (reduce_cmd->parsed()) {
            const TilingProblem p = parse_file(io, instance_path, parse_tiling);
            const ReductionOutput r = build_automaton(p, n);
            io.write(output_path, "# initial " + r.initial + "\n" + print_automaton(r.automaton));
            return kExitYes;
        }
        if (encode_cmd->parsed()) {
            const TilingProblem p = parse_file(io, instance_path, parse_tiling);
            const TilingSolution s = parse_file(io, solution_path, parse_solution);
            io.write(output_path, print_stack(encode_witness(p, n, s)) + "\n");
            return kExitYes;
        }
        if (step_cmd->parsed()) {
            const Cpds sys = parse_file(io, system_path, parse_cpds);
            const Configuration c = parse_file(io, config_path, parse_configuration);
            if (!is_well_formed(c.stack, sys.order()))
                throw std::invalid_argument("configuration stack is not a well-formed order-" +
                                            std::to_string(sys.order()) + " stack");
            if (depth) {
                for (const auto& r : bounded_reach(c, sys, *depth))
                    out << print_configuration(r) << "\n";
            } else {
                for (const auto& item : successors(c, sys))
                    out << print_successor(item) << "\n";
            }
            return kExitYes;
        }
    } catch (const ResourceBoundExceeded& e) {
        err << "colstack: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        err << "colstack: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}

} // namespace colstack
