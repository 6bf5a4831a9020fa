#include "prodcheck/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

#include "prodcheck/parser.hpp"
#include "prodcheck/trs.hpp"

namespace prodcheck {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::guarded: return "guarded";
    case Verdict::unguarded: return "unguarded";
    case Verdict::fuse_exceeded: return "fuse_exceeded";
    }
    return "";
}

const char* outcome_name(DeriveOutcome o) {
    switch (o) {
    case DeriveOutcome::step_limit: return "step_limit";
    case DeriveOutcome::no_transition: return "no_transition";
    case DeriveOutcome::unguarded: return "unguarded";
    case DeriveOutcome::fuse_exceeded: return "fuse_exceeded";
    }
    return "";
}

std::string format_triple(const InvariantTriple& t, const Program& program) {
    return "{" + std::to_string(program.ordinal(t.clause)) + " | " + to_string(t.head_subterm) + " | " +
           to_string(t.position) + "}";
}

ordered_json triple_json(const InvariantTriple& t, const Program& program) {
    return ordered_json{{"clause", t.clause},
                        {"predicate", program.clause(t.clause).head.predicate},
                        {"ordinal", program.ordinal(t.clause)},
                        {"term", to_string(t.head_subterm)},
                        {"position", t.position}};
}

ordered_json witness_json(const UnguardedLoop& w, const Program& program) {
    ordered_json path = ordered_json::array();
    for (std::size_t c : w.path) path.push_back(program.label(c));
    return ordered_json{{"goal", to_string(w.goal)}, {"clause", w.loop.clause}, {"path", path}};
}

ordered_json invariants_json(const InvariantSet& set, const Program& program) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : set) arr.push_back(triple_json(t, program));
    return arr;
}

std::string witness_line(const UnguardedLoop& w, const Program& program) {
    return "Goal " + to_string(w.goal) + " results in unguarded loop in path " + path_labels(program, w.path) + ".";
}

std::vector<std::string> head_tree_dots(const Program& program, std::size_t fuse) {
    std::vector<std::string> dots;
    for (const auto& c : program.clauses()) {
        FreshNames fresh;
        Atom goal = rename_apart(c, fresh).head;
        Gc2Result r = build_and_check(program, goal, fuse, fresh);
        std::string name = "clause_" + std::to_string(c.index);
        if (auto* g = std::get_if<Guarded>(&r)) dots.push_back(g->tree->to_dot(name));
        else if (auto* u = std::get_if<Unguarded>(&r)) dots.push_back(u->partial->to_dot(name));
    }
    return dots;
}

} // namespace

int report_exit_code(const ProductivityReport& report) {
    if (report.first_unguarded()) return exit_code::not_guarded;
    if (report.fuse_exceeded) return exit_code::fuse_exceeded;
    return report.program_live ? exit_code::guarded_live : exit_code::guarded_finite;
}

std::string format_text(const ProductivityReport& report, const Program& program) {
    std::ostringstream os;
    if (const auto* bad = report.first_unguarded()) {
        os << "Program is not guarded.\n" << witness_line(*bad->witness, program) << "\n";
        return os.str();
    }
    if (report.fuse_exceeded) {
        for (const auto& r : report.per_clause)
            if (r.verdict == Verdict::fuse_exceeded) {
                os << "Check did not complete: fuse exceeded in clause " << program.ordinal(r.clause_checked)
                   << " of \"" << program.clause(r.clause_checked).head.predicate << "\".\n";
                break;
            }
        return os.str();
    }
    os << "Program is guarded.\n";
    if (!report.program_live) {
        os << "Program has finite derivations only.\n";
        return os.str();
    }
    os << "Program is existentially live with coinductive invariants:\n";
    auto it = report.invariant_list.begin();
    while (it != report.invariant_list.end()) {
        const std::size_t clause = it->clause;
        os << "in clause " << program.ordinal(clause) << " of \"" << program.clause(clause).head.predicate << "\": [";
        bool first = true;
        for (; it != report.invariant_list.end() && it->clause == clause; ++it) {
            if (!first) os << ' ';
            first = false;
            os << format_triple(*it, program);
        }
        os << "]\n";
    }
    return os.str();
}

std::string format_json(const ProductivityReport& report, const Program& program) {
    ordered_json j;
    j["guarded"] = report.program_guarded;
    j["live"] = report.program_live;
    j["fuse_exceeded"] = report.fuse_exceeded;
    j["invariants"] = invariants_json(report.invariant_list, program);
    const auto* bad = report.first_unguarded();
    j["witness"] = bad ? witness_json(*bad->witness, program) : ordered_json(nullptr);
    ordered_json clauses = ordered_json::array();
    for (const auto& r : report.per_clause) {
        ordered_json c;
        c["clause"] = r.clause_checked;
        c["predicate"] = program.clause(r.clause_checked).head.predicate;
        c["ordinal"] = program.ordinal(r.clause_checked);
        c["verdict"] = verdict_name(r.verdict);
        c["trees_explored"] = r.trees_explored;
        c["invariants"] = invariants_json(r.live_invariants, program);
        c["witness"] = r.witness ? witness_json(*r.witness, program) : ordered_json(nullptr);
        clauses.push_back(std::move(c));
    }
    j["clauses"] = std::move(clauses);
    return j.dump(2) + "\n";
}

std::string format_trace_text(const DerivationTrace& trace, const Program& program) {
    std::ostringstream os;
    os << "Goal " << to_string(trace.goal) << "\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        os << "step " << i + 1 << ": " << to_string(s.leaf_atom) << " with clause " << s.clause << " ("
           << program.label(s.clause) << ") " << to_string(s.unifier) << "\n";
    }
    os << "answer prefix " << to_string(trace.answer_prefix) << "\n";
    switch (trace.outcome) {
    case DeriveOutcome::step_limit: os << "Stopped after " << trace.steps.size() << " steps.\n"; break;
    case DeriveOutcome::no_transition: os << "No further transitions.\n"; break;
    case DeriveOutcome::unguarded: os << witness_line(*trace.witness, program) << "\n"; break;
    case DeriveOutcome::fuse_exceeded: os << "Fuse exceeded.\n"; break;
    }
    return os.str();
}

std::string format_trace_json(const DerivationTrace& trace, const Program& program) {
    ordered_json j;
    j["goal"] = to_string(trace.goal);
    ordered_json steps = ordered_json::array();
    for (const auto& s : trace.steps) {
        ordered_json st;
        st["leaf"] = to_string(s.leaf_atom);
        st["clause"] = s.clause;
        st["label"] = program.label(s.clause);
        ordered_json u = ordered_json::object();
        for (const auto& [v, t] : s.unifier.bindings()) u[v] = to_string(t);
        st["unifier"] = std::move(u);
        steps.push_back(std::move(st));
    }
    j["steps"] = std::move(steps);
    ordered_json answer = ordered_json::object();
    for (const auto& [v, t] : trace.answer_prefix.bindings()) answer[v] = to_string(t);
    j["answer"] = std::move(answer);
    j["outcome"] = outcome_name(trace.outcome);
    j["witness"] = trace.witness ? witness_json(*trace.witness, program) : ordered_json(nullptr);
    return j.dump(2) + "\n";
}

int parse_command_line(int argc, const char* const* argv, CliConfig& config, std::ostream& out, std::ostream& err) {
    CLI::App app{"Observational productivity checker for logic programs"};
    app.add_option("file", config.input, "program file")->required();
    bool json = false;
    bool trs = false;
    std::string goal;
    app.add_flag("--json", json, "print the report as JSON");
    app.add_option("--fuse", config.fuse, "bound on and-nodes per rewriting tree and on derivation-tree nodes")
        ->check(CLI::PositiveNumber);
    app.add_flag("--dot", config.dot, "also print rewriting trees in Graphviz format");
    auto* derive = app.add_option("--derive", goal, "run an S-resolution derivation for GOAL");
    app.add_option("--steps", config.steps, "derivation step bound")->needs(derive);
    auto* trs_flag = app.add_flag("--trs", trs, "print rewrite rules and dependency pairs");
    bool sequential = false;
    app.add_flag("--sequential", sequential, "check clauses one after another");
    derive->excludes(trs_flag);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_code::input_error;
    }
    config.parallel = !sequential;
    config.output = json ? CliConfig::Output::json : CliConfig::Output::text;
    if (!goal.empty() || derive->count() > 0) {
        config.mode = CliConfig::Mode::derive;
        config.goal = goal;
    } else if (trs) {
        config.mode = CliConfig::Mode::trs;
    }
    return -1;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    Program program;
    try {
        program = load_program(config.input);
    } catch (const ParseError& e) {
        err << config.input << ":" << e.what() << "\n";
        return exit_code::input_error;
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }

    switch (config.mode) {
    case CliConfig::Mode::trs: {
        try {
            out << format_trs(translate(program), dependency_pairs(program));
        } catch (const ExistentialVariableError& e) {
            err << "error: " << e.what() << "\n";
            return exit_code::input_error;
        }
        return 0;
    }
    case CliConfig::Mode::derive: {
        Atom goal;
        try {
            goal = parse_goal(config.goal);
        } catch (const ParseError& e) {
            err << "goal:" << e.what() << "\n";
            return exit_code::input_error;
        }
        DerivationTrace trace = s_derive(program, goal, config.steps, config.fuse);
        out << (config.output == CliConfig::Output::json ? format_trace_json(trace, program)
                                                         : format_trace_text(trace, program));
        if (config.dot && trace.last_tree) out << trace.last_tree->to_dot("derivation");
        if (trace.outcome == DeriveOutcome::unguarded) return exit_code::not_guarded;
        if (trace.outcome == DeriveOutcome::fuse_exceeded) return exit_code::fuse_exceeded;
        return 0;
    }
    case CliConfig::Mode::check: break;
    }

    ProductivityReport report = gc3(program, config.fuse, config.parallel);
    if (config.output == CliConfig::Output::json) {
        out << format_json(report, program);
    } else {
        out << format_text(report, program);
    }
    if (config.dot)
        for (const auto& d : head_tree_dots(program, config.fuse)) out << d;
    if (report.fuse_exceeded) err << "warning: fuse of " << config.fuse << " exceeded; this indicates a checker bug\n";
    return report_exit_code(report);
}

} // namespace prodcheck
