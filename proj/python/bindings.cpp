#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prodcheck/cli.hpp"
#include "prodcheck/derivation.hpp"
#include "prodcheck/parser.hpp"
#include "prodcheck/trs.hpp"

namespace py = pybind11;
using namespace prodcheck;

namespace {

py::dict invariant_dict(const InvariantTriple& t, const Program& p) {
    py::dict d;
    d["clause"] = t.clause;
    d["predicate"] = p.clause(t.clause).head.predicate;
    d["ordinal"] = p.ordinal(t.clause);
    d["term"] = to_string(t.head_subterm);
    d["position"] = t.position;
    return d;
}

py::list invariant_list(const InvariantSet& set, const Program& p) {
    py::list out;
    for (const auto& t : set) out.append(invariant_dict(t, p));
    return out;
}

py::object witness_dict(const std::optional<UnguardedLoop>& w, const Program& p) {
    if (!w) return py::none();
    py::dict d;
    d["goal"] = to_string(w->goal);
    d["clause"] = w->loop.clause;
    py::list path;
    for (std::size_t c : w->path) path.append(p.label(c));
    d["path"] = path;
    return d;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::guarded: return "guarded";
    case Verdict::unguarded: return "unguarded";
    case Verdict::fuse_exceeded: return "fuse_exceeded";
    }
    return "";
}

py::dict check(const Program& p, std::size_t fuse, bool parallel) {
    ProductivityReport r;
    {
        py::gil_scoped_release release;
        r = gc3(p, fuse, parallel);
    }
    py::dict d;
    d["guarded"] = r.program_guarded;
    d["live"] = r.program_live;
    d["fuse_exceeded"] = r.fuse_exceeded;
    d["invariants"] = invariant_list(r.invariant_list, p);
    const auto* bad = r.first_unguarded();
    d["witness"] = bad ? witness_dict(bad->witness, p) : py::none();
    py::list clauses;
    for (const auto& c : r.per_clause) {
        py::dict cd;
        cd["clause"] = c.clause_checked;
        cd["label"] = p.label(c.clause_checked);
        cd["verdict"] = verdict_name(c.verdict);
        cd["trees_explored"] = c.trees_explored;
        cd["invariants"] = invariant_list(c.live_invariants, p);
        cd["witness"] = witness_dict(c.witness, p);
        clauses.append(cd);
    }
    d["clauses"] = clauses;
    d["report"] = format_text(r, p);
    d["exit_code"] = report_exit_code(r);
    return d;
}

py::dict derive(const Program& p, const std::string& goal, std::size_t steps, std::size_t fuse) {
    Atom g = parse_goal(goal);
    DerivationTrace t = s_derive(p, g, steps, fuse);
    py::dict d;
    d["goal"] = to_string(t.goal);
    py::dict answer;
    for (const auto& [v, term] : t.answer_prefix.bindings()) answer[py::str(v)] = to_string(term);
    d["answer"] = answer;
    py::list labels;
    for (const auto& s : t.steps) labels.append(p.label(s.clause));
    d["steps"] = labels;
    switch (t.outcome) {
    case DeriveOutcome::step_limit: d["outcome"] = "step_limit"; break;
    case DeriveOutcome::no_transition: d["outcome"] = "no_transition"; break;
    case DeriveOutcome::unguarded: d["outcome"] = "unguarded"; break;
    case DeriveOutcome::fuse_exceeded: d["outcome"] = "fuse_exceeded"; break;
    }
    d["witness"] = witness_dict(t.witness, p);
    return d;
}

py::dict tree(const Program& p, const std::string& goal, std::size_t fuse) {
    Gc2Result r = build_and_check(p, parse_goal(goal), fuse);
    py::dict d;
    if (auto* g = std::get_if<Guarded>(&r)) {
        d["verdict"] = "guarded";
        d["size"] = g->tree->size();
        py::list leaves;
        for (NodeId id : g->tree->open_leaves()) leaves.append(to_string(g->tree->node(id).atom));
        d["open_leaves"] = leaves;
        d["dot"] = g->tree->to_dot();
    } else if (auto* u = std::get_if<Unguarded>(&r)) {
        d["verdict"] = "unguarded";
        d["witness"] = witness_dict(u->witness, p);
        d["dot"] = u->partial->to_dot();
    } else {
        d["verdict"] = "fuse_exceeded";
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Productivity checking for logic programs";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ExistentialVariableError>(m, "ExistentialVariableError", PyExc_ValueError);
    py::register_exception<FileError>(m, "FileError", PyExc_OSError);

    py::class_<Program>(m, "Program")
        .def("__len__", &Program::size)
        .def("__str__", [](const Program& p) { return to_string(p); })
        .def("label", &Program::label)
        .def("clause", [](const Program& p, std::size_t i) { return to_string(p.clause(i)); });

    m.def("parse_program", [](const std::string& text) { return parse_program(text); }, py::arg("text"));
    m.def("load_program", &load_program, py::arg("path"));
    m.def("check", &check, py::arg("program"), py::arg("fuse") = default_fuse, py::arg("parallel") = true,
          "Run the program-level guardedness and liveness check.");
    m.def("derive", &derive, py::arg("program"), py::arg("goal"), py::arg("steps") = 10,
          py::arg("fuse") = default_fuse);
    m.def("tree", &tree, py::arg("program"), py::arg("goal"), py::arg("fuse") = default_fuse,
          "Build and check the rewriting tree for a goal.");
    m.def(
        "trs",
        [](const Program& p) { return format_trs(translate(p), dependency_pairs(p)); }, py::arg("program"));
    m.attr("default_fuse") = default_fuse;
}
