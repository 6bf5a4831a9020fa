// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "prodcheck/cli.hpp"
#include "prodcheck/derivation.hpp"
#include "prodcheck/trs.hpp"
#include "support.hpp"

using namespace prodcheck;
using namespace testing_support;

namespace {

const std::vector<std::string> corpus_files = {"p1.pl", "p1_reversed.pl", "p2.pl", "p3.pl", "p4.pl",
                                               "p5.pl", "p6.pl", "p7.pl", "p8.pl", "incomplete.pl",
                                               "sieve.pl", "sieve_comember.pl"};

struct Failure {
    std::string why;
};

void expect(bool ok, const std::string& why) {
    if (!ok) throw Failure{why};
}

// criterion 1
void corpus_classification() {
    for (const char* f : {"p1.pl", "p1_reversed.pl", "p2.pl", "p5.pl", "p6.pl"}) {
        auto r = gc3(load(f));
        expect(r.program_guarded && r.program_live, std::string(f) + " should be guarded and live");
    }
    for (const char* f : {"p3.pl", "p4.pl", "p7.pl"})
        expect(!gc3(load(f)).program_guarded, std::string(f) + " should not be guarded");
    auto p8 = gc3(load("p8.pl"));
    expect(p8.program_guarded && !p8.program_live, "p8.pl should be guarded with finite derivations only");
}

// criterion 2
void p6_invariant() {
    auto r = gc3(load("p6.pl"));
    expect(r.invariant_list.size() == 1, "expected exactly one invariant");
    const auto& t = *r.invariant_list.begin();
    expect(t.clause == 0 && t.position == Position{1}, "expected clause 0 at [1]");
    expect(variant(t.head_subterm, T("scons(V3,V5)")), "term " + to_string(t.head_subterm) + " is not scons(_,_)");
}

// criterion 3
void p6_tree_count() {
    auto r = observation_subtree(load("p6.pl"), 0);
    expect(r.verdict == Verdict::guarded, "P6 clause 0 should be guarded");
    expect(r.trees_explored == 3, "explored " + std::to_string(r.trees_explored) + " trees");
}

// criterion 4
void p7_witness() {
    Program p = load("p7.pl");
    auto r = gc3(p);
    const auto* bad = r.first_unguarded();
    expect(bad && bad->witness, "no witness");
    expect(bad->witness->goal.predicate == "q", "goal predicate is " + bad->witness->goal.predicate);
    std::string labels = path_labels(p, bad->witness->path);
    expect(labels == "[(p:0), (q:0), (p:0)]", "path " + labels);
}

// criterion 5
void sieve() {
    Program p = load("sieve.pl");
    auto r = gc3(p);
    expect(r.program_guarded && r.program_live, "sieve should be guarded and live");
    std::set<std::string> clauses;
    for (const auto& t : r.invariant_list) clauses.insert(p.label(t.clause));
    std::set<std::string> want = {"filter:0", "filter:1", "sieve:0", "member:1", "less:1"};
    std::string got;
    for (const auto& c : clauses) got += c + " ";
    expect(clauses == want, "invariant clauses: " + got);

    Program c = load("sieve_comember.pl");
    auto rc = gc3(c);
    const auto* bad = rc.first_unguarded();
    expect(bad && bad->witness, "comember formulation should not be guarded");
    expect(bad->witness->goal.predicate == "comember", "loop goal is " + bad->witness->goal.predicate);
    std::string labels = path_labels(c, bad->witness->path);
    expect(labels == "[(primes:0), (comember:0), (comember:0)]", "path " + labels);
}

// criterion 6
void incompleteness() {
    Program p = load("incomplete.pl");
    expect(p.size() == 1 && to_string(p.clause(0)) == "p(a) :- p(X).", "unexpected corpus content");
    expect(!gc3(p).program_guarded, "p(a) :- p(X) should not be guarded");
}

// criterion 7
void derivation() {
    auto trace = s_derive(load("p6.pl"), A("from(0,X)"), 3);
    expect(trace.steps.size() == 3, "took " + std::to_string(trace.steps.size()) + " steps");
    Term x = trace.answer_prefix.apply(Term::variable("X"));
    expect(variant(x, T("scons(0,scons(s(0),scons(s(s(0)),V)))")), "answer " + to_string(x));
    expect(x.arg(1).arg(1).arg(1).is_variable(), "tail should be a fresh variable");
}

// criterion 8
void properties() {
    const int cases = 200;
    {
        const auto grounds = ground_terms(2);
        TermGen gen(20240101, {{"f", 2}, {"g", 1}, {"a", 0}, {"b", 0}}, {"X", "Y"});
        for (int i = 0; i < cases; ++i) {
            Term s = gen.term(2);
            Term t = gen.pick(2) ? gen.term(2) : Substitution({{"X", gen.term(1)}}).apply(s);
            expect(mgu_agrees_with_enumeration(s, t, grounds), "mgu oracle: " + to_string(s) + " = " + to_string(t));
        }
    }
    {
        TermGen gen(20240102, {{"f", 2}, {"s", 1}, {"a", 0}, {"b", 0}}, {"X", "Y"});
        for (int i = 0; i < cases; ++i) {
            Atom a1{"p", {gen.term(3), gen.term(2)}};
            Atom a2 = gen.pick(2) ? Atom{"p", {gen.term(3), gen.term(2)}}
                                  : Atom{"p", {a1.args[0].is_leaf() ? a1.args[0] : a1.args[0].arg(0), a1.args[1]}};
            expect(contraction_agrees_with_oracle(a1, a2),
                   "contraction oracle: " + to_string(a1) + " vs " + to_string(a2));
        }
    }
    std::size_t transitions_seen = 0;
    for (const auto& f : corpus_files) {
        Program p = load(f);
        for (std::size_t k = 0; k < p.size(); ++k)
            observation_subtree(p, k, default_fuse, [&](const Transition&, const InvariantSet& proj,
                                                        const InvariantSet& ci) {
                ++transitions_seen;
                for (const auto& t : ci) expect(proj.count(t) == 1, f + ": invariant outside projection");
            });
    }
    expect(transitions_seen >= static_cast<std::size_t>(cases), "only " + std::to_string(transitions_seen) +
                                                                    " transitions explored");
    {
        std::mt19937 rng(20240103);
        std::vector<std::pair<Program, Clause>> pool;
        for (const auto& f : corpus_files) {
            Program p = load(f);
            for (const auto& c : p.clauses()) pool.emplace_back(p, c);
        }
        for (int i = 0; i < cases; ++i) {
            const auto& [p, c] = pool[rng() % pool.size()];
            FreshNames a(0), b(1000);
            auto ra = build_and_check(p, rename_apart(c, a).head, default_fuse, a);
            auto rb = build_and_check(p, rename_apart(c, b).head, default_fuse, b);
            expect(ra.index() == rb.index(), "verdict depends on fresh seed for " + p.label(c.index));
            auto tree = [](const Gc2Result& r) {
                if (auto* g = std::get_if<Guarded>(&r)) return g->tree;
                if (auto* u = std::get_if<Unguarded>(&r)) return u->partial;
                return std::shared_ptr<const RewritingTree>();
            };
            if (tree(ra)) expect(canonical_form(*tree(ra)) == canonical_form(*tree(rb)),
                                 "trees differ across fresh seeds for " + p.label(c.index));
        }
    }
    {
        struct Goal {
            const char* file;
            const char* goal;
        };
        const std::vector<Goal> goals = {{"p6.pl", "from(0,X)"}, {"p2.pl", "stream(X)"}, {"p1.pl", "nat(X)"},
                                         {"sieve.pl", "prime(X)"}, {"p6.pl", "from(X,Y)"}, {"p5.pl", "p(X)"}};
        std::mt19937 rng(20240104);
        for (int i = 0; i < cases; ++i) {
            const auto& g = goals[rng() % goals.size()];
            Atom goal = A(g.goal);
            auto trace = s_derive(load(g.file), goal, 1 + rng() % 5);
            Substitution prev;
            for (const auto& step : trace.steps) {
                for (const auto& v : variables(goal)) {
                    Term before = prev.apply(Term::variable(v));
                    expect(step.answer.apply(Term::variable(v)) == step.unifier.apply(before),
                           std::string("answer prefix not refined monotonically for ") + g.goal);
                }
                prev = step.answer;
            }
        }
    }
}

struct Signature {
    std::map<std::string, std::size_t> predicates;
    std::map<std::string, std::size_t> functors;
};

void collect(const Term& t, Signature& sig) {
    if (t.is_variable()) return;
    sig.functors[t.name()] = t.arity();
    for (const auto& a : t.args()) collect(a, sig);
}

Signature signature(const Program& p) {
    Signature sig;
    for (const auto& c : p.clauses()) {
        for (const Atom* a : {&c.head}) sig.predicates[a->predicate] = a->arity();
        for (const auto& b : c.body) sig.predicates[b.predicate] = b.arity();
        for (const auto& a : c.head.args) collect(a, sig);
        for (const auto& b : c.body)
            for (const auto& a : b.args) collect(a, sig);
    }
    return sig;
}

// criterion 9
void observability() {
    std::mt19937 seeds(20240105);
    for (const auto& f : corpus_files) {
        Program p = load(f);
        if (!gc3(p).program_guarded) continue;
        Signature sig = signature(p);
        std::vector<std::pair<std::string, std::size_t>> fs(sig.functors.begin(), sig.functors.end());
        std::vector<std::pair<std::string, std::size_t>> ps(sig.predicates.begin(), sig.predicates.end());
        TermGen gen(seeds(), fs, {"X", "Y", "Z"});
        for (int i = 0; i < 200; ++i) {
            const auto& [pred, arity] = ps[gen.pick(ps.size())];
            Atom goal{pred, {}};
            for (std::size_t k = 0; k < arity; ++k) goal.args.push_back(gen.term(3));
            auto r = build_and_check(p, goal);
            expect(std::holds_alternative<Guarded>(r), f + ": goal " + to_string(goal) + " gave " +
                                                           (std::holds_alternative<Unguarded>(r) ? "an unguarded"
                                                                                                : "a fuse-exceeded") +
                                                           " tree");
            FreshNames fresh;
            expect(expand_tree(p, goal, default_fuse, fresh).has_value(), f + ": goal " + to_string(goal) +
                                                                               " has no finite rewriting tree");
        }
    }
}

// criterion 10
void trs_bridge() {
    for (const auto& f : corpus_files) {
        Program p = load(f);
        std::size_t body = 0;
        bool existential = false;
        for (std::size_t i = 0; i < p.size(); ++i) {
            body += p.clause(i).body.size();
            existential = existential || !p.existential_variables(i).empty();
        }
        if (existential) {
            try {
                dependency_pairs(p);
                expect(false, f + ": expected an existential-variable error");
            } catch (const ExistentialVariableError&) {
            }
            continue;
        }
        expect(dependency_pairs(p).size() == body, f + ": pair count differs from body-atom count");
    }
    try {
        translate(load("p8.pl"));
        expect(false, "P8 translation should fail");
    } catch (const ExistentialVariableError& e) {
        expect(e.variable() == "Y", "error names " + e.variable());
        expect(std::string(e.what()).find('Y') != std::string::npos, "message does not name Y");
    }
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void()>>> criteria = {
        {"corpus classification", corpus_classification},
        {"P6 liveness invariant", p6_invariant},
        {"P6 observation subtree size", p6_tree_count},
        {"P7 unguarded witness", p7_witness},
        {"sieve and comember", sieve},
        {"incompleteness witness", incompleteness},
        {"S-derivation answer prefix", derivation},
        {"property suites", properties},
        {"guarded implies observable", observability},
        {"TRS bridge", trs_bridge},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& [name, run] = criteria[i];
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            run();
        } catch (const Failure& f) {
            ok = false;
            detail = f.why;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.0f ms", ms);
        std::cout << (ok ? "PASS" : "FAIL") << " " << i + 1 << " " << name << " (" << timing << ")";
        if (!ok) std::cout << ": " << detail;
        std::cout << "\n";
        failed += ok ? 0 : 1;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
