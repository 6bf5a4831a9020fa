#include <doctest.h>

#include <optional>

#include "prodcheck/contraction.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace prodcheck;
using namespace testing_support;

TEST_CASE("from/from contracts in both directions") {
    auto w = contraction_witnesses(A("from(X,scons(X,Y))"), A("from(s(X),Y)"));
    REQUIRE(w.size() == 1);
    CHECK(w[0].position == Position{1});
    CHECK(w[0].reducing_subterm == T("scons(X,Y)"));
    CHECK(w[0].leaf_symbol() == "Y");
    CHECK(w[0].recursive);
    CHECK(w[0].leaf_kind == LeafKind::variable);

    auto back = contraction_witnesses(A("from(s(X),Y)"), A("from(X,scons(X,Y))"));
    REQUIRE(back.size() == 1);
    CHECK(back[0].position == Position{0});
    CHECK(back[0].reducing_subterm == T("s(X)"));
    CHECK(back[0].recursive);
    CHECK(back[0].leaf_kind == LeafKind::variable);
}

TEST_CASE("identical atoms do not contract") {
    CHECK(contraction_witnesses(A("p(X)"), A("p(X)")).empty());
    CHECK(contraction_witnesses(A("p(X)"), A("q(X)")).empty());
}

TEST_CASE("non-recursive contraction") {
    auto w = contraction_witnesses(A("q(s(X2),s(X2),s(Y1),Y2)"), A("q(s(X2),s(X2),Y2,Y2)"));
    REQUIRE(w.size() == 1);
    CHECK(w[0].position == Position{2});
    CHECK(w[0].reducing_subterm == T("s(Y1)"));
    CHECK(w[0].leaf_symbol() == "Y2");
    CHECK_FALSE(w[0].recursive);
    CHECK_FALSE(has_recursive_contraction(A("q(s(X2),s(X2),s(Y1),Y2)"), A("q(s(X2),s(X2),Y2,Y2)")));
}

TEST_CASE("has_recursive_contraction") {
    auto w = has_recursive_contraction(A("nat(s(X))"), A("nat(X)"));
    REQUIRE(w);
    CHECK(w->position == Position{0});
    CHECK(w->reducing_subterm == T("s(X)"));
    CHECK_FALSE(has_recursive_contraction(A("p(X)"), A("p(f(X))")));
    CHECK(has_recursive_contraction(A("p(f(X))"), A("p(X)")));
    CHECK_FALSE(has_recursive_contraction(A("q(s(X2),s(X2),s(Y2),s(Y2))"), A("q(s(X2),s(X2),s(Y2),s(Y2))")));
}

TEST_CASE("constant leaves") {
    auto w = contraction_witnesses(A("p(f(a))"), A("p(a)"));
    REQUIRE(w.size() == 1);
    CHECK(w[0].leaf_kind == LeafKind::constant);
    CHECK(w[0].recursive);
    auto nr = contraction_witnesses(A("p(f(b))"), A("p(a)"));
    REQUIRE(nr.size() == 1);
    CHECK_FALSE(nr[0].recursive);
}

TEST_CASE("contraction_witnesses matches a brute-force position scan") {
    TermGen gen(4242, {{"f", 2}, {"s", 1}, {"a", 0}, {"b", 0}}, {"X", "Y"});
    int nonempty = 0;
    for (int i = 0; i < 200; ++i) {
        Atom a1{"p", {gen.term(3), gen.term(2)}};
        Atom a2 = gen.pick(2) ? Atom{"p", {gen.term(3), gen.term(2)}}
                              : Atom{"p", {a1.args[0].is_leaf() ? a1.args[0] : a1.args[0].arg(0), a1.args[1]}};
        auto got = contraction_witnesses(a1, a2);
        auto want = contraction_oracle(a1, a2);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
            CHECK(got[k].position == want[k].position);
            CHECK(got[k].reducing_subterm == want[k].reducing);
            CHECK(got[k].recursive == want[k].recursive);
            CHECK(got[k].leaf_kind == (got[k].leaf.is_variable() ? LeafKind::variable : LeafKind::constant));
        }
        auto rec = has_recursive_contraction(a1, a2);
        auto first = std::find_if(want.begin(), want.end(), [](const ContractionHit& h) { return h.recursive; });
        CHECK(rec.has_value() == (first != want.end()));
        if (rec && first != want.end()) CHECK(rec->position == first->position);
        CHECK(recursive_witnesses(a1, a2).size() ==
              static_cast<std::size_t>(std::count_if(want.begin(), want.end(), [](auto& h) { return h.recursive; })));
        if (!want.empty()) ++nonempty;
        CHECK(contraction_witnesses(a1, a1).empty());
    }
    CHECK(nonempty > 20);
}
