#include "acpol/analysis.hpp"
#include "acpol/models.hpp"

#include <doctest.h>

#include <vector>

using namespace acpol;

namespace {

constexpr Decision A = Decision::Allow;
constexpr Decision D = Decision::Deny;
constexpr Decision N = Decision::Na;
constexpr Decision C = Decision::Conflict;

AttributeVocabulary clinic_vocab() {
    return AttributeVocabulary({{"role", {"doc", "nurse"}}, {"dept", {"cardio"}}});
}

// Independent post-order evaluation used to cross-check the library's
// recursion (compositionality check).
Decision eval_independent(const ModelInstance& m, const Term& t, const Request& q) {
    struct Frame {
        const Term* term;
        std::size_t next_child = 0;
        std::vector<Decision> results;
    };
    std::vector<Frame> stack{{&t}};
    Decision out = N;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.term->is_atom()) {
            out = m.atom_eval(f.term->atom_ref(), q);
            stack.pop_back();
            if (!stack.empty()) stack.back().results.push_back(out);
            continue;
        }
        if (f.next_child < f.term->children().size()) {
            stack.push_back({&f.term->children()[f.next_child++]});
            continue;
        }
        const OperatorTable& table = f.term->table()
                                         ? *f.term->table()
                                         : builtin_operator(f.term->op(), m.decision_set);
        out = table.apply(f.results);
        stack.pop_back();
        if (!stack.empty()) stack.back().results.push_back(out);
    }
    return out;
}

} // namespace

TEST_CASE("access matrix atom semantics") {
    AmUniverse u{{"s1", "s2"}, {"o1", "o2"}, {"x1", "x2"}};
    auto m = am_model(u);
    CHECK(m.requests.size() == 8);
    auto atom = Term::atom(Atom{{"s1", "o1", "x1"}});
    CHECK(evaluate(m, atom, Request::triple("s1", "o1", "x1")) == A);
    CHECK(evaluate(m, atom, Request::triple("s2", "o2", "x2")) == D);
    CHECK(evaluate(m, Term::node("c0"), Request::triple("s1", "o1", "x1")) == D);
    CHECK_THROWS_AS(am_model(AmUniverse{{}, {"o"}, {"x"}}), DomainError);
}

TEST_CASE("every access-matrix term denotes membership in its allow set") {
    AmUniverse u{{"s1", "s2"}, {"o1"}, {"x1", "x2"}};
    auto m = am_model(u);
    // Oracle: collect the atoms of the or-tree; the term allows exactly the
    // requests equal to one of them.
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Term t = random_term(m, seed, 9);
        std::vector<Request> allowed;
        auto collect = [&](auto&& self, const Term& node) -> void {
            if (node.is_atom()) {
                const auto& ids = node.atom_ref().ids;
                allowed.push_back(Request::triple(ids[0], ids[1], ids[2]));
                return;
            }
            for (const auto& c : node.children()) self(self, c);
        };
        collect(collect, t);
        for (const auto& q : m.requests) {
            bool member = std::find(allowed.begin(), allowed.end(), q) != allowed.end();
            CHECK(evaluate(m, t, q) == (member ? A : D));
        }
    }
}

TEST_CASE("three-valued atom semantics") {
    auto v = clinic_vocab();
    auto q = [](std::vector<AttributePair> ps) { return Request::pairs(std::move(ps)); };
    CHECK(abac_atom_three(v, {"role", "doc"}, q({{"role", "doc"}})) == A);
    CHECK(abac_atom_three(v, {"role", "doc"}, q({{"dept", "cardio"}})) == N);
    CHECK(abac_atom_three(v, {"role", "doc"}, q({{"role", "nurse"}})) == D);
    // Match wins on multi-valued requests.
    CHECK(abac_atom_three(v, {"role", "doc"}, q({{"role", "doc"}, {"role", "nurse"}})) == A);
    CHECK_THROWS_AS(abac_atom_three(v, {"role", "admin"}, q({})), DomainError);
}

TEST_CASE("four-valued atom semantics") {
    auto v = clinic_vocab();
    auto q = [](std::vector<AttributePair> ps) { return Request::pairs(std::move(ps)); };
    CHECK(abac_atom_four(v, {"role", "doc"}, q({{"role", "doc"}, {"role", "nurse"}})) == C);
    CHECK(abac_atom_four(v, {"role", "doc"}, q({{"role", "doc"}})) == A);
    CHECK(abac_atom_four(v, {"role", "doc"}, q({{"role", "nurse"}})) == D);
    CHECK(abac_atom_four(v, {"role", "doc"}, q({})) == N);
    CHECK(abac_atom_four(v, {"role", "doc"}, q({{"dept", "cardio"}})) == N);
    CHECK_THROWS_AS(abac_atom_four(v, {"role", "admin"}, q({})), DomainError);
}

TEST_CASE("model construction per variant") {
    auto v = clinic_vocab();
    auto abacm = make_abac_model(v, AbacVariant::Abacm);
    CHECK(abacm.requests.size() == 6);
    CHECK(abacm.atoms.size() == 3);
    auto abacc = make_abac_model(v, AbacVariant::Abacc);
    CHECK(abacc.requests.size() == 8);
    auto abac4 = make_abac_model(v, AbacVariant::Abac4);
    CHECK(abac4.requests.size() == 8);
    CHECK(abac4.decision_set == SetKind::Four);

    // Operator-set membership is enforced per variant.
    Term dbd_term = Term::node("dbd", {Term::atom(Atom{{"role", "doc"}})});
    CHECK(!validate(abacm, dbd_term).empty());
    CHECK(validate(abacc, dbd_term).empty());
    CHECK(!validate(abac4, dbd_term).empty());
}

TEST_CASE("validate reports unknown atoms and arity mismatches") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacm);
    CHECK(validate(m, Term::node("and", {Term::atom(Atom{{"role", "doc"}}),
                                         Term::atom(Atom{{"dept", "cardio"}})}))
              .empty());
    auto diags = validate(m, Term::node("and", {Term::atom(Atom{{"role", "doc"}})}));
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find("arity mismatch") != std::string::npos);
    CHECK(!validate(m, Term::atom(Atom{{"color", "red"}})).empty());
    CHECK(!validate(m, Term::node("dov", {Term::atom(Atom{{"role", "doc"}}),
                                          Term::atom(Atom{{"dept", "cardio"}})}))
               .empty());
}

TEST_CASE("evaluation refuses invalid terms and foreign requests") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacm);
    CHECK_THROWS_AS(evaluate(m, Term::node("dov", {Term::node("c1"), Term::node("c0")}),
                             m.requests[0]),
                    ValidationError);
    CHECK_THROWS_AS(evaluate(m, Term::atom(Atom{{"role", "doc"}}),
                             Request::pairs({{"role", "doc"}, {"role", "nurse"}})),
                    ValidationError);
}

TEST_CASE("atomic monotonicity over the single-valued space, exhaustively") {
    auto v = clinic_vocab();
    auto m = make_abac_model(v, AbacVariant::Abacm);
    const auto& ds = DecisionSet::get(SetKind::Three);
    for (const auto& pair : v.all_pairs())
        for (const auto& q1 : m.requests)
            for (const auto& q2 : m.requests) {
                if (!request_leq(q1, q2)) continue;
                CHECK(ds.leq(abac_atom_three(v, pair, q1), abac_atom_three(v, pair, q2)));
            }
}

TEST_CASE("multi-valued requests break three-valued atomic monotonicity") {
    auto v = clinic_vocab();
    auto lo = Request::pairs({{"role", "nurse"}});
    auto hi = Request::pairs({{"role", "doc"}, {"role", "nurse"}});
    CHECK(request_leq(lo, hi));
    CHECK(abac_atom_three(v, {"role", "doc"}, lo) == D);
    CHECK(abac_atom_three(v, {"role", "doc"}, hi) == A);
    CHECK(!DecisionSet::get(SetKind::Three).leq(D, A));
}

TEST_CASE("four-valued atoms are monotone over the multi-valued space") {
    auto v = clinic_vocab();
    auto m = make_abac_model(v, AbacVariant::Abac4);
    const auto& ds = DecisionSet::get(SetKind::Four);
    for (const auto& pair : v.all_pairs())
        for (const auto& q1 : m.requests)
            for (const auto& q2 : m.requests) {
                if (!request_leq(q1, q2)) continue;
                CHECK(ds.leq(abac_atom_four(v, pair, q1), abac_atom_four(v, pair, q2)));
            }
}

TEST_CASE("t_q: shape and semantics") {
    CHECK(render(tq_term(Request::pairs({{"role", "doc"}}))) == "(atom role doc)");
    CHECK(render(tq_term(Request::pairs({{"role", "doc"}, {"dept", "cardio"}}))) ==
          "(and (atom dept cardio) (atom role doc))");
    CHECK_THROWS_AS(tq_term(Request::pairs({})), DomainError);

    auto v = clinic_vocab();
    auto m = make_abac_model(v, AbacVariant::Abacm);
    for (const auto& q : m.requests) {
        if (q.pair_set().empty()) continue;
        Term t = tq_term(q);
        CHECK(evaluate(m, t, Request::pairs({})) == N);
        for (const auto& q2 : m.requests)
            if (request_leq(q, q2)) CHECK(evaluate(m, t, q2) == A);
    }
}

TEST_CASE("the realizer's ordering lemma for t_q") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacm);
    const auto& topo = m.requests; // size-then-lexicographic enumeration order
    for (std::size_t i = 1; i < topo.size(); ++i) {
        CHECK(evaluate(m, tq_term(topo[i]), topo[i]) == A);
        for (std::size_t j = i + 1; j < topo.size(); ++j)
            CHECK(evaluate(m, tq_term(topo[j]), topo[i]) != A);
    }
}

TEST_CASE("test-atom models reproduce abstract policy trees") {
    TestAtomTable table;
    table.requests = {"q"};
    table.atoms = {{"A1", {{"q", A}}}, {"A2", {{"q", N}}}};
    auto m = test_model(table);
    Term p1 = parse("(dbd (dov (atom A1) (atom A2)))");
    Term p2 = parse("(dbd (and (atom A1) (atom A2)))");
    CHECK(evaluate(m, p1, Request::label("q")) == A);
    CHECK(evaluate(m, p2, Request::label("q")) == D);
    CHECK(evaluate(m, Term::atom(Atom{{"A2"}}), Request::label("q")) == N);

    TestAtomTable incomplete;
    incomplete.requests = {"q", "r"};
    incomplete.atoms = {{"A1", {{"q", A}}}};
    CHECK_THROWS_AS(test_model(incomplete), DomainError);
}

TEST_CASE("evaluation is total and compositional on random terms") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacm);
    auto mc = make_abac_model(clinic_vocab(), AbacVariant::Abacc);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        for (const ModelInstance* model : {&m, &mc}) {
            Term t = random_term(*model, seed, 11);
            for (const auto& q : model->requests) {
                Decision d = evaluate(*model, t, q);
                CHECK(DecisionSet::get(model->decision_set).contains(d));
                CHECK(d == eval_independent(*model, t, q));
            }
        }
    }
}
