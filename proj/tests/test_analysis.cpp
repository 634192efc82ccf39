#include "acpol/analysis.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace acpol;

namespace {

constexpr Decision A = Decision::Allow;
constexpr Decision D = Decision::Deny;
constexpr Decision N = Decision::Na;

AttributeVocabulary clinic_vocab() {
    return AttributeVocabulary({{"role", {"doc", "nurse"}}, {"dept", {"cardio"}}});
}

// Brute-force monotonicity oracle for an extensional policy, written
// independently of the library's checker.
bool oracle_monotone(const ModelInstance& m, const IdealPolicy& p) {
    const auto& ds = DecisionSet::get(m.decision_set);
    for (std::size_t i = 0; i < m.requests.size(); ++i)
        for (std::size_t j = 0; j < m.requests.size(); ++j)
            if (m.req_leq(m.requests[i], m.requests[j]) &&
                !ds.leq(p.decisions[i], p.decisions[j]))
                return false;
    return true;
}

} // namespace

TEST_CASE("a single three-valued atom is non-monotone over the multi-valued space") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacc);
    auto report = check_monotone_policy(m, parse("(atom role doc)"));
    REQUIRE(!report.monotone);
    REQUIRE(report.witness.has_value());
    // First violation in size-then-lexicographic order: a denied singleton
    // below the two-valued role request that the atom allows.
    CHECK(report.witness->lo == Request::pairs({{"role", "nurse"}}));
    CHECK(report.witness->hi == Request::pairs({{"role", "doc"}, {"role", "nurse"}}));
    CHECK(report.witness->d_lo == D);
    CHECK(report.witness->d_hi == A);
}

TEST_CASE("constant and absorbing terms are monotone where the bare atom is not") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacc);
    CHECK(check_monotone_policy(m, parse("(c0)")).monotone);
    CHECK(check_monotone_policy(m, parse("(c1)")).monotone);
    CHECK(check_monotone_policy(m, parse("(cna)")).monotone);
    // or(allow, x) = allow absorbs the non-monotone atom entirely.
    CHECK(check_monotone_policy(m, parse("(or (c1) (atom role doc))")).monotone);
}

TEST_CASE("is_ideal_monotone agrees with a brute-force oracle") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacc);
    int monotone_seen = 0, violated_seen = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto ideal = random_ideal(m, seed);
        auto report = is_ideal_monotone(m, ideal);
        CHECK(report.monotone == oracle_monotone(m, ideal));
        (report.monotone ? monotone_seen : violated_seen)++;
        if (!report.monotone) {
            REQUIRE(report.witness.has_value());
            const auto& w = *report.witness;
            CHECK(m.req_leq(w.lo, w.hi));
            CHECK(!DecisionSet::get(m.decision_set).leq(w.d_lo, w.d_hi));
        }
    }
    CHECK(violated_seen > 0);
}

TEST_CASE("random terms are deterministic, valid, and size-bounded") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacm);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Term t1 = random_term(m, seed, 9);
        Term t2 = random_term(m, seed, 9);
        CHECK(t1 == t2);
        CHECK(validate(m, t1).empty());
        CHECK(t1.size() <= 9);
    }
    CHECK(!(random_term(m, 1, 9) == random_term(m, 2, 9)));
}

TEST_CASE("random monotone ideals really are monotone") {
    for (auto variant : {AbacVariant::Abacm, AbacVariant::Abacc, AbacVariant::Abac4}) {
        auto m = make_abac_model(clinic_vocab(), variant);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            auto ideal = random_monotone_ideal(m, seed);
            CHECK(oracle_monotone(m, ideal));
        }
    }
}

TEST_CASE("access-matrix realizer") {
    AmUniverse u{{"s1", "s2"}, {"o1"}, {"x1", "x2"}};
    auto m = am_model(u);

    SUBCASE("single allowed triple") {
        IdealPolicy p{std::vector<Decision>(m.requests.size(), D)};
        p.decisions[1] = A;
        Term t = realize_am(u, p);
        CHECK(!equivalent(m, t, p).has_value());
    }
    SUBCASE("empty allow set yields the deny constant") {
        IdealPolicy p{std::vector<Decision>(m.requests.size(), D)};
        CHECK(render(realize_am(u, p)) == "(c0)");
    }
    SUBCASE("every two-valued ideal is realizable") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            auto p = random_ideal(m, seed);
            CHECK(!equivalent(m, realize_am(u, p), p).has_value());
        }
    }
    SUBCASE("conclusive decisions only") {
        IdealPolicy p{std::vector<Decision>(m.requests.size(), N)};
        CHECK_THROWS_AS(realize_am(u, p), DomainError);
    }
}

TEST_CASE("selection operator semantics") {
    // pi over a three-request chain topo order: pi(empty)=na recorded first.
    auto op = oplus_operator({N, A, D});
    CHECK(op->arity() == 2);
    CHECK(op->apply({N, N}) == N); // no child allows -> pi(empty)
    CHECK(op->apply({A, N}) == A); // q1 is the maximal allowing index
    CHECK(op->apply({A, A}) == D); // q2 wins over q1
    CHECK(op->apply({D, A}) == D);
    CHECK(op->apply({N, A}) == D);
}

TEST_CASE("monotone realizer round-trips monotone ideals") {
    auto v = clinic_vocab();
    auto m = make_abac_model(v, AbacVariant::Abacm);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto p = random_monotone_ideal(m, seed);
        Term t = realize_monotone(v, p);
        CHECK(validate(m, t).empty());
        CHECK(!equivalent(m, t, p).has_value());
        // The rendered artifact round-trips through the concrete syntax.
        CHECK(!equivalent(m, parse(render(t)), p).has_value());
    }
}

TEST_CASE("monotone realizer rejects non-monotone input with its witness") {
    auto v = clinic_vocab();
    auto m = make_abac_model(v, AbacVariant::Abacm);
    // Deny everywhere except a single allow at the bottom request.
    IdealPolicy p{std::vector<Decision>(m.requests.size(), D)};
    p.decisions[0] = A;
    try {
        realize_monotone(v, p);
        FAIL("expected NonMonotoneError");
    } catch (const NonMonotoneError& e) {
        CHECK(e.witness.lo == m.requests[0]);
        CHECK(e.witness.d_lo == A);
        CHECK(e.witness.d_hi == D);
    }
}

TEST_CASE("delta guards classify each decision of the inner term") {
    TestAtomTable table;
    table.requests = {"qa", "qd", "qn"};
    table.atoms = {{"X", {{"qa", A}, {"qd", D}, {"qn", N}}}};
    auto m = test_model(table);
    Term x = Term::atom(Atom{{"X"}});
    for (Decision d : {A, D, N}) {
        Term g = delta_guard(d, x);
        CHECK(evaluate(m, g, Request::label("qa")) == (d == A ? A : D));
        CHECK(evaluate(m, g, Request::label("qd")) == (d == D ? A : D));
        CHECK(evaluate(m, g, Request::label("qn")) == (d == N ? A : D));
    }
}

TEST_CASE("complete compiler covers every three-valued ideal") {
    auto v = clinic_vocab();
    auto m = make_abac_model(v, AbacVariant::Abacc);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto p = random_ideal(m, seed);
        Term t = compile_complete(v, p);
        CHECK(validate(m, t).empty());
        CHECK(!equivalent(m, t, p).has_value());
        CHECK(!equivalent(m, parse(render(t)), p).has_value());
    }
    // All-deny compiles to the deny constant.
    IdealPolicy all_deny{std::vector<Decision>(m.requests.size(), D)};
    CHECK(render(compile_complete(v, all_deny)) == "(c0)");
}

TEST_CASE("the compiler handles non-monotone targets the realizer must reject") {
    auto v = clinic_vocab();
    auto m = make_abac_model(v, AbacVariant::Abacc);
    IdealPolicy p{std::vector<Decision>(m.requests.size(), D)};
    p.decisions[0] = A; // allow only the empty request
    CHECK(!is_ideal_monotone(m, p).monotone);
    CHECK(!equivalent(m, compile_complete(v, p), p).has_value());
}

TEST_CASE("equivalence oracle") {
    auto m = make_abac_model(clinic_vocab(), AbacVariant::Abacc);
    CHECK(!equivalent(m, parse("(c1)"), parse("(not (c0))")).has_value());
    auto w = equivalent(m, parse("(c1)"), parse("(cna)"));
    REQUIRE(w.has_value());
    CHECK(w->request == Request::pairs({}));
    CHECK(w->left == A);
    CHECK(w->right == N);
}

TEST_CASE("deny-overrides expressed in the complete basis") {
    // ta/td detect whether either side allows/denies; assembled as in the
    // completeness construction.
    auto dm_and = [](const std::string& a, const std::string& b) {
        return "(not (or (not " + a + ") (not " + b + ")))";
    };
    std::string ta = "(or (dbd (atom x1)) (dbd (atom x2)))";
    std::string td = "(or (dbd (not (atom x1))) (dbd (not (atom x2))))";
    std::string dov_basis = "(or " + dm_and("(not " + td + ")", ta) + " " +
                            dm_and(dm_and("(not " + td + ")", "(not " + ta + ")"), "(cna)") + ")";
    Term t = parse(dov_basis);
    const auto& dov = builtin_operator("dov", SetKind::Three);
    auto u = DecisionSet::get(SetKind::Three).universe();
    for (Decision x : u)
        for (Decision y : u) {
            std::vector<Decision> args{x, y};
            CHECK(eval_formal(t, args, SetKind::Three) == dov.apply(args));
        }
}

TEST_CASE("bounded synthesis recovers small operators") {
    std::vector<std::shared_ptr<const OperatorTable>> basis = {
        builtin_operator_ptr("not", SetKind::Three),
        builtin_operator_ptr("and", SetKind::Three),
        builtin_operator_ptr("or", SetKind::Three),
        builtin_operator_ptr("una", SetKind::Three),
    };
    SUBCASE("a basis member is found at size one") {
        auto t = bounded_synthesis(basis, builtin_operator("una", SetKind::Three), 3);
        REQUIRE(t.has_value());
        CHECK(render(*t) == "(una (atom x1) (atom x2))");
    }
    SUBCASE("deny-overrides is not expressible from this basis at small size") {
        auto t = bounded_synthesis(basis, builtin_operator("dov", SetKind::Three), 8);
        CHECK(!t.has_value());
    }
}

TEST_CASE("bounded synthesis finds allow-overrides as the dual of deny-overrides") {
    std::vector<std::shared_ptr<const OperatorTable>> basis = {
        builtin_operator_ptr("not", SetKind::Three),
        builtin_operator_ptr("dov", SetKind::Three),
    };
    auto t = bounded_synthesis(basis, builtin_operator("aov", SetKind::Three), 7);
    REQUIRE(t.has_value());
    CHECK(t->size() <= 6); // not(dov(not(x1), not(x2)))
    const auto& aov = builtin_operator("aov", SetKind::Three);
    auto u = DecisionSet::get(SetKind::Three).universe();
    for (Decision x : u)
        for (Decision y : u) {
            std::vector<Decision> args{x, y};
            CHECK(eval_formal(*t, args, SetKind::Three) == aov.apply(args));
        }
}
