#include "acpol/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>

namespace acpol {

namespace {

std::vector<Decision> eval_over_space(const ModelInstance& model, const Term& term) {
    auto diagnostics = validate(model, term);
    if (!diagnostics.empty())
        throw ValidationError("invalid term: " + diagnostics.front().message);
    std::vector<Decision> out;
    out.reserve(model.requests.size());
    for (const auto& q : model.requests) out.push_back(evaluate(model, term, q));
    return out;
}

void check_ideal(const ModelInstance& model, const IdealPolicy& ideal) {
    if (ideal.decisions.size() != model.requests.size())
        throw DomainError("ideal policy has " + std::to_string(ideal.decisions.size()) +
                          " decisions for " + std::to_string(model.requests.size()) +
                          " requests");
    const auto& ds = DecisionSet::get(model.decision_set);
    for (Decision d : ideal.decisions) ds.index(d);
}

MonotonicityReport monotone_over_table(const ModelInstance& model,
                                       std::span<const Decision> values) {
    const auto& ds = DecisionSet::get(model.decision_set);
    for (std::size_t i = 0; i < model.requests.size(); ++i) {
        for (std::size_t j = 0; j < model.requests.size(); ++j) {
            if (!model.req_leq(model.requests[i], model.requests[j])) continue;
            if (!ds.leq(values[i], values[j]))
                return {false,
                        MonotonicityWitness{model.requests[i], model.requests[j], values[i],
                                            values[j]}};
        }
    }
    return {};
}

} // namespace

MonotonicityReport check_monotone_policy(const ModelInstance& model, const Term& term) {
    return monotone_over_table(model, eval_over_space(model, term));
}

MonotonicityReport is_ideal_monotone(const ModelInstance& model, const IdealPolicy& ideal) {
    check_ideal(model, ideal);
    return monotone_over_table(model, ideal.decisions);
}

namespace {

struct TermSampler {
    const ModelInstance& model;
    std::mt19937_64 rng;
    std::vector<std::string> leaf_ops;   // permitted 0-ary operators
    std::vector<std::string> inner_ops;  // permitted operators of arity >= 1

    TermSampler(const ModelInstance& m, std::uint64_t seed) : model(m), rng(seed) {
        for (const auto& name : m.operators) {
            const auto& t = builtin_operator(name, m.decision_set);
            (t.arity() == 0 ? leaf_ops : inner_ops).push_back(name);
        }
        if (m.atoms.empty() && leaf_ops.empty())
            throw DomainError("model has no atoms or constants to sample from");
    }

    std::size_t pick(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    }

    Term leaf() {
        const std::size_t n = model.atoms.size() + leaf_ops.size();
        const std::size_t i = pick(n);
        if (i < model.atoms.size()) return Term::atom(model.atoms[i]);
        return Term::node(leaf_ops[i - model.atoms.size()]);
    }

    Term grow(int budget) {
        if (budget <= 1 || inner_ops.empty()) return leaf();
        // Half the draws stop early so sizes spread below the budget.
        if (pick(2) == 0) return leaf();
        // Operators must fit the remaining node budget (a k-ary node costs
        // itself plus at least one node per child).
        std::vector<std::string> fitting;
        for (const auto& name : inner_ops)
            if (builtin_operator(name, model.decision_set).arity() < budget)
                fitting.push_back(name);
        if (fitting.empty()) return leaf();
        const auto& name = fitting[pick(fitting.size())];
        const auto& table = builtin_operator(name, model.decision_set);
        if (table.arity() == 1) return Term::node(name, {grow(budget - 1)});
        const int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(
                                 std::max(1, budget - 2))));
        return Term::node(name, {grow(left), grow(budget - 1 - left)});
    }
};

} // namespace

Term random_term(const ModelInstance& model, std::uint64_t seed, int max_size) {
    if (max_size < 1) throw DomainError("max_size must be at least 1");
    return TermSampler(model, seed).grow(max_size);
}

IdealPolicy random_ideal(const ModelInstance& model, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& ds = DecisionSet::get(model.decision_set);
    IdealPolicy ideal;
    std::uniform_int_distribution<std::size_t> dist(0, ds.size() - 1);
    for (std::size_t i = 0; i < model.requests.size(); ++i)
        ideal.decisions.push_back(ds.universe()[dist(rng)]);
    return ideal;
}

IdealPolicy random_monotone_ideal(const ModelInstance& model, std::uint64_t seed) {
    IdealPolicy ideal = random_ideal(model, seed);
    const std::size_t n = model.requests.size();
    // Top-down along the enumeration order (a linear extension): a
    // conclusive draw survives only when every strict upper bound already
    // carries the same decision; otherwise it is demoted to na.
    for (std::size_t ii = n; ii-- > 0;) {
        const Decision d = ideal.decisions[ii];
        if (d == Decision::Na) continue;
        bool consistent = true;
        for (std::size_t j = ii + 1; j < n && consistent; ++j)
            if (model.req_leq(model.requests[ii], model.requests[j]) &&
                ideal.decisions[j] != d)
                consistent = false;
        if (!consistent) ideal.decisions[ii] = Decision::Na;
    }
    auto report = is_ideal_monotone(model, ideal);
    assert(report.monotone);
    (void)report;
    return ideal;
}

IdealPolicy tabulate(const ModelInstance& model, const Term& term) {
    return IdealPolicy{eval_over_space(model, term)};
}

Term realize_am(const AmUniverse& universe, const IdealPolicy& ideal) {
    ModelInstance model = am_model(universe);
    if (ideal.decisions.size() != model.requests.size())
        throw DomainError("ideal policy does not cover the access-matrix request space");
    std::optional<Term> out;
    for (std::size_t i = 0; i < model.requests.size(); ++i) {
        const Decision d = ideal.decisions[i];
        if (d != Decision::Allow && d != Decision::Deny)
            throw DomainError("access-matrix ideal policies must be two-valued");
        if (d != Decision::Allow) continue;
        const auto& q = model.requests[i];
        Term atom = Term::atom(Atom{{q.subject(), q.object(), q.action()}});
        out = out ? Term::node("or", {std::move(*out), std::move(atom)}) : std::move(atom);
    }
    return out ? std::move(*out) : Term::node("c0");
}

Term realize_monotone(const AttributeVocabulary& vocab, const IdealPolicy& ideal,
                      std::size_t bound) {
    ModelInstance model = make_abac_model(vocab, AbacVariant::Abacm, bound);
    check_ideal(model, ideal);
    auto report = is_ideal_monotone(model, ideal);
    if (!report.monotone)
        throw NonMonotoneError("ideal policy is not monotone: " +
                                   report.witness->lo.to_text() + " -> " +
                                   std::string(to_string(report.witness->d_lo)) + " but " +
                                   report.witness->hi.to_text() + " -> " +
                                   std::string(to_string(report.witness->d_hi)),
                               *report.witness);
    // model.requests is size-then-lexicographic, a topological order with
    // the empty request first.
    std::vector<Term> children;
    for (std::size_t i = 1; i < model.requests.size(); ++i)
        children.push_back(tq_term(model.requests[i]));
    return Term::node(oplus_operator(ideal.decisions), std::move(children));
}

namespace {

Term and_dm(Term a, Term b) {
    // Conjunction expressed in the {not, dbd, or} basis via De Morgan.
    return Term::node("not", {Term::node("or", {Term::node("not", {std::move(a)}),
                                                Term::node("not", {std::move(b)})})});
}

Term and_chain_dm(std::vector<Term> terms) {
    if (terms.empty()) return Term::node("c1");
    Term out = std::move(terms[0]);
    for (std::size_t i = 1; i < terms.size(); ++i)
        out = and_dm(std::move(out), std::move(terms[i]));
    return out;
}

} // namespace

Term delta_guard(Decision d, Term inner) {
    switch (d) {
    case Decision::Allow:
        return and_dm(Term::node("dbd", {inner}),
                      Term::node("not", {Term::node("dbd", {Term::node("not", {inner})})}));
    case Decision::Deny:
        return Term::node("dbd", {Term::node("not", {std::move(inner)})});
    case Decision::Na:
        return Term::node("not",
                          {Term::node("or", {Term::node("dbd", {inner}),
                                             Term::node("dbd", {Term::node("not", {inner})})})});
    case Decision::Conflict:
        break;
    }
    throw DomainError("delta guards are defined for three-valued decisions only");
}

Term compile_complete(const AttributeVocabulary& vocab, const IdealPolicy& ideal,
                      std::size_t bound) {
    ModelInstance model = make_abac_model(vocab, AbacVariant::Abacc, bound);
    check_ideal(model, ideal);
    const auto all_pairs = vocab.all_pairs();
    std::optional<Term> out;
    for (std::size_t i = 0; i < model.requests.size(); ++i) {
        const Decision pi = ideal.decisions[i];
        if (pi == Decision::Deny) continue; // deny is the disjunction identity
        const Request& q = model.requests[i];
        std::vector<Term> comps;
        for (const auto& p : q.pair_set())
            comps.push_back(delta_guard(Decision::Allow, Term::atom(Atom{{p.name, p.value}})));
        for (const auto& p : all_pairs)
            if (q.has_attribute(p.name) && !q.contains(p))
                comps.push_back(delta_guard(Decision::Deny, Term::atom(Atom{{p.name, p.value}})));
        for (const auto& [name, values] : vocab.attributes())
            if (!q.has_attribute(name))
                comps.push_back(delta_guard(Decision::Na, Term::atom(Atom{{name, values.front()}})));
        Term guard = and_chain_dm(std::move(comps));
        if (pi == Decision::Na) guard = and_dm(std::move(guard), Term::node("cna"));
        out = out ? Term::node("or", {std::move(*out), std::move(guard)}) : std::move(guard);
    }
    return out ? std::move(*out) : Term::node("c0");
}

namespace {

std::optional<EquivalenceWitness> compare_tables(const ModelInstance& model,
                                                 std::span<const Decision> a,
                                                 std::span<const Decision> b) {
    for (std::size_t i = 0; i < model.requests.size(); ++i)
        if (a[i] != b[i]) return EquivalenceWitness{model.requests[i], a[i], b[i]};
    return std::nullopt;
}

} // namespace

std::optional<EquivalenceWitness> equivalent(const ModelInstance& model, const Term& a,
                                             const Term& b) {
    return compare_tables(model, eval_over_space(model, a), eval_over_space(model, b));
}

std::optional<EquivalenceWitness> equivalent(const ModelInstance& model, const Term& a,
                                             const IdealPolicy& b) {
    check_ideal(model, b);
    return compare_tables(model, eval_over_space(model, a), b.decisions);
}

std::optional<EquivalenceWitness> equivalent(const ModelInstance& model, const IdealPolicy& a,
                                             const IdealPolicy& b) {
    check_ideal(model, a);
    check_ideal(model, b);
    return compare_tables(model, a.decisions, b.decisions);
}

Decision eval_formal(const Term& term, std::span<const Decision> assignment, SetKind set) {
    if (term.is_atom()) {
        const auto& ids = term.atom_ref().ids;
        if (ids.size() != 1 || ids[0].size() < 2 || ids[0][0] != 'x')
            throw DomainError("formal terms use variables x1..xk as atoms");
        const std::size_t idx = std::stoul(ids[0].substr(1));
        if (idx == 0 || idx > assignment.size())
            throw DomainError("variable " + ids[0] + " out of range");
        return assignment[idx - 1];
    }
    std::vector<Decision> args;
    for (const auto& c : term.children()) args.push_back(eval_formal(c, assignment, set));
    const OperatorTable& table = term.table() ? *term.table() : builtin_operator(term.op(), set);
    return table.apply(args);
}

namespace {

using Signature = std::vector<Decision>;

std::vector<std::vector<Decision>> all_assignments(SetKind set, int arity) {
    const auto& ds = DecisionSet::get(set);
    std::size_t count = 1;
    for (int i = 0; i < arity; ++i) count *= ds.size();
    std::vector<std::vector<Decision>> out;
    out.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<Decision> t(static_cast<std::size_t>(arity));
        std::size_t rem = idx;
        for (int i = arity - 1; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = ds.universe()[rem % ds.size()];
            rem /= ds.size();
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace

std::optional<Term> bounded_synthesis(std::span<const std::shared_ptr<const OperatorTable>> basis,
                                      const OperatorTable& target, int max_size) {
    if (target.arity() > 2)
        throw DomainError("bounded_synthesis handles targets of arity at most 2");
    const SetKind set = target.set_kind();
    for (const auto& op : basis)
        if (!op || op->set_kind() != set)
            throw DomainError("basis operators must share the target's decision set");
    const int arity = target.arity();
    const auto assignments = all_assignments(set, arity);

    Signature goal;
    for (const auto& a : assignments) goal.push_back(target.apply(a));

    struct Entry {
        Term term;
        Signature sig;
    };
    std::vector<std::vector<Entry>> by_size(static_cast<std::size_t>(max_size) + 1);
    std::set<Signature> seen;

    auto consider = [&](int size, Term term, Signature sig) -> const Entry* {
        if (!seen.insert(sig).second) return nullptr;
        by_size[static_cast<std::size_t>(size)].push_back({std::move(term), std::move(sig)});
        return &by_size[static_cast<std::size_t>(size)].back();
    };

    auto apply_sig = [&](const OperatorTable& op, std::span<const Signature*> kids) {
        Signature out;
        out.reserve(assignments.size());
        std::vector<Decision> args(kids.size());
        for (std::size_t i = 0; i < assignments.size(); ++i) {
            for (std::size_t k = 0; k < kids.size(); ++k) args[k] = (*kids[k])[i];
            out.push_back(op.apply(args));
        }
        return out;
    };

    for (int size = 1; size <= max_size; ++size) {
        if (size == 1) {
            for (int v = 1; v <= arity; ++v) {
                Signature sig;
                for (const auto& a : assignments) sig.push_back(a[static_cast<std::size_t>(v - 1)]);
                if (const Entry* e =
                        consider(1, Term::atom(Atom{{"x" + std::to_string(v)}}), std::move(sig));
                    e && e->sig == goal)
                    return e->term;
            }
            for (const auto& op : basis) {
                if (op->arity() != 0) continue;
                Signature sig(assignments.size(), op->apply({}));
                if (const Entry* e = consider(1, Term::node(op, {}), std::move(sig));
                    e && e->sig == goal)
                    return e->term;
            }
            continue;
        }
        for (const auto& op : basis) {
            if (op->arity() == 1) {
                const auto& kids = by_size[static_cast<std::size_t>(size - 1)];
                for (std::size_t ki = 0; ki < kids.size(); ++ki) {
                    const Signature* sigs[] = {&kids[ki].sig};
                    Signature sig = apply_sig(*op, sigs);
                    if (const Entry* e =
                            consider(size, Term::node(op, {kids[ki].term}), std::move(sig));
                        e && e->sig == goal)
                        return e->term;
                }
            } else if (op->arity() == 2) {
                for (int left = 1; left <= size - 2; ++left) {
                    const auto& ls = by_size[static_cast<std::size_t>(left)];
                    const auto& rs = by_size[static_cast<std::size_t>(size - 1 - left)];
                    for (std::size_t li = 0; li < ls.size(); ++li) {
                        for (std::size_t ri = 0; ri < rs.size(); ++ri) {
                            const Signature* sigs[] = {&ls[li].sig, &rs[ri].sig};
                            Signature sig = apply_sig(*op, sigs);
                            if (const Entry* e = consider(
                                    size, Term::node(op, {ls[li].term, rs[ri].term}),
                                    std::move(sig));
                                e && e->sig == goal)
                                return e->term;
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace acpol
