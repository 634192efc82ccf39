#include "acpol/models.hpp"

#include <algorithm>
#include <memory>

namespace acpol {

void AmUniverse::validate() const {
    if (subjects.empty() || objects.empty() || actions.empty())
        throw DomainError("access-matrix universe components must be non-empty");
}

std::vector<Request> AmUniverse::all_triples() const {
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    std::vector<Request> out;
    for (const auto& s : sorted(subjects))
        for (const auto& o : sorted(objects))
            for (const auto& x : sorted(actions)) out.push_back(Request::triple(s, o, x));
    return out;
}

std::string_view to_string(AbacVariant v) {
    switch (v) {
    case AbacVariant::Abacm: return "abacm";
    case AbacVariant::Abacc: return "abacc";
    case AbacVariant::Abac4: return "abac4";
    }
    return "?";
}

std::optional<AbacVariant> abac_variant_from_string(std::string_view s) {
    if (s == "abacm") return AbacVariant::Abacm;
    if (s == "abacc") return AbacVariant::Abacc;
    if (s == "abac4") return AbacVariant::Abac4;
    return std::nullopt;
}

ModelInstance am_model(const AmUniverse& universe) {
    universe.validate();
    ModelInstance m;
    m.name = "am";
    m.decision_set = SetKind::Two;
    m.requests = universe.all_triples();
    for (const auto& r : m.requests)
        m.atoms.push_back(Atom{{r.subject(), r.object(), r.action()}});
    m.operators = {"c0", "or"};
    auto triples = std::make_shared<std::vector<Request>>(m.requests);
    m.atom_valid = [triples](const Atom& a) {
        return a.ids.size() == 3 &&
               std::find(triples->begin(), triples->end(),
                         Request::triple(a.ids[0], a.ids[1], a.ids[2])) != triples->end();
    };
    m.atom_eval = [triples, valid = m.atom_valid](const Atom& a, const Request& q) {
        if (!valid(a)) throw DomainError("unknown access-matrix atom");
        return Request::triple(a.ids[0], a.ids[1], a.ids[2]) == q ? Decision::Allow
                                                                  : Decision::Deny;
    };
    m.req_leq = [](const Request& a, const Request& b) { return a == b; };
    return m;
}

namespace {

void check_atom(const AttributeVocabulary& vocab, const AttributePair& atom) {
    if (!vocab.well_formed(atom))
        throw DomainError("ill-formed atomic policy (" + atom.name + ", " + atom.value + ")");
}

} // namespace

Decision abac_atom_three(const AttributeVocabulary& vocab, const AttributePair& atom,
                         const Request& q) {
    check_atom(vocab, atom);
    if (q.contains(atom)) return Decision::Allow;
    if (!q.has_attribute(atom.name)) return Decision::Na;
    return Decision::Deny;
}

Decision abac_atom_four(const AttributeVocabulary& vocab, const AttributePair& atom,
                        const Request& q) {
    check_atom(vocab, atom);
    bool matching = q.contains(atom);
    bool other = false;
    for (const auto& p : q.pair_set())
        if (p.name == atom.name && p.value != atom.value) other = true;
    if (matching && other) return Decision::Conflict;
    if (matching) return Decision::Allow;
    if (other) return Decision::Deny;
    return Decision::Na;
}

ModelInstance make_abac_model(const AttributeVocabulary& vocab, AbacVariant variant,
                              std::size_t bound) {
    ModelInstance m;
    m.name = std::string(to_string(variant));
    auto shared_vocab = std::make_shared<AttributeVocabulary>(vocab);
    for (const auto& p : shared_vocab->all_pairs()) m.atoms.push_back(Atom{{p.name, p.value}});
    m.atom_valid = [shared_vocab](const Atom& a) {
        return a.ids.size() == 2 && shared_vocab->well_formed({a.ids[0], a.ids[1]});
    };
    m.req_leq = request_leq;
    switch (variant) {
    case AbacVariant::Abacm:
        m.decision_set = SetKind::Three;
        m.requests = enumerate_single(vocab, bound);
        m.operators = {"and", "not", "or", "tra", "una"};
        m.atom_eval = [shared_vocab](const Atom& a, const Request& q) {
            if (a.ids.size() != 2) throw DomainError("expected an attribute atom");
            return abac_atom_three(*shared_vocab, {a.ids[0], a.ids[1]}, q);
        };
        break;
    case AbacVariant::Abacc:
        m.decision_set = SetKind::Three;
        m.requests = enumerate_multi(vocab, bound);
        m.operators = {"c0", "c1", "cna", "dbd", "not", "or"};
        m.atom_eval = [shared_vocab](const Atom& a, const Request& q) {
            if (a.ids.size() != 2) throw DomainError("expected an attribute atom");
            return abac_atom_three(*shared_vocab, {a.ids[0], a.ids[1]}, q);
        };
        break;
    case AbacVariant::Abac4:
        m.decision_set = SetKind::Four;
        m.requests = enumerate_multi(vocab, bound);
        m.operators = {"and", "not", "or", "res_allow", "res_deny", "una"};
        m.atom_eval = [shared_vocab](const Atom& a, const Request& q) {
            if (a.ids.size() != 2) throw DomainError("expected an attribute atom");
            return abac_atom_four(*shared_vocab, {a.ids[0], a.ids[1]}, q);
        };
        break;
    }
    return m;
}

Term tq_term(const Request& q) {
    const auto& pairs = q.pair_set(); // already sorted
    if (pairs.empty())
        throw DomainError("t_q is undefined for the empty request");
    Term t = Term::atom(Atom{{pairs[0].name, pairs[0].value}});
    for (std::size_t i = 1; i < pairs.size(); ++i)
        t = Term::node("and",
                       {std::move(t), Term::atom(Atom{{pairs[i].name, pairs[i].value}})});
    return t;
}

void TestAtomTable::validate() const {
    const auto& ds = DecisionSet::get(decision_set);
    for (const auto& [atom, row] : atoms) {
        for (const auto& label : requests) {
            auto it = row.find(label);
            if (it == row.end())
                throw DomainError("test atom '" + atom + "' has no decision for request '" +
                                  label + "'");
            if (!ds.contains(it->second))
                throw DomainError("test atom '" + atom + "' maps '" + label +
                                  "' outside the decision set");
        }
    }
}

ModelInstance test_model(const TestAtomTable& table) {
    table.validate();
    ModelInstance m;
    m.name = "test";
    m.decision_set = table.decision_set;
    for (const auto& label : table.requests) m.requests.push_back(Request::label(label));
    auto shared = std::make_shared<TestAtomTable>(table);
    for (const auto& [atom, row] : shared->atoms) m.atoms.push_back(Atom{{atom}});
    for (const auto& name : {"and", "aov", "c0", "c1", "cna", "dbd", "dov", "fst",
                             "not", "or", "tra", "una"})
        if (is_builtin_operator(name, m.decision_set)) m.operators.push_back(name);
    if (m.decision_set == SetKind::Four)
        for (const auto& name : {"c_conflict", "res_allow", "res_deny"})
            m.operators.push_back(name);
    std::sort(m.operators.begin(), m.operators.end());
    m.atom_valid = [shared](const Atom& a) {
        return a.ids.size() == 1 && shared->atoms.count(a.ids[0]) > 0;
    };
    m.atom_eval = [shared](const Atom& a, const Request& q) {
        if (a.ids.size() != 1) throw DomainError("expected a test atom");
        auto it = shared->atoms.find(a.ids[0]);
        if (it == shared->atoms.end()) throw DomainError("unknown test atom '" + a.ids[0] + "'");
        return it->second.at(q.label_id());
    };
    m.req_leq = [](const Request& a, const Request& b) { return a == b; };
    return m;
}

} // namespace acpol
