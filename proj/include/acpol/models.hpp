#pragma once

#include "acpol/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace acpol {

// The access-matrix universe: requests are subject-object-action triples.
struct AmUniverse {
    std::vector<std::string> subjects, objects, actions;

    void validate() const; // throws DomainError on an empty component
    std::vector<Request> all_triples() const;
};

enum class AbacVariant { Abacm, Abacc, Abac4 };

std::string_view to_string(AbacVariant v);
std::optional<AbacVariant> abac_variant_from_string(std::string_view s);

// The access matrix model: atoms are triples (plus the deny constant),
// two-valued decisions, disjunction only, identity request order.
ModelInstance am_model(const AmUniverse& universe);

// Three-valued atomic-policy semantics: allow when the pair is in the
// request, na when the request has no pair with the atom's attribute name,
// deny otherwise. Throws DomainError on an ill-formed atom.
Decision abac_atom_three(const AttributeVocabulary& vocab, const AttributePair& atom,
                         const Request& q);

// Four-valued atomic-policy semantics: conflict when the request carries
// the matching value and a different one for the same attribute.
Decision abac_atom_four(const AttributeVocabulary& vocab, const AttributePair& atom,
                        const Request& q);

//   abacm: single-valued requests, three-valued, {not, and, or, una, tra}
//   abacc: multi-valued requests, three-valued, {not, dbd, or} + constants
//   abac4: multi-valued requests, four-valued lifted {not, and, or, una}
//          plus the conflict-resolution operators {res_allow, res_deny}
ModelInstance make_abac_model(const AttributeVocabulary& vocab, AbacVariant variant,
                              std::size_t bound = kDefaultEnumerationBound);

// The conjunction t_q over a non-empty pair-set request: a left-nested
// and-chain in lexicographic pair order; evaluates to allow exactly on the
// supersets of q (and to na on the empty request).
Term tq_term(const Request& q);

// Test-atom model: abstract atoms with extensionally tabulated semantics
// over labeled requests; used to reproduce policies whose atoms are
// abstract placeholders.
struct TestAtomTable {
    SetKind decision_set = SetKind::Three;
    std::vector<std::string> requests;                                // labels, in order
    std::map<std::string, std::map<std::string, Decision>> atoms;     // atom -> label -> decision

    void validate() const; // totality over atoms x requests
};

ModelInstance test_model(const TestAtomTable& table);

} // namespace acpol
