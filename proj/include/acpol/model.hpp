#pragma once

#include "acpol/decision.hpp"
#include "acpol/term.hpp"
#include "acpol/vocab.hpp"

#include <functional>
#include <string>
#include <vector>

namespace acpol {

// A concrete access control model: a request space, atomic-policy
// semantics, the permitted operators, and a decision set with its order.
// Immutable after construction.
struct ModelInstance {
    std::string name;
    SetKind decision_set = SetKind::Three;
    std::vector<Request> requests;         // enumeration order
    std::vector<Atom> atoms;               // all atomic policies, sorted
    std::vector<std::string> operators;    // permitted operator names, sorted

    // Total on atoms x requests; throws DomainError on an unknown atom.
    std::function<Decision(const Atom&, const Request&)> atom_eval;
    std::function<bool(const Atom&)> atom_valid;
    std::function<bool(const Request&, const Request&)> req_leq;

    bool allows_operator(std::string_view op) const;
    bool in_request_space(const Request& q) const;
};

struct Diagnostic {
    std::string message;
};

// Checks operator arities, operator membership in the model's permitted
// set, and atom validity. Empty result means the term is in the model's
// language. Constants (0-ary builtins of the model's decision set) are
// always permitted, as is a node carrying its own operator table over the
// model's decision set.
std::vector<Diagnostic> validate(const ModelInstance& model, const Term& term);

// Bottom-up evaluation: leaves via atom semantics, interior nodes by
// applying the operator to the child decisions. Total on valid input;
// throws ValidationError on an invalid term or foreign request.
Decision evaluate(const ModelInstance& model, const Term& term, const Request& request);

} // namespace acpol
