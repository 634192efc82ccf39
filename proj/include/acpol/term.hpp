#pragma once

#include "acpol/decision.hpp"
#include "acpol/errors.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace acpol {

// An atomic-policy reference. The id count determines the atom kind:
//   1 id  -> test atom (opaque identifier),
//   2 ids -> ABAC atom (attribute name, value),
//   3 ids -> access-matrix atom (subject, object, action).
struct Atom {
    std::vector<std::string> ids;

    bool operator==(const Atom&) const = default;
};

// A policy tree: leaves are atoms, interior nodes are operators (0-ary
// operator nodes are the constants). Operator nodes normally carry just a
// name, resolved against the evaluating model's decision set; a node may
// instead carry its own operator table (the realizer's parameterized
// selection operator).
class Term {
public:
    static Term atom(Atom a);
    static Term node(std::string op, std::vector<Term> children = {});
    static Term node(std::shared_ptr<const OperatorTable> table, std::vector<Term> children);

    bool is_atom() const { return is_atom_; }
    const Atom& atom_ref() const;
    const std::string& op() const;
    const std::vector<Term>& children() const;
    const std::shared_ptr<const OperatorTable>& table() const { return table_; }

    bool operator==(const Term& other) const;

    std::size_t size() const; // node count

private:
    bool is_atom_ = false;
    Atom atom_;
    std::string op_;
    std::shared_ptr<const OperatorTable> table_;
    std::vector<Term> children_;
};

// The n-ary selection operator of the monotone realizer, parameterized by
// the ideal policy's decisions along the topological request order:
// pi_topo[0] is the decision at the empty request, pi_topo[i] the decision
// at the i-th request. Applied to (d_1, ..., d_n) it returns
// pi_topo[max {i : d_i = allow}], or pi_topo[0] when no argument is allow.
std::shared_ptr<const OperatorTable> oplus_operator(std::vector<Decision> pi_topo);

// Parses the prefix S-expression policy DSL:
//   term := "(" op term* ")" | "(atom" id id? id? ")"
// with op one of the built-in operator names, or "oplus" followed by n+1
// decision names and n child terms. Identifiers match [A-Za-z0-9_.-]+.
// Throws ParseError with line/column on malformed input.
Term parse(std::string_view text);

// Canonical DSL text: single spaces, lowercase operator names.
// parse(render(t)) is structurally equal to t.
std::string render(const Term& term);

} // namespace acpol
