#pragma once

#include "acpol/model.hpp"
#include "acpol/models.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace acpol {

// An explicit total map from the enumerated request space to decisions;
// decisions[i] belongs to requests[i] of the owning model.
struct IdealPolicy {
    std::vector<Decision> decisions;
};

struct MonotonicityWitness {
    Request lo, hi;
    Decision d_lo, d_hi;
};

struct MonotonicityReport {
    bool monotone = true;
    std::optional<MonotonicityWitness> witness;
};

struct EquivalenceWitness {
    Request request;
    Decision left, right;
};

// Thrown by realize_monotone when the ideal policy is not monotone.
struct NonMonotoneError : DomainError {
    NonMonotoneError(std::string msg, MonotonicityWitness w)
        : DomainError(std::move(msg)), witness(std::move(w)) {}
    MonotonicityWitness witness;
};

// Exhaustive monotonicity check of a term over all comparable request
// pairs; the first violation in enumeration order is reported.
MonotonicityReport check_monotone_policy(const ModelInstance& model, const Term& term);

// Same check applied to an extensional ideal policy.
MonotonicityReport is_ideal_monotone(const ModelInstance& model, const IdealPolicy& ideal);

// Deterministic pseudo-random valid term over the model's operators,
// atoms, and constants; at most max_size nodes.
Term random_term(const ModelInstance& model, std::uint64_t seed, int max_size);

// Deterministic pseudo-random ideal policy over the model's request space.
IdealPolicy random_ideal(const ModelInstance& model, std::uint64_t seed);

// Deterministic pseudo-random monotone ideal: random draws repaired to na
// wherever they disagree with an already-fixed conclusive upper bound
// (processed top-down along the request order), then verified.
IdealPolicy random_monotone_ideal(const ModelInstance& model, std::uint64_t seed);

// Tabulates a term's semantics over the model's request space.
IdealPolicy tabulate(const ModelInstance& model, const Term& term);

// Access-matrix realizer: the disjunction of the allowed triples (or the
// deny constant). Throws DomainError when the ideal uses a decision
// outside {allow, deny}.
Term realize_am(const AmUniverse& universe, const IdealPolicy& ideal);

// Monotone realizer over the single-valued request space: the n-ary
// selection operator applied to the per-request conjunctions t_q. Throws
// NonMonotoneError (carrying the witness) for a non-monotone ideal.
Term realize_monotone(const AttributeVocabulary& vocab, const IdealPolicy& ideal,
                      std::size_t bound = kDefaultEnumerationBound);

// Wraps a term X into a {not, dbd, or}-only guard that evaluates to allow
// when X evaluates to d and to deny otherwise.
Term delta_guard(Decision d, Term inner);

// Complete compiler over the multi-valued request space: exact-match
// guards per request combined by disjunction, using only atoms, constants,
// and {not, dbd, or}.
Term compile_complete(const AttributeVocabulary& vocab, const IdealPolicy& ideal,
                      std::size_t bound = kDefaultEnumerationBound);

// Exhaustive equivalence over the model's request space; nullopt means
// equivalent, otherwise the first differing request is returned.
std::optional<EquivalenceWitness> equivalent(const ModelInstance& model, const Term& a,
                                             const Term& b);
std::optional<EquivalenceWitness> equivalent(const ModelInstance& model, const Term& a,
                                             const IdealPolicy& b);
std::optional<EquivalenceWitness> equivalent(const ModelInstance& model, const IdealPolicy& a,
                                             const IdealPolicy& b);

// Iterative-deepening enumeration of terms over formal variables x1..xk
// (k = target arity) built from the basis operators; returns the first
// term whose induced truth table equals the target, or nullopt.
std::optional<Term> bounded_synthesis(std::span<const std::shared_ptr<const OperatorTable>> basis,
                                      const OperatorTable& target, int max_size);

// Evaluates a term over formal variables under an assignment; used by
// bounded_synthesis and by its callers to re-check results.
Decision eval_formal(const Term& term, std::span<const Decision> assignment, SetKind set);

} // namespace acpol
