#pragma once

#include "acpol/errors.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acpol {

// Decision values. The two-valued set uses {Allow, Deny}, the three-valued
// set adds Na (inapplicable), the four-valued set adds Conflict.
enum class Decision : std::uint8_t {
    Allow = 0,
    Deny = 1,
    Na = 2,
    Conflict = 3,
};

std::string_view to_string(Decision d);

// Accepts the canonical names plus the aliases "1" (allow) and "0" (deny).
std::optional<Decision> decision_from_string(std::string_view s);

enum class SetKind : std::uint8_t { Two, Three, Four };

std::string_view to_string(SetKind k);
std::optional<SetKind> set_kind_from_string(std::string_view s);

// A finite decision universe together with its partial order.
//
//   two:   {allow, deny}, identity order
//   three: {allow, deny, na}, x <= y iff x = y or x = na
//   four:  {allow, deny, na, conflict}, x <= y iff x = na, x = y, or y = conflict
class DecisionSet {
public:
    static const DecisionSet& get(SetKind kind);

    SetKind kind() const { return kind_; }
    std::string_view name() const { return to_string(kind_); }
    std::span<const Decision> universe() const { return universe_; }
    std::size_t size() const { return universe_.size(); }

    bool contains(Decision d) const;

    // Position in the universe; throws DomainError for foreign decisions.
    std::size_t index(Decision d) const;

    // The decision order; throws DomainError for foreign decisions.
    bool leq(Decision lo, Decision hi) const;

private:
    explicit DecisionSet(SetKind kind);

    SetKind kind_;
    std::vector<Decision> universe_;
};

// A named total k-ary function on a decision set. Stored extensionally
// (one entry per argument tuple, tuples enumerated lexicographically by
// universe position) when small, or as a computed rule otherwise.
class OperatorTable {
public:
    using Rule = std::function<Decision(std::span<const Decision>)>;

    // Extensional table; entries.size() must equal |universe|^arity, and the
    // tuple count must not exceed kMaxExtensionalTuples.
    OperatorTable(std::string name, SetKind set, int arity, std::vector<Decision> entries);

    // Computed rule. `params` is opaque operator metadata used for rendering
    // parameterized operators (the realizer's n-ary selection operator).
    OperatorTable(std::string name, SetKind set, int arity, Rule rule,
                  std::vector<Decision> params = {});

    const std::string& name() const { return name_; }
    SetKind set_kind() const { return set_; }
    const DecisionSet& decision_set() const { return DecisionSet::get(set_); }
    int arity() const { return arity_; }
    bool is_extensional() const { return !entries_.empty() || arity_ == 0 || tuple_count_ == 0; }
    const std::vector<Decision>& params() const { return params_; }

    // Applies the operator; throws DomainError on arity mismatch or on an
    // argument outside the decision set.
    Decision apply(std::span<const Decision> args) const;
    Decision apply(std::initializer_list<Decision> args) const;

    // Number of tuples in universe^arity (0 if it overflows size_t).
    std::size_t tuple_count() const { return tuple_count_; }

    static constexpr std::size_t kMaxExtensionalTuples = 6561; // 3^8

private:
    std::string name_;
    SetKind set_;
    int arity_;
    std::size_t tuple_count_;
    std::vector<Decision> entries_; // extensional representation
    Rule rule_;                     // computed representation
    std::vector<Decision> params_;
};

// Looks up one of the built-in operators for a decision set.
//
//   two:   not, and, or, c1, c0
//   three: not, dbd, and, or, dov, aov, tra, una, fst, c1, c0, cna
//   four:  the three-valued names (conflict-absorbing lifts) plus
//          res_allow, res_deny, c_conflict
//
// Throws LookupError for an unknown or unsupported name.
const OperatorTable& builtin_operator(std::string_view name, SetKind set);
std::shared_ptr<const OperatorTable> builtin_operator_ptr(std::string_view name, SetKind set);
bool is_builtin_operator(std::string_view name, SetKind set);
bool is_constant_operator(std::string_view name);

// Lifts a three-valued operator to the four-valued set with conflict
// absorbing: the result is conflict whenever any argument is conflict.
OperatorTable lift_absorbing(const OperatorTable& table);

struct OperatorMonotoneResult {
    bool monotone = true;
    // First violating tuple pair, in lexicographic enumeration order over
    // (lo, hi): lo componentwise below hi but table(lo) not below table(hi).
    std::vector<Decision> lo, hi;
};

// Exhaustive monotonicity check of a table w.r.t. its set's order.
// Throws CapacityError when universe^arity exceeds the enumeration bound.
OperatorMonotoneResult operator_monotone(const OperatorTable& table);

} // namespace acpol
