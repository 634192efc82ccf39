#pragma once

#include "acpol/errors.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acpol {

struct AttributePair {
    std::string name;
    std::string value;

    auto operator<=>(const AttributePair&) const = default;
};

// Finite attribute names, each with a finite non-empty value domain.
class AttributeVocabulary {
public:
    using Entry = std::pair<std::string, std::vector<std::string>>;

    AttributeVocabulary() = default;
    explicit AttributeVocabulary(std::vector<Entry> attributes);

    const std::vector<Entry>& attributes() const { return attributes_; }

    // Domain of an attribute, or nullptr for an unknown name.
    const std::vector<std::string>* domain(std::string_view name) const;

    bool well_formed(const AttributePair& pair) const;

    // All well-formed pairs, lexicographically sorted.
    std::vector<AttributePair> all_pairs() const;

    std::size_t pair_count() const;

private:
    std::vector<Entry> attributes_; // sorted by name, values sorted
};

// A request: an access-matrix triple, a set of attribute name-value pairs,
// or an opaque label (used by test-atom models).
class Request {
public:
    enum class Kind { Triple, Pairs, Label };

    static Request triple(std::string subject, std::string object, std::string action);
    static Request pairs(std::vector<AttributePair> pairs); // sorts and dedups
    static Request label(std::string id);

    Kind kind() const { return kind_; }
    const std::vector<AttributePair>& pair_set() const;
    const std::string& subject() const;
    const std::string& object() const;
    const std::string& action() const;
    const std::string& label_id() const;

    bool contains(const AttributePair& p) const;
    bool has_attribute(std::string_view name) const;
    bool subset_of(const Request& other) const; // Pairs only

    bool operator==(const Request&) const = default;

    std::string to_text() const; // canonical JSON rendering

private:
    Kind kind_ = Kind::Pairs;
    std::vector<std::string> triple_;
    std::vector<AttributePair> pairs_;
    std::string label_;
};

// Size-major, then lexicographic; the canonical enumeration order.
bool size_lex_less(const Request& a, const Request& b);

inline constexpr std::size_t kDefaultEnumerationBound = std::size_t{1} << 20;

// Keeps the well-formed pairs of `raw`, discarding the rest; set semantics.
Request sanitize(const AttributeVocabulary& vocab, std::span<const AttributePair> raw);

// All subsets of the vocabulary's well-formed pairs (the multi-valued
// request space Q*), in size-then-lexicographic order.
std::vector<Request> enumerate_multi(const AttributeVocabulary& vocab,
                                     std::size_t bound = kDefaultEnumerationBound);

// All requests with at most one value per attribute (the single-valued
// request space Q1), in size-then-lexicographic order.
std::vector<Request> enumerate_single(const AttributeVocabulary& vocab,
                                      std::size_t bound = kDefaultEnumerationBound);

// Subset inclusion on pair-set requests; throws DomainError on other kinds.
bool request_leq(const Request& a, const Request& b);

// A linear extension of subset inclusion: for all i <= j, requests[j] is not
// below requests[i]; the empty request comes first. Deterministic
// (size-then-lexicographic). Throws DomainError when the empty request is
// missing from a non-empty input.
std::vector<Request> topo_order(std::vector<Request> requests);

} // namespace acpol
