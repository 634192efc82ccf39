#include "acpol/decision.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace acpol {

namespace {

constexpr Decision A = Decision::Allow;
constexpr Decision D = Decision::Deny;
constexpr Decision N = Decision::Na;

std::string describe(Decision d) { return std::string(to_string(d)); }

} // namespace

std::string_view to_string(Decision d) {
    switch (d) {
    case Decision::Allow: return "allow";
    case Decision::Deny: return "deny";
    case Decision::Na: return "na";
    case Decision::Conflict: return "conflict";
    }
    return "?";
}

std::optional<Decision> decision_from_string(std::string_view s) {
    if (s == "allow" || s == "1") return Decision::Allow;
    if (s == "deny" || s == "0") return Decision::Deny;
    if (s == "na") return Decision::Na;
    if (s == "conflict") return Decision::Conflict;
    return std::nullopt;
}

std::string_view to_string(SetKind k) {
    switch (k) {
    case SetKind::Two: return "two";
    case SetKind::Three: return "three";
    case SetKind::Four: return "four";
    }
    return "?";
}

std::optional<SetKind> set_kind_from_string(std::string_view s) {
    if (s == "two") return SetKind::Two;
    if (s == "three") return SetKind::Three;
    if (s == "four") return SetKind::Four;
    return std::nullopt;
}

DecisionSet::DecisionSet(SetKind kind) : kind_(kind) {
    switch (kind) {
    case SetKind::Two: universe_ = {A, D}; break;
    case SetKind::Three: universe_ = {A, D, N}; break;
    case SetKind::Four: universe_ = {A, D, N, Decision::Conflict}; break;
    }
}

const DecisionSet& DecisionSet::get(SetKind kind) {
    static const DecisionSet two(SetKind::Two);
    static const DecisionSet three(SetKind::Three);
    static const DecisionSet four(SetKind::Four);
    switch (kind) {
    case SetKind::Two: return two;
    case SetKind::Three: return three;
    case SetKind::Four: return four;
    }
    return three;
}

bool DecisionSet::contains(Decision d) const {
    return std::find(universe_.begin(), universe_.end(), d) != universe_.end();
}

std::size_t DecisionSet::index(Decision d) const {
    auto it = std::find(universe_.begin(), universe_.end(), d);
    if (it == universe_.end())
        throw DomainError("decision " + describe(d) + " not in decision set " +
                          std::string(name()));
    return static_cast<std::size_t>(it - universe_.begin());
}

bool DecisionSet::leq(Decision lo, Decision hi) const {
    index(lo);
    index(hi);
    switch (kind_) {
    case SetKind::Two:
        return lo == hi;
    case SetKind::Three:
        return lo == hi || lo == Decision::Na;
    case SetKind::Four:
        return lo == Decision::Na || lo == hi || hi == Decision::Conflict;
    }
    return false;
}

namespace {

std::size_t pow_size(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<std::size_t>::max() / base) return 0;
        r *= base;
    }
    return r;
}

} // namespace

OperatorTable::OperatorTable(std::string name, SetKind set, int arity,
                             std::vector<Decision> entries)
    : name_(std::move(name)), set_(set), arity_(arity),
      tuple_count_(pow_size(DecisionSet::get(set).size(), arity)),
      entries_(std::move(entries)) {
    if (arity_ < 0) throw DomainError("operator arity must be non-negative");
    if (tuple_count_ == 0 || tuple_count_ > kMaxExtensionalTuples)
        throw CapacityError("extensional operator table for '" + name_ +
                            "' exceeds the " + std::to_string(kMaxExtensionalTuples) +
                            "-tuple bound");
    if (entries_.size() != tuple_count_)
        throw DomainError("operator '" + name_ + "' table has " +
                          std::to_string(entries_.size()) + " entries, expected " +
                          std::to_string(tuple_count_));
    const auto& ds = decision_set();
    for (Decision d : entries_) ds.index(d);
}

OperatorTable::OperatorTable(std::string name, SetKind set, int arity, Rule rule,
                             std::vector<Decision> params)
    : name_(std::move(name)), set_(set), arity_(arity),
      tuple_count_(pow_size(DecisionSet::get(set).size(), arity)),
      rule_(std::move(rule)), params_(std::move(params)) {
    if (arity_ < 0) throw DomainError("operator arity must be non-negative");
    if (!rule_) throw DomainError("computed operator '" + name_ + "' has no rule");
}

Decision OperatorTable::apply(std::span<const Decision> args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw DomainError("operator '" + name_ + "' expects " + std::to_string(arity_) +
                          " arguments, got " + std::to_string(args.size()));
    const auto& ds = decision_set();
    std::size_t idx = 0;
    for (Decision d : args) idx = idx * ds.size() + ds.index(d);
    if (!entries_.empty()) return entries_[idx];
    Decision out = rule_(args);
    ds.index(out); // rule must stay inside the universe
    return out;
}

Decision OperatorTable::apply(std::initializer_list<Decision> args) const {
    return apply(std::span<const Decision>(args.begin(), args.size()));
}

namespace {

// Table 1, rows in the order (1,1),(1,0),(1,na),(0,1),(0,0),(0,na),
// (na,1),(na,0),(na,na); this matches lexicographic enumeration over the
// universe order [allow, deny, na].
const std::vector<Decision> kNot = {D, A, N};
const std::vector<Decision> kDbd = {A, D, D};
const std::vector<Decision> kAnd = {A, D, N, D, D, D, N, D, N};
const std::vector<Decision> kDov = {A, D, A, D, D, D, A, D, N};
const std::vector<Decision> kOr  = {A, A, A, A, D, N, A, N, N};
const std::vector<Decision> kAov = {A, A, A, A, D, D, A, D, N};
const std::vector<Decision> kTra = {A, D, N, N, N, N, N, N, N};
const std::vector<Decision> kUna = {A, N, N, N, D, N, N, N, N};
const std::vector<Decision> kFst = {A, A, A, D, D, D, A, D, N};

using TablePtr = std::shared_ptr<const OperatorTable>;

TablePtr make(std::string name, SetKind set, int arity, std::vector<Decision> entries) {
    return std::make_shared<OperatorTable>(std::move(name), set, arity, std::move(entries));
}

std::map<std::string, TablePtr, std::less<>> build_three() {
    std::map<std::string, TablePtr, std::less<>> m;
    m["not"] = make("not", SetKind::Three, 1, kNot);
    m["dbd"] = make("dbd", SetKind::Three, 1, kDbd);
    m["and"] = make("and", SetKind::Three, 2, kAnd);
    m["dov"] = make("dov", SetKind::Three, 2, kDov);
    m["or"] = make("or", SetKind::Three, 2, kOr);
    m["aov"] = make("aov", SetKind::Three, 2, kAov);
    m["tra"] = make("tra", SetKind::Three, 2, kTra);
    m["una"] = make("una", SetKind::Three, 2, kUna);
    m["fst"] = make("fst", SetKind::Three, 2, kFst);
    m["c1"] = make("c1", SetKind::Three, 0, {A});
    m["c0"] = make("c0", SetKind::Three, 0, {D});
    m["cna"] = make("cna", SetKind::Three, 0, {N});
    return m;
}

std::map<std::string, TablePtr, std::less<>> build_two() {
    std::map<std::string, TablePtr, std::less<>> m;
    m["not"] = make("not", SetKind::Two, 1, {D, A});
    m["and"] = make("and", SetKind::Two, 2, {A, D, D, D});
    m["or"] = make("or", SetKind::Two, 2, {A, A, A, D});
    m["c1"] = make("c1", SetKind::Two, 0, {A});
    m["c0"] = make("c0", SetKind::Two, 0, {D});
    return m;
}

std::map<std::string, TablePtr, std::less<>> build_four() {
    std::map<std::string, TablePtr, std::less<>> m;
    for (const auto& [name, table] : build_three())
        m[name] = std::make_shared<OperatorTable>(lift_absorbing(*table));
    m["res_allow"] = make("res_allow", SetKind::Four, 1, {A, D, N, A});
    m["res_deny"] = make("res_deny", SetKind::Four, 1, {A, D, N, D});
    m["c_conflict"] = make("c_conflict", SetKind::Four, 0, {Decision::Conflict});
    return m;
}

const std::map<std::string, TablePtr, std::less<>>& registry(SetKind set) {
    static const auto two = build_two();
    static const auto three = build_three();
    static const auto four = build_four();
    switch (set) {
    case SetKind::Two: return two;
    case SetKind::Three: return three;
    case SetKind::Four: return four;
    }
    return three;
}

} // namespace

std::shared_ptr<const OperatorTable> builtin_operator_ptr(std::string_view name, SetKind set) {
    const auto& reg = registry(set);
    auto it = reg.find(name);
    if (it == reg.end())
        throw LookupError("unknown operator '" + std::string(name) + "' for the " +
                          std::string(to_string(set)) + "-valued decision set");
    return it->second;
}

const OperatorTable& builtin_operator(std::string_view name, SetKind set) {
    return *builtin_operator_ptr(name, set);
}

bool is_builtin_operator(std::string_view name, SetKind set) {
    return registry(set).count(name) > 0;
}

bool is_constant_operator(std::string_view name) {
    return name == "c1" || name == "c0" || name == "cna" || name == "c_conflict";
}

OperatorTable lift_absorbing(const OperatorTable& table) {
    if (table.set_kind() != SetKind::Three)
        throw DomainError("lift_absorbing expects a three-valued operator, got '" +
                          table.name() + "' over " + std::string(to_string(table.set_kind())));
    const auto& four = DecisionSet::get(SetKind::Four);
    const int arity = table.arity();
    std::size_t count = 1;
    for (int i = 0; i < arity; ++i) count *= four.size();
    std::vector<Decision> entries(count);
    std::vector<Decision> args(static_cast<std::size_t>(arity), Decision::Allow);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx;
        bool has_conflict = false;
        for (int i = arity - 1; i >= 0; --i) {
            args[static_cast<std::size_t>(i)] = four.universe()[rem % four.size()];
            rem /= four.size();
            if (args[static_cast<std::size_t>(i)] == Decision::Conflict) has_conflict = true;
        }
        entries[idx] = has_conflict ? Decision::Conflict : table.apply(args);
    }
    return OperatorTable(table.name(), SetKind::Four, arity, std::move(entries));
}

OperatorMonotoneResult operator_monotone(const OperatorTable& table) {
    const auto& ds = table.decision_set();
    const std::size_t count = table.tuple_count();
    if (count == 0 || count > OperatorTable::kMaxExtensionalTuples)
        throw CapacityError("operator '" + table.name() +
                            "' is too large for exhaustive monotonicity checking");
    const int arity = table.arity();
    auto tuple_at = [&](std::size_t idx) {
        std::vector<Decision> t(static_cast<std::size_t>(arity));
        for (int i = arity - 1; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = ds.universe()[idx % ds.size()];
            idx /= ds.size();
        }
        return t;
    };
    std::vector<Decision> results(count);
    for (std::size_t i = 0; i < count; ++i) results[i] = table.apply(tuple_at(i));
    for (std::size_t i = 0; i < count; ++i) {
        auto lo = tuple_at(i);
        for (std::size_t j = 0; j < count; ++j) {
            auto hi = tuple_at(j);
            bool comparable = true;
            for (int k = 0; k < arity && comparable; ++k)
                comparable = ds.leq(lo[static_cast<std::size_t>(k)], hi[static_cast<std::size_t>(k)]);
            if (!comparable) continue;
            if (!ds.leq(results[i], results[j]))
                return {false, std::move(lo), std::move(hi)};
        }
    }
    return {};
}

} // namespace acpol
