#include "acpol/vocab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace acpol {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace

AttributeVocabulary::AttributeVocabulary(std::vector<Entry> attributes)
    : attributes_(std::move(attributes)) {
    std::sort(attributes_.begin(), attributes_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < attributes_.size(); ++i)
        if (attributes_[i].first == attributes_[i - 1].first)
            throw DomainError("duplicate attribute name '" + attributes_[i].first + "'");
    for (auto& [name, values] : attributes_) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.empty())
            throw DomainError("attribute '" + name + "' has an empty domain");
    }
}

const std::vector<std::string>* AttributeVocabulary::domain(std::string_view name) const {
    for (const auto& [n, values] : attributes_)
        if (n == name) return &values;
    return nullptr;
}

bool AttributeVocabulary::well_formed(const AttributePair& pair) const {
    const auto* dom = domain(pair.name);
    return dom && std::find(dom->begin(), dom->end(), pair.value) != dom->end();
}

std::vector<AttributePair> AttributeVocabulary::all_pairs() const {
    std::vector<AttributePair> out;
    for (const auto& [name, values] : attributes_)
        for (const auto& v : values) out.push_back({name, v});
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t AttributeVocabulary::pair_count() const {
    std::size_t n = 0;
    for (const auto& [name, values] : attributes_) n += values.size();
    return n;
}

Request Request::triple(std::string subject, std::string object, std::string action) {
    Request r;
    r.kind_ = Kind::Triple;
    r.triple_ = {std::move(subject), std::move(object), std::move(action)};
    return r;
}

Request Request::pairs(std::vector<AttributePair> pairs) {
    Request r;
    r.kind_ = Kind::Pairs;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    r.pairs_ = std::move(pairs);
    return r;
}

Request Request::label(std::string id) {
    Request r;
    r.kind_ = Kind::Label;
    r.label_ = std::move(id);
    return r;
}

const std::vector<AttributePair>& Request::pair_set() const {
    if (kind_ != Kind::Pairs) throw DomainError("request is not a pair set");
    return pairs_;
}

const std::string& Request::subject() const {
    if (kind_ != Kind::Triple) throw DomainError("request is not a triple");
    return triple_[0];
}

const std::string& Request::object() const {
    if (kind_ != Kind::Triple) throw DomainError("request is not a triple");
    return triple_[1];
}

const std::string& Request::action() const {
    if (kind_ != Kind::Triple) throw DomainError("request is not a triple");
    return triple_[2];
}

const std::string& Request::label_id() const {
    if (kind_ != Kind::Label) throw DomainError("request is not a label");
    return label_;
}

bool Request::contains(const AttributePair& p) const {
    const auto& ps = pair_set();
    return std::binary_search(ps.begin(), ps.end(), p);
}

bool Request::has_attribute(std::string_view name) const {
    for (const auto& p : pair_set())
        if (p.name == name) return true;
    return false;
}

bool Request::subset_of(const Request& other) const {
    const auto& a = pair_set();
    const auto& b = other.pair_set();
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string Request::to_text() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::Triple:
        os << "{\"s\":" << quote(triple_[0]) << ",\"o\":" << quote(triple_[1])
           << ",\"x\":" << quote(triple_[2]) << "}";
        break;
    case Kind::Pairs: {
        os << "[";
        bool first = true;
        for (const auto& p : pairs_) {
            if (!first) os << ",";
            first = false;
            os << "[" << quote(p.name) << "," << quote(p.value) << "]";
        }
        os << "]";
        break;
    }
    case Kind::Label:
        os << quote(label_);
        break;
    }
    return os.str();
}

bool size_lex_less(const Request& a, const Request& b) {
    if (a.kind() != b.kind()) throw DomainError("cannot order requests of different kinds");
    if (a.kind() == Request::Kind::Pairs) {
        if (a.pair_set().size() != b.pair_set().size())
            return a.pair_set().size() < b.pair_set().size();
        return a.pair_set() < b.pair_set();
    }
    return a.to_text() < b.to_text();
}

Request sanitize(const AttributeVocabulary& vocab, std::span<const AttributePair> raw) {
    std::vector<AttributePair> kept;
    for (const auto& p : raw)
        if (vocab.well_formed(p)) kept.push_back(p);
    return Request::pairs(std::move(kept));
}

std::vector<Request> enumerate_multi(const AttributeVocabulary& vocab, std::size_t bound) {
    const auto pairs = vocab.all_pairs();
    const std::size_t n = pairs.size();
    if (n >= 8 * sizeof(std::size_t) || (std::size_t{1} << n) > bound)
        throw CapacityError("request space 2^" + std::to_string(n) +
                            " exceeds the enumeration bound of " + std::to_string(bound) +
                            " requests");
    std::vector<Request> out;
    out.reserve(std::size_t{1} << n);
    // Subsets by size, combinations in lexicographic index order.
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k <= n; ++k) {
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<AttributePair> subset;
            subset.reserve(k);
            for (std::size_t i : idx) subset.push_back(pairs[i]);
            out.push_back(Request::pairs(std::move(subset)));
            // next combination
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (k == n) break;
    }
    return out;
}

std::vector<Request> enumerate_single(const AttributeVocabulary& vocab, std::size_t bound) {
    std::size_t total = 1;
    for (const auto& [name, values] : vocab.attributes()) {
        const std::size_t factor = values.size() + 1;
        if (total > bound / factor)
            throw CapacityError("single-valued request space exceeds the enumeration bound of " +
                                std::to_string(bound) + " requests");
        total *= factor;
    }
    std::vector<Request> out;
    out.reserve(total);
    std::vector<AttributePair> current;
    auto recurse = [&](auto&& self, std::size_t attr_index) -> void {
        if (attr_index == vocab.attributes().size()) {
            out.push_back(Request::pairs(current));
            return;
        }
        const auto& [name, values] = vocab.attributes()[attr_index];
        self(self, attr_index + 1); // attribute absent
        for (const auto& v : values) {
            current.push_back({name, v});
            self(self, attr_index + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    std::sort(out.begin(), out.end(), size_lex_less);
    return out;
}

bool request_leq(const Request& a, const Request& b) {
    if (a.kind() != Request::Kind::Pairs || b.kind() != Request::Kind::Pairs)
        throw DomainError("request_leq expects pair-set requests");
    return a.subset_of(b);
}

std::vector<Request> topo_order(std::vector<Request> requests) {
    if (requests.empty()) return requests;
    std::sort(requests.begin(), requests.end(), size_lex_less);
    requests.erase(std::unique(requests.begin(), requests.end()), requests.end());
    if (requests.front().kind() == Request::Kind::Pairs &&
        !requests.front().pair_set().empty())
        throw DomainError("topo_order requires the empty request");
    return requests;
}

} // namespace acpol
