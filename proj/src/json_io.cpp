#include "acpol/json_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>

namespace acpol {

namespace {

Decision decision_from_json(const json& j) {
    if (!j.is_string()) throw FormatError("decision must be a string");
    auto d = decision_from_string(j.get<std::string>());
    if (!d) throw FormatError("unknown decision '" + j.get<std::string>() + "'");
    return *d;
}

} // namespace

AttributeVocabulary vocab_from_json(const json& j) {
    if (!j.is_object() || !j.contains("attributes") || !j["attributes"].is_array())
        throw FormatError("vocabulary must be {\"attributes\": [...]}");
    std::vector<AttributeVocabulary::Entry> entries;
    for (const auto& a : j["attributes"]) {
        if (!a.is_object() || !a.contains("name") || !a.contains("values") ||
            !a["values"].is_array())
            throw FormatError("each attribute needs \"name\" and \"values\"");
        AttributeVocabulary::Entry e;
        e.first = a["name"].get<std::string>();
        for (const auto& v : a["values"]) e.second.push_back(v.get<std::string>());
        entries.push_back(std::move(e));
    }
    return AttributeVocabulary(std::move(entries));
}

AmUniverse am_universe_from_json(const json& j) {
    if (!j.is_object() || !j.contains("subjects") || !j.contains("objects") ||
        !j.contains("actions"))
        throw FormatError("AM universe needs \"subjects\", \"objects\", \"actions\"");
    AmUniverse u;
    for (const auto& s : j["subjects"]) u.subjects.push_back(s.get<std::string>());
    for (const auto& o : j["objects"]) u.objects.push_back(o.get<std::string>());
    for (const auto& x : j["actions"]) u.actions.push_back(x.get<std::string>());
    u.validate();
    return u;
}

std::vector<AttributePair> raw_pairs_from_json(const json& j) {
    if (!j.is_array()) throw FormatError("request must be an array of [name, value] pairs");
    std::vector<AttributePair> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            throw FormatError("each request entry must be a [name, value] pair");
        out.push_back({p[0].get<std::string>(), p[1].get<std::string>()});
    }
    return out;
}

Request am_request_from_json(const json& j) {
    if (!j.is_object() || !j.contains("s") || !j.contains("o") || !j.contains("x"))
        throw FormatError("AM request must be {\"s\":..., \"o\":..., \"x\":...}");
    return Request::triple(j["s"].get<std::string>(), j["o"].get<std::string>(),
                           j["x"].get<std::string>());
}

TestAtomTable test_table_from_json(const json& j) {
    if (!j.is_object() || !j.contains("requests") || !j.contains("atoms"))
        throw FormatError("test atom table needs \"requests\" and \"atoms\"");
    TestAtomTable t;
    if (j.contains("decision_set")) {
        auto k = set_kind_from_string(j["decision_set"].get<std::string>());
        if (!k) throw FormatError("unknown decision set '" +
                                  j["decision_set"].get<std::string>() + "'");
        t.decision_set = *k;
    }
    for (const auto& r : j["requests"]) t.requests.push_back(r.get<std::string>());
    for (const auto& [atom, row] : j["atoms"].items())
        for (const auto& [label, d] : row.items())
            t.atoms[atom][label] = decision_from_json(d);
    t.validate();
    return t;
}

Request request_from_json(const ModelInstance& model, const json& j) {
    if (model.name == "am") return am_request_from_json(j);
    if (model.name == "test") {
        if (!j.is_string()) throw FormatError("test-model request must be a label string");
        return Request::label(j.get<std::string>());
    }
    return Request::pairs(raw_pairs_from_json(j));
}

IdealPolicy ideal_from_json(const ModelInstance& model, const json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw FormatError("ideal policy must be {\"entries\": [...]}");
    std::vector<std::optional<Decision>> slots(model.requests.size());
    for (const auto& e : j["entries"]) {
        if (!e.is_object() || !e.contains("request") || !e.contains("decision"))
            throw FormatError("each ideal entry needs \"request\" and \"decision\"");
        Request q = request_from_json(model, e["request"]);
        auto it = std::find(model.requests.begin(), model.requests.end(), q);
        if (it == model.requests.end())
            throw FormatError("ideal entry request " + q.to_text() +
                              " is outside the model's request space");
        slots[static_cast<std::size_t>(it - model.requests.begin())] = decision_from_json(
            e["decision"]);
    }
    std::string missing;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (!slots[i]) missing += (missing.empty() ? "" : ", ") + model.requests[i].to_text();
    if (!missing.empty())
        throw FormatError("ideal policy is missing decisions for: " + missing);
    IdealPolicy ideal;
    for (const auto& s : slots) ideal.decisions.push_back(*s);
    return ideal;
}

json request_to_json(const Request& q) {
    switch (q.kind()) {
    case Request::Kind::Triple:
        return json{{"s", q.subject()}, {"o", q.object()}, {"x", q.action()}};
    case Request::Kind::Pairs: {
        json arr = json::array();
        for (const auto& p : q.pair_set()) arr.push_back(json::array({p.name, p.value}));
        return arr;
    }
    case Request::Kind::Label:
        return json(q.label_id());
    }
    return json();
}

json witness_to_json(const MonotonicityWitness& w) {
    return json{{"lower", request_to_json(w.lo)},
                {"upper", request_to_json(w.hi)},
                {"lower_decision", std::string(to_string(w.d_lo))},
                {"upper_decision", std::string(to_string(w.d_hi))}};
}

json witness_to_json(const EquivalenceWitness& w) {
    return json{{"request", request_to_json(w.request)},
                {"left", std::string(to_string(w.left))},
                {"right", std::string(to_string(w.right))}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

} // namespace acpol
