#pragma once

#include "acpol/analysis.hpp"
#include "acpol/models.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace acpol {

using json = nlohmann::json;

// File formats (all UTF-8 JSON):
//   vocabulary:   {"attributes":[{"name":"role","values":["doc","nurse"]}]}
//   request:      [["role","doc"],["dept","cardio"]]
//   AM request:   {"s":"s1","o":"o1","x":"read"}
//   AM universe:  {"subjects":[...],"objects":[...],"actions":[...]}
//   ideal policy: {"entries":[{"request":...,"decision":"allow"},...]}
//   test atoms:   {"decision_set":"three","requests":["q"],
//                  "atoms":{"A1":{"q":"allow"}}}

AttributeVocabulary vocab_from_json(const json& j);
AmUniverse am_universe_from_json(const json& j);

// Raw attribute-pair list, not yet sanitized against a vocabulary.
std::vector<AttributePair> raw_pairs_from_json(const json& j);
Request am_request_from_json(const json& j);

TestAtomTable test_table_from_json(const json& j);

// Parses a request in the shape the model expects (pair list, AM triple,
// or test label) without sanitizing.
Request request_from_json(const ModelInstance& model, const json& j);

// The ideal policy must cover the model's request space exactly; missing
// requests are listed in the thrown FormatError.
IdealPolicy ideal_from_json(const ModelInstance& model, const json& j);

json witness_to_json(const MonotonicityWitness& w);
json witness_to_json(const EquivalenceWitness& w);
json request_to_json(const Request& q);

json load_json_file(const std::string& path);

} // namespace acpol
