#include "acpol/model.hpp"

#include <algorithm>

namespace acpol {

bool ModelInstance::allows_operator(std::string_view op) const {
    return std::find(operators.begin(), operators.end(), op) != operators.end();
}

bool ModelInstance::in_request_space(const Request& q) const {
    return std::find(requests.begin(), requests.end(), q) != requests.end();
}

namespace {

void validate_into(const ModelInstance& model, const Term& term,
                   std::vector<Diagnostic>& out) {
    if (term.is_atom()) {
        if (!model.atom_valid || !model.atom_valid(term.atom_ref())) {
            std::string ids;
            for (const auto& id : term.atom_ref().ids) ids += (ids.empty() ? "" : " ") + id;
            out.push_back({"unknown atom (" + ids + ") for model " + model.name});
        }
        return;
    }
    const OperatorTable* table = term.table().get();
    if (table) {
        if (table->set_kind() != model.decision_set)
            out.push_back({"operator " + term.op() + " is over the " +
                           std::string(to_string(table->set_kind())) +
                           "-valued set, model uses " +
                           std::string(to_string(model.decision_set))});
    } else if (!model.allows_operator(term.op()) &&
               !(is_constant_operator(term.op()) &&
                 is_builtin_operator(term.op(), model.decision_set))) {
        out.push_back({"operator " + term.op() + " not in model " + model.name});
    } else if (!is_builtin_operator(term.op(), model.decision_set)) {
        out.push_back({"operator " + term.op() + " undefined for the " +
                       std::string(to_string(model.decision_set)) + "-valued set"});
    } else {
        table = &builtin_operator(term.op(), model.decision_set);
    }
    if (table && table->arity() != static_cast<int>(term.children().size()))
        out.push_back({"arity mismatch: operator " + term.op() + " expects " +
                       std::to_string(table->arity()) + " children, got " +
                       std::to_string(term.children().size())});
    for (const auto& c : term.children()) validate_into(model, c, out);
}

Decision eval_rec(const ModelInstance& model, const Term& term, const Request& q) {
    if (term.is_atom()) return model.atom_eval(term.atom_ref(), q);
    std::vector<Decision> args;
    args.reserve(term.children().size());
    for (const auto& c : term.children()) args.push_back(eval_rec(model, c, q));
    const OperatorTable& table =
        term.table() ? *term.table() : builtin_operator(term.op(), model.decision_set);
    return table.apply(args);
}

} // namespace

std::vector<Diagnostic> validate(const ModelInstance& model, const Term& term) {
    std::vector<Diagnostic> out;
    validate_into(model, term, out);
    return out;
}

Decision evaluate(const ModelInstance& model, const Term& term, const Request& request) {
    auto diagnostics = validate(model, term);
    if (!diagnostics.empty())
        throw ValidationError("invalid term: " + diagnostics.front().message);
    if (!model.in_request_space(request))
        throw ValidationError("request " + request.to_text() + " outside the request space of " +
                              model.name);
    return eval_rec(model, term, request);
}

} // namespace acpol
