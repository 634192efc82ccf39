// acpol: evaluate, analyze, and synthesize access control policies over
// multi-valued decision sets.
//
// Exit codes: 0 success (or monotone/equivalent), 1 analysis-negative
// (violation, witness, rejected ideal), 2 usage or input error.

#include "acpol/analysis.hpp"
#include "acpol/json_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace acpol;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

struct ModelOptions {
    std::string model;
    std::string vocab_path;
    std::string am_path;
    std::string atoms_path;
};

void add_model_options(CLI::App* cmd, ModelOptions& opts, bool need_model = true) {
    auto* m = cmd->add_option("--model", opts.model, "model: am, abacm, abacc, abac4, test");
    if (need_model) m->required();
    cmd->add_option("--vocab", opts.vocab_path, "attribute vocabulary JSON file");
    cmd->add_option("--am", opts.am_path, "access-matrix universe JSON file");
    cmd->add_option("--atoms", opts.atoms_path, "test-atom table JSON file");
}

ModelInstance build_model(const ModelOptions& opts) {
    if (opts.model == "am") {
        if (opts.am_path.empty()) throw FormatError("--am is required for model am");
        return am_model(am_universe_from_json(load_json_file(opts.am_path)));
    }
    if (opts.model == "test") {
        if (opts.atoms_path.empty()) throw FormatError("--atoms is required for model test");
        return test_model(test_table_from_json(load_json_file(opts.atoms_path)));
    }
    auto variant = abac_variant_from_string(opts.model);
    if (!variant) throw FormatError("unknown model '" + opts.model + "'");
    if (opts.vocab_path.empty())
        throw FormatError("--vocab is required for model " + opts.model);
    return make_abac_model(vocab_from_json(load_json_file(opts.vocab_path)), *variant);
}

AttributeVocabulary load_vocab(const ModelOptions& opts) {
    if (opts.vocab_path.empty()) throw FormatError("--vocab is required");
    return vocab_from_json(load_json_file(opts.vocab_path));
}

Term load_policy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str());
}

Request load_request(const ModelInstance& model, const std::string& path) {
    Request q = request_from_json(model, load_json_file(path));
    // Ill-formed pairs are discarded at the boundary.
    if (model.name == "abacm" || model.name == "abacc" || model.name == "abac4") {
        // Re-derive the vocabulary from the model's atoms.
        std::vector<AttributePair> kept;
        for (const auto& p : q.pair_set())
            if (model.atom_valid(Atom{{p.name, p.value}})) kept.push_back(p);
        q = Request::pairs(std::move(kept));
    }
    return q;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write file '" + path + "'");
    out << content;
}

int cmd_eval(const ModelOptions& opts, const std::string& policy_path,
             const std::string& request_path) {
    ModelInstance model = build_model(opts);
    Term term = load_policy(policy_path);
    Request q = load_request(model, request_path);
    std::cout << to_string(evaluate(model, term, q)) << "\n";
    return kOk;
}

int cmd_check_monotonic(const ModelOptions& opts, const std::string& policy_path) {
    ModelInstance model = build_model(opts);
    Term term = load_policy(policy_path);
    auto report = check_monotone_policy(model, term);
    if (report.monotone) {
        std::cout << "monotone\n";
        return kOk;
    }
    std::cout << "violated " << witness_to_json(*report.witness).dump() << "\n";
    return kNegative;
}

int cmd_realize(const ModelOptions& opts, const std::string& ideal_path,
                const std::string& out_path) {
    if (opts.model == "am") {
        if (opts.am_path.empty()) throw FormatError("--am is required for model am");
        AmUniverse universe = am_universe_from_json(load_json_file(opts.am_path));
        ModelInstance model = am_model(universe);
        IdealPolicy ideal = ideal_from_json(model, load_json_file(ideal_path));
        Term term = realize_am(universe, ideal);
        if (auto w = equivalent(model, term, ideal))
            throw std::logic_error("self-verification failed: " + witness_to_json(*w).dump());
        write_file(out_path, render(term) + "\n");
        return kOk;
    }
    if (opts.model != "abacm")
        throw FormatError("realize supports models am and abacm");
    AttributeVocabulary vocab = load_vocab(opts);
    ModelInstance model = make_abac_model(vocab, AbacVariant::Abacm);
    IdealPolicy ideal = ideal_from_json(model, load_json_file(ideal_path));
    try {
        Term term = realize_monotone(vocab, ideal);
        if (auto w = equivalent(model, term, ideal))
            throw std::logic_error("self-verification failed: " + witness_to_json(*w).dump());
        write_file(out_path, render(term) + "\n");
        return kOk;
    } catch (const NonMonotoneError& e) {
        std::cout << "rejected " << witness_to_json(e.witness).dump() << "\n";
        return kNegative;
    }
}

int cmd_compile(const ModelOptions& opts, const std::string& ideal_path,
                const std::string& out_path) {
    if (!opts.model.empty() && opts.model != "abacc")
        throw FormatError("compile targets model abacc");
    AttributeVocabulary vocab = load_vocab(opts);
    ModelInstance model = make_abac_model(vocab, AbacVariant::Abacc);
    IdealPolicy ideal = ideal_from_json(model, load_json_file(ideal_path));
    Term term = compile_complete(vocab, ideal);
    if (auto w = equivalent(model, term, ideal))
        throw std::logic_error("self-verification failed: " + witness_to_json(*w).dump());
    write_file(out_path, render(term) + "\n");
    return kOk;
}

int cmd_equiv(const ModelOptions& opts, const std::string& left_path,
              const std::string& right_path) {
    ModelInstance model = build_model(opts);
    Term left = load_policy(left_path);
    Term right = load_policy(right_path);
    if (auto w = equivalent(model, left, right)) {
        std::cout << "witness " << witness_to_json(*w).dump() << "\n";
        return kNegative;
    }
    std::cout << "ok\n";
    return kOk;
}

int cmd_enumerate(const ModelOptions& opts, bool single, bool multi) {
    if (!opts.am_path.empty()) {
        for (const auto& q : am_model(am_universe_from_json(load_json_file(opts.am_path))).requests)
            std::cout << q.to_text() << "\n";
        return kOk;
    }
    AttributeVocabulary vocab = load_vocab(opts);
    if (single == multi)
        throw FormatError("enumerate requires exactly one of --single or --multi");
    auto requests = single ? enumerate_single(vocab) : enumerate_multi(vocab);
    for (const auto& q : requests) std::cout << q.to_text() << "\n";
    return kOk;
}

int cmd_ops(const std::string& set_name, const std::string& op_name) {
    auto kind = set_kind_from_string(set_name);
    if (!kind) throw FormatError("unknown decision set '" + set_name + "'");
    const OperatorTable& table = builtin_operator(op_name, *kind);
    const auto& ds = table.decision_set();
    std::size_t count = table.tuple_count();
    std::vector<Decision> args(static_cast<std::size_t>(table.arity()));
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx;
        for (int i = table.arity() - 1; i >= 0; --i) {
            args[static_cast<std::size_t>(i)] = ds.universe()[rem % ds.size()];
            rem /= ds.size();
        }
        for (const auto& a : args) std::cout << to_string(a) << " ";
        std::cout << to_string(table.apply(args)) << "\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"access control policy algebra: evaluation, monotonicity analysis, "
                 "and constructive realizers"};
    app.require_subcommand(1);

    ModelOptions opts;
    std::string policy_path, policy2_path, request_path, ideal_path, out_path;
    std::string set_name = "three", op_name;
    bool single = false, multi = false;

    auto* eval = app.add_subcommand("eval", "evaluate a policy for one request");
    add_model_options(eval, opts);
    eval->add_option("--policy", policy_path)->required();
    eval->add_option("--request", request_path)->required();

    auto* check = app.add_subcommand("check-monotonic", "exhaustively check a policy");
    add_model_options(check, opts);
    check->add_option("--policy", policy_path)->required();

    auto* realize = app.add_subcommand("realize", "realize an ideal policy (am or abacm)");
    add_model_options(realize, opts);
    realize->add_option("--ideal", ideal_path)->required();
    realize->add_option("--out", out_path)->required();

    auto* compile = app.add_subcommand("compile", "compile an arbitrary ideal policy (abacc)");
    add_model_options(compile, opts, /*need_model=*/false);
    compile->add_option("--ideal", ideal_path)->required();
    compile->add_option("--out", out_path)->required();

    auto* equivc = app.add_subcommand("equiv", "compare two policies over the request space");
    add_model_options(equivc, opts);
    equivc->add_option("--policy", policy_path)->required();
    equivc->add_option("--policy2", policy2_path)->required();

    auto* enumc = app.add_subcommand("enumerate", "print the request space in canonical order");
    add_model_options(enumc, opts, /*need_model=*/false);
    enumc->add_flag("--single", single, "single-valued request space");
    enumc->add_flag("--multi", multi, "multi-valued request space");

    auto* ops = app.add_subcommand("ops", "print an operator truth table");
    ops->add_option("--set", set_name, "decision set: two, three, four");
    ops->add_option("--name", op_name)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval) return cmd_eval(opts, policy_path, request_path);
        if (*check) return cmd_check_monotonic(opts, policy_path);
        if (*realize) return cmd_realize(opts, ideal_path, out_path);
        if (*compile) return cmd_compile(opts, ideal_path, out_path);
        if (*equivc) return cmd_equiv(opts, policy_path, policy2_path);
        if (*enumc) return cmd_enumerate(opts, single, multi);
        if (*ops) return cmd_ops(set_name, op_name);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (line " << e.line << ", column " << e.column
                  << ")\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
