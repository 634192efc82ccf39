#include "acpol/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace acpol {

Term Term::atom(Atom a) {
    if (a.ids.empty() || a.ids.size() > 3)
        throw DomainError("atom must carry between one and three identifiers");
    Term t;
    t.is_atom_ = true;
    t.atom_ = std::move(a);
    return t;
}


Term Term::node(std::string op, std::vector<Term> children) {
    Term t;
    t.op_ = std::move(op);
    t.children_ = std::move(children);
    return t;
}

Term Term::node(std::shared_ptr<const OperatorTable> table, std::vector<Term> children) {
    if (!table) throw DomainError("operator node requires a table");
    Term t;
    t.op_ = table->name();
    t.table_ = std::move(table);
    t.children_ = std::move(children);
    return t;
}

const Atom& Term::atom_ref() const {
    if (!is_atom_) throw DomainError("term is not an atom");
    return atom_;
}

const std::string& Term::op() const {
    if (is_atom_) throw DomainError("term is an atom");
    return op_;
}

const std::vector<Term>& Term::children() const { return children_; }

bool Term::operator==(const Term& other) const {
    if (is_atom_ != other.is_atom_) return false;
    if (is_atom_) return atom_ == other.atom_;
    if (op_ != other.op_) return false;
    const auto params = table_ ? table_->params() : std::vector<Decision>{};
    const auto other_params = other.table_ ? other.table_->params() : std::vector<Decision>{};
    if (params != other_params) return false;
    return children_ == other.children_;
}

std::size_t Term::size() const {
    if (is_atom_) return 1;
    std::size_t n = 1;
    for (const auto& c : children_) n += c.size();
    return n;
}

std::shared_ptr<const OperatorTable> oplus_operator(std::vector<Decision> pi_topo) {
    if (pi_topo.empty())
        throw DomainError("oplus requires at least the empty-request decision");
    const auto& three = DecisionSet::get(SetKind::Three);
    for (Decision d : pi_topo) three.index(d);
    const int arity = static_cast<int>(pi_topo.size()) - 1;
    auto params = pi_topo; // kept for rendering and equality
    auto rule = [pi = std::move(pi_topo)](std::span<const Decision> args) {
        std::size_t m = 0;
        for (std::size_t i = 0; i < args.size(); ++i)
            if (args[i] == Decision::Allow) m = i + 1;
        return pi[m];
    };
    return std::make_shared<OperatorTable>("oplus", SetKind::Three, arity, std::move(rule),
                                           std::move(params));
}

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

struct Token {
    enum class Kind { LParen, RParen, Ident, End } kind;
    std::string text;
    int line, column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
        if (pos_ >= text_.size()) return {Token::Kind::End, "", line_, col_};
        const int line = line_, col = col_;
        const char c = text_[pos_];
        if (c == '(') {
            advance();
            return {Token::Kind::LParen, "(", line, col};
        }
        if (c == ')') {
            advance();
            return {Token::Kind::RParen, ")", line, col};
        }
        if (!is_ident_char(c))
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        std::string ident;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
            ident.push_back(text_[pos_]);
            advance();
        }
        return {Token::Kind::Ident, std::move(ident), line, col};
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

bool known_op_name(const std::string& name) {
    return is_builtin_operator(name, SetKind::Three) ||
           is_builtin_operator(name, SetKind::Four) ||
           is_builtin_operator(name, SetKind::Two);
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    Term parse_top() {
        Term t = parse_term();
        if (current_.kind != Token::Kind::End)
            throw ParseError("trailing input after policy term", current_.line, current_.column);
        return t;
    }

private:
    void shift() { current_ = lexer_.next(); }

    void expect(Token::Kind kind, const char* what) {
        if (current_.kind != kind)
            throw ParseError(std::string("expected ") + what, current_.line, current_.column);
    }

    Term parse_term() {
        if (current_.kind == Token::Kind::End)
            throw ParseError("unexpected end of input (unbalanced parentheses?)",
                             current_.line, current_.column);
        expect(Token::Kind::LParen, "'('");
        shift();
        expect(Token::Kind::Ident, "an operator or 'atom'");
        const Token head = current_;
        shift();
        if (head.text == "atom") return parse_atom_tail(head);
        if (head.text == "oplus") return parse_oplus_tail(head);
        if (!known_op_name(head.text))
            throw ParseError("unknown operator '" + head.text + "'", head.line, head.column);
        std::vector<Term> children;
        while (current_.kind == Token::Kind::LParen) children.push_back(parse_term());
        expect(Token::Kind::RParen, "')'");
        shift();
        return Term::node(head.text, std::move(children));
    }

    Term parse_atom_tail(const Token& head) {
        std::vector<std::string> ids;
        while (current_.kind == Token::Kind::Ident) {
            ids.push_back(current_.text);
            shift();
        }
        if (ids.empty() || ids.size() > 3)
            throw ParseError("atom takes one to three identifiers", head.line, head.column);
        expect(Token::Kind::RParen, "')'");
        shift();
        return Term::atom(Atom{std::move(ids)});
    }

    Term parse_oplus_tail(const Token& head) {
        std::vector<Decision> pi;
        while (current_.kind == Token::Kind::Ident) {
            auto d = decision_from_string(current_.text);
            if (!d)
                throw ParseError("unknown decision '" + current_.text + "'", current_.line,
                                 current_.column);
            pi.push_back(*d);
            shift();
        }
        std::vector<Term> children;
        while (current_.kind == Token::Kind::LParen) children.push_back(parse_term());
        expect(Token::Kind::RParen, "')'");
        shift();
        if (pi.size() != children.size() + 1)
            throw ParseError("oplus takes n+1 decisions and n child terms", head.line,
                             head.column);
        return Term::node(oplus_operator(std::move(pi)), std::move(children));
    }

    Lexer lexer_;
    Token current_;
};

void render_into(const Term& t, std::ostringstream& os) {
    if (t.is_atom()) {
        os << "(atom";
        for (const auto& id : t.atom_ref().ids) os << ' ' << id;
        os << ')';
        return;
    }
    os << '(' << t.op();
    if (t.table())
        for (Decision d : t.table()->params()) os << ' ' << to_string(d);
    for (const auto& c : t.children()) {
        os << ' ';
        render_into(c, os);
    }
    os << ')';
}

} // namespace

Term parse(std::string_view text) { return Parser(text).parse_top(); }

std::string render(const Term& term) {
    std::ostringstream os;
    render_into(term, os);
    return os.str();
}

} // namespace acpol
