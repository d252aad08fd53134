#include "nplan/pddl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "nplan/pddl/printer.hpp"

namespace nplan::pddl {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

void Rational::normalize() {
    if (den == 0) return;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
}

std::string Rational::to_string() const {
    if (den == 1) return std::to_string(num);
    // Scale the denominator to a power of ten; den only has factors 2 and 5.
    std::int64_t d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return std::to_string(num) + "/" + std::to_string(den);
    int k = std::max(twos, fives);
    std::int64_t scale = 1;
    for (int i = 0; i < k; ++i) scale *= 10;
    std::int64_t scaled = num * (scale / den);
    bool negative = scaled < 0;
    std::string digits = std::to_string(negative ? -scaled : scaled);
    while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
    digits.insert(digits.end() - k, '.');
    return (negative ? "-" : "") + digits;
}

ArithExpr ArithExpr::constant(Rational r) {
    ArithExpr e;
    Node n;
    n.op = Op::constant;
    n.value = r;
    e.nodes.push_back(std::move(n));
    e.root = 0;
    return e;
}

ArithExpr ArithExpr::fluent(FluentRef ref) {
    ArithExpr e;
    Node n;
    n.op = Op::fluent;
    n.fluent = std::move(ref);
    e.nodes.push_back(std::move(n));
    e.root = 0;
    return e;
}

ArithExpr ArithExpr::binary(Op op, ArithExpr lhs, ArithExpr rhs) {
    ArithExpr e = std::move(lhs);
    int offset = static_cast<int>(e.nodes.size());
    for (Node& n : rhs.nodes) {
        if (n.lhs >= 0) n.lhs += offset;
        if (n.rhs >= 0) n.rhs += offset;
        e.nodes.push_back(std::move(n));
    }
    Node top;
    top.op = op;
    top.lhs = e.root;
    top.rhs = rhs.root + offset;
    e.nodes.push_back(std::move(top));
    e.root = static_cast<int>(e.nodes.size()) - 1;
    return e;
}

ArithExpr ArithExpr::negate(ArithExpr operand) {
    ArithExpr e = std::move(operand);
    Node top;
    top.op = Op::neg;
    top.lhs = e.root;
    e.nodes.push_back(std::move(top));
    e.root = static_cast<int>(e.nodes.size()) - 1;
    return e;
}

std::vector<const FluentRef*> ArithExpr::fluent_refs() const {
    std::vector<const FluentRef*> refs;
    for (const Node& n : nodes) {
        if (n.op == Op::fluent) refs.push_back(&n.fluent);
    }
    return refs;
}

std::optional<Rational> ArithExpr::constant_value() const {
    if (root < 0) return std::nullopt;
    if (nodes.size() == 1 && nodes[0].op == Op::constant) return nodes[0].value;
    for (const Node& n : nodes) {
        if (n.op == Op::fluent) return std::nullopt;
    }
    // Fold with doubles; callers only need constants for costs.
    std::vector<double> vals(nodes.size(), 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        switch (n.op) {
            case Op::constant: vals[i] = n.value.to_double(); break;
            case Op::add: vals[i] = vals[n.lhs] + vals[n.rhs]; break;
            case Op::sub: vals[i] = vals[n.lhs] - vals[n.rhs]; break;
            case Op::mul: vals[i] = vals[n.lhs] * vals[n.rhs]; break;
            case Op::div: vals[i] = vals[n.lhs] / vals[n.rhs]; break;
            case Op::neg: vals[i] = -vals[n.lhs]; break;
            case Op::fluent: return std::nullopt;
        }
    }
    double v = vals[root];
    Rational r;
    r.num = static_cast<std::int64_t>(v * 1000000);
    r.den = 1000000;
    r.normalize();
    return r;
}

const char* comparator_token(Comparator cmp) {
    switch (cmp) {
        case Comparator::ge: return ">=";
        case Comparator::gt: return ">";
        case Comparator::eq: return "=";
    }
    return "?";
}

const PredicateDecl* LiftedDomain::find_predicate(const std::string& name) const {
    for (const PredicateDecl& p : predicates) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

const FunctionDecl* LiftedDomain::find_function(const std::string& name) const {
    for (const FunctionDecl& f : functions) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

bool LiftedDomain::has_type(const std::string& name) const {
    if (name == "object") return true;
    return std::any_of(types.begin(), types.end(),
                       [&](const TypeDecl& t) { return t.name == name; });
}

bool LiftedDomain::is_subtype(const std::string& type, const std::string& ancestor) const {
    if (ancestor == "object") return true;
    std::string current = type;
    for (std::size_t guard = 0; guard <= types.size(); ++guard) {
        if (current == ancestor) return true;
        if (current == "object") return false;
        auto it = std::find_if(types.begin(), types.end(),
                               [&](const TypeDecl& t) { return t.name == current; });
        if (it == types.end()) return false;
        current = it->parent;
    }
    return false;
}

namespace {

// ---------------------------------------------------------------------------
// S-expression layer

struct SExpr {
    bool is_atom = false;
    std::string atom;
    std::vector<SExpr> children;
    int line = 1;
    int column = 1;

    bool is_list() const { return !is_atom; }
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    struct Token {
        enum class Kind { lparen, rparen, atom, eof };
        Kind kind;
        std::string value;
        int line;
        int column;
    };

    Token next() {
        skip_trivia();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) {
            tok.kind = Token::Kind::eof;
            return tok;
        }
        char c = text_[pos_];
        if (c == '(') {
            advance();
            tok.kind = Token::Kind::lparen;
            return tok;
        }
        if (c == ')') {
            advance();
            tok.kind = Token::Kind::rparen;
            return tok;
        }
        tok.kind = Token::Kind::atom;
        while (pos_ < text_.size()) {
            char d = text_[pos_];
            if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d)))
                break;
            tok.value.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
            advance();
        }
        return tok;
    }

  private:
    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

SExpr parse_sexpr(Lexer& lexer, const Lexer::Token& first);

SExpr parse_list(Lexer& lexer, int line, int column) {
    SExpr list;
    list.line = line;
    list.column = column;
    for (;;) {
        Lexer::Token tok = lexer.next();
        if (tok.kind == Lexer::Token::Kind::rparen) return list;
        if (tok.kind == Lexer::Token::Kind::eof)
            throw ParseError(tok.line, tok.column, "unexpected end of input, '(' not closed");
        list.children.push_back(parse_sexpr(lexer, tok));
    }
}

SExpr parse_sexpr(Lexer& lexer, const Lexer::Token& first) {
    if (first.kind == Lexer::Token::Kind::lparen) return parse_list(lexer, first.line, first.column);
    if (first.kind == Lexer::Token::Kind::atom) {
        SExpr atom;
        atom.is_atom = true;
        atom.atom = first.value;
        atom.line = first.line;
        atom.column = first.column;
        return atom;
    }
    throw ParseError(first.line, first.column, "expected '(' or symbol");
}

SExpr parse_toplevel(const std::string& text) {
    Lexer lexer(text);
    Lexer::Token tok = lexer.next();
    if (tok.kind == Lexer::Token::Kind::eof) throw ParseError(tok.line, tok.column, "empty input");
    SExpr expr = parse_sexpr(lexer, tok);
    Lexer::Token rest = lexer.next();
    if (rest.kind != Lexer::Token::Kind::eof)
        throw ParseError(rest.line, rest.column, "trailing content after top-level form");
    return expr;
}

[[noreturn]] void fail(const SExpr& at, const std::string& message) {
    throw ParseError(at.line, at.column, message);
}

const SExpr& expect_atom(const SExpr& e, const std::string& what) {
    if (!e.is_atom) fail(e, "expected " + what + ", found a list");
    return e;
}

bool is_number_token(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    bool digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
        digits = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            digits = true;
        }
    }
    return digits && i == s.size();
}

Rational parse_number(const SExpr& e) {
    const std::string& s = e.atom;
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '-' || s[i] == '+') {
        negative = s[i] == '-';
        ++i;
    }
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool after_point = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            after_point = true;
            continue;
        }
        if (num > (INT64_MAX - 9) / 10) fail(e, "numeric literal out of range");
        num = num * 10 + (s[i] - '0');
        if (after_point) {
            if (den > INT64_MAX / 10) fail(e, "numeric literal out of range");
            den *= 10;
        }
    }
    Rational r{negative ? -num : num, den};
    r.normalize();
    return r;
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
    });
}

std::string expect_name(const SExpr& e, const std::string& what) {
    expect_atom(e, what);
    if (!valid_name(e.atom)) fail(e, "invalid " + what + " '" + e.atom + "'");
    return e.atom;
}

// Parses "name name - type name - type ..." segments of a typed list.
std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items, std::size_t begin,
                                        const std::string& what) {
    std::vector<TypedName> result;
    std::vector<std::size_t> pending;
    for (std::size_t i = begin; i < items.size(); ++i) {
        const SExpr& item = items[i];
        expect_atom(item, what);
        if (item.atom == "-") {
            if (pending.empty()) fail(item, "dangling '-' in typed list");
            if (i + 1 >= items.size()) fail(item, "missing type after '-'");
            std::string type = expect_name(items[i + 1], "type name");
            for (std::size_t p : pending) result.push_back({items[p].atom, type});
            pending.clear();
            ++i;
        } else {
            if (!valid_name(item.atom) && !(what == "variable" && item.atom[0] == '?'))
                fail(item, "invalid " + what + " '" + item.atom + "'");
            pending.push_back(i);
        }
    }
    for (std::size_t p : pending) result.push_back({items[p].atom, "object"});
    return result;
}

std::string expect_variable(const SExpr& e) {
    expect_atom(e, "variable");
    if (e.atom.size() < 2 || e.atom[0] != '?' || !valid_name(e.atom.substr(1)))
        fail(e, "invalid variable '" + e.atom + "'");
    return e.atom;
}

// ---------------------------------------------------------------------------
// Domain-level context used while interpreting schemata.

struct SchemaScope {
    const LiftedDomain* domain;
    std::unordered_map<std::string, std::string> variables;  // ?x -> type

    bool knows_constant(const std::string& name) const {
        return std::any_of(domain->constants.begin(), domain->constants.end(),
                           [&](const TypedName& c) { return c.name == name; });
    }
};

Term parse_term(const SExpr& e, const SchemaScope& scope) {
    expect_atom(e, "term");
    Term t;
    if (!e.atom.empty() && e.atom[0] == '?') {
        t.is_variable = true;
        t.name = e.atom;
        if (!scope.variables.count(t.name)) fail(e, "unknown variable '" + t.name + "'");
    } else {
        t.name = expect_name(e, "object name");
        if (!scope.knows_constant(t.name)) fail(e, "unknown constant '" + t.name + "'");
    }
    return t;
}

bool is_total_cost_ref(const FluentRef& ref) {
    return ref.function == "total-cost" && ref.args.empty();
}

FluentRef parse_fluent_ref(const SExpr& e, const SchemaScope& scope, bool allow_total_cost) {
    if (!e.is_list() || e.children.empty()) fail(e, "expected a fluent reference");
    FluentRef ref;
    ref.function = expect_name(e.children[0], "function name");
    for (std::size_t i = 1; i < e.children.size(); ++i)
        ref.args.push_back(parse_term(e.children[i], scope));
    if (is_total_cost_ref(ref)) {
        if (!allow_total_cost)
            fail(e, "'total-cost' may only appear in an (increase (total-cost) ...) effect");
        return ref;
    }
    const FunctionDecl* decl = scope.domain->find_function(ref.function);
    if (!decl) fail(e, "unknown function '" + ref.function + "'");
    if (decl->arity() != ref.args.size())
        fail(e, "function '" + ref.function + "' expects " + std::to_string(decl->arity()) +
                   " argument(s), got " + std::to_string(ref.args.size()));
    return ref;
}

ArithExpr parse_arith(const SExpr& e, const SchemaScope& scope) {
    if (e.is_atom) {
        if (is_number_token(e.atom)) return ArithExpr::constant(parse_number(e));
        fail(e, "expected a number or fluent expression, found '" + e.atom + "'");
    }
    if (e.children.empty()) fail(e, "empty expression");
    const SExpr& head = e.children[0];
    expect_atom(head, "operator or function name");
    const std::string& op = head.atom;
    if (op == "+" || op == "*" || op == "-" || op == "/") {
        std::size_t argc = e.children.size() - 1;
        if (op == "-" && argc == 1) return ArithExpr::negate(parse_arith(e.children[1], scope));
        if (argc < 2) fail(e, "operator '" + op + "' needs at least two operands");
        if ((op == "-" || op == "/") && argc != 2)
            fail(e, "operator '" + op + "' takes exactly two operands");
        ArithExpr::Op kind = op == "+"   ? ArithExpr::Op::add
                             : op == "-" ? ArithExpr::Op::sub
                             : op == "*" ? ArithExpr::Op::mul
                                         : ArithExpr::Op::div;
        ArithExpr acc = parse_arith(e.children[1], scope);
        for (std::size_t i = 2; i < e.children.size(); ++i)
            acc = ArithExpr::binary(kind, std::move(acc), parse_arith(e.children[i], scope));
        return acc;
    }
    return ArithExpr::fluent(parse_fluent_ref(e, scope, false));
}

Literal parse_literal_atom(const SExpr& e, const SchemaScope& scope) {
    if (!e.is_list() || e.children.empty()) fail(e, "expected a predicate atom");
    Literal lit;
    lit.predicate = expect_name(e.children[0], "predicate name");
    const PredicateDecl* decl = scope.domain->find_predicate(lit.predicate);
    if (!decl) fail(e, "unknown predicate '" + lit.predicate + "'");
    for (std::size_t i = 1; i < e.children.size(); ++i)
        lit.args.push_back(parse_term(e.children[i], scope));
    if (decl->arity() != lit.args.size())
        fail(e, "predicate '" + lit.predicate + "' expects " + std::to_string(decl->arity()) +
                   " argument(s), got " + std::to_string(lit.args.size()));
    return lit;
}

bool is_comparison_op(const std::string& op) {
    return op == ">=" || op == ">" || op == "<=" || op == "<" || op == "=";
}

bool is_literal_zero(const ArithExpr& e) {
    return e.nodes.size() == 1 && e.nodes[0].op == ArithExpr::Op::constant &&
           e.nodes[0].value == Rational{0, 1};
}

NumericCondition parse_comparison(const SExpr& e, const SchemaScope& scope) {
    const std::string& op = e.children[0].atom;
    if (e.children.size() != 3) fail(e, "comparison '" + op + "' takes exactly two operands");
    ArithExpr lhs = parse_arith(e.children[1], scope);
    ArithExpr rhs = parse_arith(e.children[2], scope);
    NumericCondition cond;
    // Normalize to expr cmp 0; <= and < swap operands. A literal 0 on the
    // relevant side is dropped instead of wrapped in a subtraction, which keeps
    // printing and re-parsing stable.
    if (op == ">=" || op == ">" || op == "=") {
        cond.cmp = op == ">=" ? Comparator::ge : op == ">" ? Comparator::gt : Comparator::eq;
        cond.expr = is_literal_zero(rhs)
                        ? std::move(lhs)
                        : ArithExpr::binary(ArithExpr::Op::sub, std::move(lhs), std::move(rhs));
    } else {
        cond.cmp = op == "<=" ? Comparator::ge : Comparator::gt;
        cond.expr = is_literal_zero(lhs)
                        ? std::move(rhs)
                        : ArithExpr::binary(ArithExpr::Op::sub, std::move(rhs), std::move(lhs));
    }
    return cond;
}

void parse_condition_into(const SExpr& e, const SchemaScope& scope, std::vector<Condition>& out) {
    if (!e.is_list() || e.children.empty()) fail(e, "expected a condition");
    const SExpr& head = e.children[0];
    expect_atom(head, "condition head");
    if (head.atom == "and") {
        for (std::size_t i = 1; i < e.children.size(); ++i)
            parse_condition_into(e.children[i], scope, out);
        return;
    }
    if (head.atom == "not") {
        if (e.children.size() != 2) fail(e, "'not' takes exactly one condition");
        const SExpr& inner = e.children[1];
        if (inner.is_list() && !inner.children.empty() && inner.children[0].is_atom &&
            is_comparison_op(inner.children[0].atom))
            fail(e, "negated numeric conditions are not supported");
        Literal lit = parse_literal_atom(inner, scope);
        lit.negated = true;
        out.push_back(std::move(lit));
        return;
    }
    if (is_comparison_op(head.atom)) {
        out.push_back(parse_comparison(e, scope));
        return;
    }
    out.push_back(parse_literal_atom(e, scope));
}

struct ParsedEffects {
    std::vector<Literal> prop_effects;
    std::vector<NumericEffect> numeric_effects;
    std::optional<ArithExpr> cost;
};

void parse_effect_into(const SExpr& e, const SchemaScope& scope, ParsedEffects& out) {
    if (!e.is_list() || e.children.empty()) fail(e, "expected an effect");
    const SExpr& head = e.children[0];
    expect_atom(head, "effect head");
    if (head.atom == "and") {
        for (std::size_t i = 1; i < e.children.size(); ++i)
            parse_effect_into(e.children[i], scope, out);
        return;
    }
    if (head.atom == "not") {
        if (e.children.size() != 2) fail(e, "'not' takes exactly one atom");
        Literal lit = parse_literal_atom(e.children[1], scope);
        lit.negated = true;
        out.prop_effects.push_back(std::move(lit));
        return;
    }
    if (head.atom == "assign" || head.atom == "increase" || head.atom == "decrease") {
        if (e.children.size() != 3)
            fail(e, "'" + head.atom + "' takes a fluent and an expression");
        NumericEffect eff;
        eff.fluent = parse_fluent_ref(e.children[1], scope, head.atom == "increase");
        eff.op = head.atom == "assign"     ? NumericEffectOp::assign
                 : head.atom == "increase" ? NumericEffectOp::increase
                                           : NumericEffectOp::decrease;
        eff.expr = parse_arith(e.children[2], scope);
        if (is_total_cost_ref(eff.fluent)) {
            if (out.cost) fail(e, "duplicate total-cost effect");
            out.cost = std::move(eff.expr);
            return;
        }
        for (const NumericEffect& prev : out.numeric_effects) {
            if (prev.fluent == eff.fluent)
                fail(e, "fluent '" + eff.fluent.function + "' receives two numeric effects");
        }
        out.numeric_effects.push_back(std::move(eff));
        return;
    }
    out.prop_effects.push_back(parse_literal_atom(e, scope));
}

const SExpr* find_section(const SExpr& define, const std::string& tag) {
    for (const SExpr& child : define.children) {
        if (child.is_list() && !child.children.empty() && child.children[0].is_atom &&
            child.children[0].atom == tag)
            return &child;
    }
    return nullptr;
}

void check_unique(const std::vector<std::string>& names, const SExpr& at, const std::string& what) {
    std::set<std::string> seen;
    for (const std::string& n : names) {
        if (!seen.insert(n).second) fail(at, "duplicate " + what + " '" + n + "'");
    }
}

ActionSchema parse_action(const SExpr& e, const LiftedDomain& domain) {
    ActionSchema schema;
    if (e.children.size() < 2) fail(e, ":action needs a name");
    schema.name = expect_name(e.children[1], "action name");

    SchemaScope scope;
    scope.domain = &domain;

    const SExpr* precondition = nullptr;
    const SExpr* effect = nullptr;
    for (std::size_t i = 2; i < e.children.size(); ++i) {
        const SExpr& key = e.children[i];
        expect_atom(key, "action keyword");
        if (i + 1 >= e.children.size()) fail(key, "missing value after '" + key.atom + "'");
        const SExpr& value = e.children[i + 1];
        ++i;
        if (key.atom == ":parameters") {
            if (!value.is_list()) fail(value, ":parameters expects a list");
            schema.parameters = parse_typed_list(value.children, 0, "variable");
            for (const TypedName& p : schema.parameters) {
                if (p.name.empty() || p.name[0] != '?')
                    fail(value, "parameter '" + p.name + "' must start with '?'");
                if (!domain.has_type(p.type)) fail(value, "unknown type '" + p.type + "'");
                if (!scope.variables.emplace(p.name, p.type).second)
                    fail(value, "duplicate parameter '" + p.name + "'");
            }
        } else if (key.atom == ":precondition") {
            precondition = &value;
        } else if (key.atom == ":effect") {
            effect = &value;
        } else {
            fail(key, "unknown action keyword '" + key.atom + "'");
        }
    }

    if (precondition) parse_condition_into(*precondition, scope, schema.preconditions);
    ParsedEffects effects;
    if (effect) parse_effect_into(*effect, scope, effects);
    schema.prop_effects = std::move(effects.prop_effects);
    schema.numeric_effects = std::move(effects.numeric_effects);
    schema.cost = effects.cost ? std::move(*effects.cost)
                               : ArithExpr::constant(Rational::integer(1));
    return schema;
}

}  // namespace

LiftedDomain parse_domain(const std::string& text, std::vector<std::string>* warnings) {
    SExpr top = parse_toplevel(text);
    if (!top.is_list() || top.children.empty() || !top.children[0].is_atom ||
        top.children[0].atom != "define")
        fail(top, "expected (define (domain ...) ...)");
    if (top.children.size() < 2 || !top.children[1].is_list() ||
        top.children[1].children.size() != 2 || top.children[1].children[0].atom != "domain")
        fail(top, "expected (domain <name>) after define");

    LiftedDomain domain;
    domain.name = expect_name(top.children[1].children[1], "domain name");

    if (const SExpr* reqs = find_section(top, ":requirements")) {
        static const std::set<std::string> known = {":strips", ":typing", ":numeric-fluents"};
        for (std::size_t i = 1; i < reqs->children.size(); ++i) {
            const SExpr& tag = expect_atom(reqs->children[i], "requirement tag");
            if (!known.count(tag.atom) && warnings)
                warnings->push_back("ignoring unknown requirement '" + tag.atom + "'");
        }
    }

    if (const SExpr* types = find_section(top, ":types")) {
        std::vector<TypedName> entries = parse_typed_list(types->children, 1, "type name");
        for (const TypedName& entry : entries) {
            if (entry.name == "object") fail(*types, "type 'object' is implicit");
            domain.types.push_back({entry.name, entry.type});
        }
        std::vector<std::string> names;
        for (const TypeDecl& t : domain.types) names.push_back(t.name);
        check_unique(names, *types, "type");
        for (const TypeDecl& t : domain.types) {
            if (!domain.has_type(t.parent)) fail(*types, "unknown parent type '" + t.parent + "'");
        }
    }

    if (const SExpr* constants = find_section(top, ":constants")) {
        domain.constants = parse_typed_list(constants->children, 1, "constant name");
        std::vector<std::string> names;
        for (const TypedName& c : domain.constants) names.push_back(c.name);
        check_unique(names, *constants, "constant");
        for (const TypedName& c : domain.constants) {
            if (!domain.has_type(c.type)) fail(*constants, "unknown type '" + c.type + "'");
        }
    }

    if (const SExpr* preds = find_section(top, ":predicates")) {
        for (std::size_t i = 1; i < preds->children.size(); ++i) {
            const SExpr& p = preds->children[i];
            if (!p.is_list() || p.children.empty()) fail(p, "expected a predicate declaration");
            PredicateDecl decl;
            decl.name = expect_name(p.children[0], "predicate name");
            for (const TypedName& param : parse_typed_list(p.children, 1, "variable"))
                decl.param_types.push_back(param.type);
            for (const std::string& t : decl.param_types) {
                if (!domain.has_type(t)) fail(p, "unknown type '" + t + "'");
            }
            domain.predicates.push_back(std::move(decl));
        }
        std::vector<std::string> names;
        for (const PredicateDecl& p : domain.predicates) names.push_back(p.name);
        check_unique(names, *preds, "predicate");
    }

    if (const SExpr* funcs = find_section(top, ":functions")) {
        for (std::size_t i = 1; i < funcs->children.size(); ++i) {
            const SExpr& f = funcs->children[i];
            if (!f.is_list() || f.children.empty()) fail(f, "expected a function declaration");
            FunctionDecl decl;
            decl.name = expect_name(f.children[0], "function name");
            for (const TypedName& param : parse_typed_list(f.children, 1, "variable"))
                decl.param_types.push_back(param.type);
            for (const std::string& t : decl.param_types) {
                if (!domain.has_type(t)) fail(f, "unknown type '" + t + "'");
            }
            domain.functions.push_back(std::move(decl));
        }
        std::vector<std::string> names;
        for (const FunctionDecl& f : domain.functions) names.push_back(f.name);
        check_unique(names, *funcs, "function");
    }

    for (const SExpr& child : top.children) {
        if (child.is_list() && !child.children.empty() && child.children[0].is_atom &&
            child.children[0].atom == ":action")
            domain.schemata.push_back(parse_action(child, domain));
    }
    std::vector<std::string> names;
    for (const ActionSchema& a : domain.schemata) names.push_back(a.name);
    check_unique(names, top, "action");

    return domain;
}

namespace {

struct ProblemScope {
    const LiftedDomain* domain;
    const LiftedProblem* problem;

    std::optional<std::string> object_type(const std::string& name) const {
        for (const TypedName& o : problem->objects) {
            if (o.name == name) return o.type;
        }
        for (const TypedName& c : domain->constants) {
            if (c.name == name) return c.type;
        }
        return std::nullopt;
    }
};

// Goal conditions reuse the schema machinery with a scope that resolves every
// name as an object of the problem.
SchemaScope goal_scope_shim(const LiftedDomain& domain, std::vector<TypedName> all_objects,
                            LiftedDomain& storage) {
    storage = domain;
    storage.constants = std::move(all_objects);
    SchemaScope scope;
    scope.domain = &storage;
    return scope;
}

}  // namespace

LiftedProblem parse_problem(const std::string& text, const LiftedDomain& domain,
                            std::vector<std::string>* warnings) {
    (void)warnings;
    SExpr top = parse_toplevel(text);
    if (!top.is_list() || top.children.empty() || !top.children[0].is_atom ||
        top.children[0].atom != "define")
        fail(top, "expected (define (problem ...) ...)");
    if (top.children.size() < 2 || !top.children[1].is_list() ||
        top.children[1].children.size() != 2 || top.children[1].children[0].atom != "problem")
        fail(top, "expected (problem <name>) after define");

    LiftedProblem problem;
    problem.name = expect_name(top.children[1].children[1], "problem name");

    const SExpr* domain_ref = find_section(top, ":domain");
    if (!domain_ref || domain_ref->children.size() != 2)
        fail(top, "missing (:domain <name>)");
    problem.domain_name = expect_name(domain_ref->children[1], "domain name");
    if (problem.domain_name != domain.name)
        fail(*domain_ref, "problem is for domain '" + problem.domain_name + "', expected '" +
                              domain.name + "'");

    if (const SExpr* objects = find_section(top, ":objects")) {
        problem.objects = parse_typed_list(objects->children, 1, "object name");
        std::vector<std::string> names;
        for (const TypedName& o : problem.objects) names.push_back(o.name);
        for (const TypedName& c : domain.constants) names.push_back(c.name);
        check_unique(names, *objects, "object");
        for (const TypedName& o : problem.objects) {
            if (!domain.has_type(o.type)) fail(*objects, "unknown type '" + o.type + "'");
        }
    }

    ProblemScope scope{&domain, &problem};

    auto resolve_args = [&](const SExpr& e, std::size_t begin,
                            const std::vector<std::string>& param_types,
                            std::vector<std::string>& out) {
        for (std::size_t i = begin; i < e.children.size(); ++i) {
            std::string name = expect_name(e.children[i], "object name");
            std::optional<std::string> type = scope.object_type(name);
            if (!type) fail(e.children[i], "unknown object '" + name + "'");
            const std::string& expected = param_types[i - begin];
            if (!domain.is_subtype(*type, expected))
                fail(e.children[i], "object '" + name + "' of type '" + *type +
                                        "' is not a '" + expected + "'");
            out.push_back(std::move(name));
        }
    };

    if (const SExpr* init = find_section(top, ":init")) {
        for (std::size_t i = 1; i < init->children.size(); ++i) {
            const SExpr& item = init->children[i];
            if (!item.is_list() || item.children.empty()) fail(item, "expected an init element");
            const SExpr& head = expect_atom(item.children[0], "predicate or '='");
            if (head.atom == "=") {
                if (item.children.size() != 3 || !item.children[1].is_list())
                    fail(item, "numeric init must be (= (<function> args...) <number>)");
                const SExpr& ref = item.children[1];
                GroundFluentInit fi;
                fi.function = expect_name(ref.children.empty() ? ref : ref.children[0],
                                          "function name");
                if (fi.function == "total-cost" && ref.children.size() == 1) {
                    // Conventional zero init for the cost counter; not a state fluent.
                    continue;
                }
                const FunctionDecl* decl = domain.find_function(fi.function);
                if (!decl) fail(ref, "unknown function '" + fi.function + "'");
                if (decl->arity() != ref.children.size() - 1)
                    fail(ref, "function '" + fi.function + "' expects " +
                                  std::to_string(decl->arity()) + " argument(s)");
                resolve_args(ref, 1, decl->param_types, fi.args);
                if (!item.children[2].is_atom || !is_number_token(item.children[2].atom))
                    fail(item.children[2], "expected a numeric literal");
                fi.value = parse_number(item.children[2]);
                bool duplicate = false;
                for (const GroundFluentInit& prev : problem.init_fluents) {
                    if (prev.function == fi.function && prev.args == fi.args) {
                        if (!(prev.value == fi.value))
                            fail(item, "conflicting init values for fluent '" + fi.function + "'");
                        duplicate = true;
                    }
                }
                if (!duplicate) problem.init_fluents.push_back(std::move(fi));
            } else {
                GroundAtom atom;
                atom.predicate = expect_name(item.children[0], "predicate name");
                const PredicateDecl* decl = domain.find_predicate(atom.predicate);
                if (!decl) fail(item, "unknown predicate '" + atom.predicate + "'");
                if (decl->arity() != item.children.size() - 1)
                    fail(item, "predicate '" + atom.predicate + "' expects " +
                                   std::to_string(decl->arity()) + " argument(s)");
                resolve_args(item, 1, decl->param_types, atom.args);
                if (std::find(problem.init_atoms.begin(), problem.init_atoms.end(), atom) ==
                    problem.init_atoms.end())
                    problem.init_atoms.push_back(std::move(atom));
            }
        }
    }

    if (const SExpr* goal = find_section(top, ":goal")) {
        if (goal->children.size() != 2) fail(*goal, ":goal takes exactly one condition");
        std::vector<TypedName> all_objects = problem.objects;
        for (const TypedName& c : domain.constants) all_objects.push_back(c);
        LiftedDomain storage;
        SchemaScope gscope = goal_scope_shim(domain, std::move(all_objects), storage);
        parse_condition_into(goal->children[1], gscope, problem.goal);
        // Typed-list types were already validated; re-check goal argument types
        // against predicate signatures.
        for (const Condition& cond : problem.goal) {
            if (const Literal* lit = std::get_if<Literal>(&cond)) {
                const PredicateDecl* decl = domain.find_predicate(lit->predicate);
                for (std::size_t i = 0; i < lit->args.size(); ++i) {
                    std::optional<std::string> type = scope.object_type(lit->args[i].name);
                    if (!type || !domain.is_subtype(*type, decl->param_types[i]))
                        fail(*goal, "goal argument '" + lit->args[i].name +
                                        "' does not fit predicate '" + lit->predicate + "'");
                }
            } else if (const NumericCondition* nc = std::get_if<NumericCondition>(&cond)) {
                for (const FluentRef* ref : nc->expr.fluent_refs()) {
                    const FunctionDecl* decl = domain.find_function(ref->function);
                    for (std::size_t i = 0; i < ref->args.size(); ++i) {
                        std::optional<std::string> type = scope.object_type(ref->args[i].name);
                        if (!type || !domain.is_subtype(*type, decl->param_types[i]))
                            fail(*goal, "goal argument '" + ref->args[i].name +
                                            "' does not fit function '" + ref->function + "'");
                    }
                }
            }
        }
    }

    // Every fluent mentioned in a numeric goal must have an initial value.
    for (const Condition& cond : problem.goal) {
        if (const NumericCondition* nc = std::get_if<NumericCondition>(&cond)) {
            for (const FluentRef* ref : nc->expr.fluent_refs()) {
                bool found = false;
                for (const GroundFluentInit& fi : problem.init_fluents) {
                    if (fi.function == ref->function && fi.args.size() == ref->args.size()) {
                        bool same = true;
                        for (std::size_t i = 0; i < fi.args.size(); ++i)
                            same = same && fi.args[i] == ref->args[i].name;
                        if (same) found = true;
                    }
                }
                if (!found)
                    throw ParseError(1, 1, "numeric goal references fluent '" + ref->function +
                                               "' with no initial assignment");
            }
        }
    }

    return problem;
}

}  // namespace nplan::pddl
