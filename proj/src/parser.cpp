#include "wcausal/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace wcausal {

namespace {

enum class Tok {
    End,
    Ident,      // lowercase-initial
    Variable,   // uppercase-initial
    Number,
    Abstract,   // #name
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Arrow,      // <-
    Concat,     // ++
    Plus,
    Minus,
    Star,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    KwSorts,
    KwStatics,
    KwFluents,
    KwInertial,
    KwTransient,
    KwTimeless,
    KwActions,
    KwMechanism,
    KwAt,
    KwScenario,
    KwInit,
    KwDo,
    KwObs,
    KwNeg,
    Error,
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::Variable: return "variable";
        case Tok::Number: return "number";
        case Tok::Abstract: return "abstract constant";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Colon: return "':'";
        case Tok::Arrow: return "'<-'";
        case Tok::Concat: return "'++'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Eq: return "'='";
        case Tok::Ne: return "'!='";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::KwSorts: return "'sorts'";
        case Tok::KwStatics: return "'statics'";
        case Tok::KwFluents: return "'fluents'";
        case Tok::KwInertial: return "'inertial'";
        case Tok::KwTransient: return "'transient'";
        case Tok::KwTimeless: return "'timeless'";
        case Tok::KwActions: return "'actions'";
        case Tok::KwMechanism: return "'mechanism'";
        case Tok::KwAt: return "'at'";
        case Tok::KwScenario: return "'scenario'";
        case Tok::KwInit: return "'init'";
        case Tok::KwDo: return "'do'";
        case Tok::KwObs: return "'obs'";
        case Tok::KwNeg: return "'neg'";
        case Tok::Error: return "invalid token";
    }
    return "?";
}

struct Token {
    Tok type = Tok::End;
    std::string text;
    long number = 0;
    SourceSpan span;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

    Token next() {
        skip_ws();
        Token t;
        t.span.file = file_;
        t.span.line = line_;
        t.span.column = col_;
        if (pos_ >= text_.size()) {
            t.type = Tok::End;
            finish(t);
            return t;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                advance();
            }
            t.type = Tok::Number;
            t.number = v;
            finish(t);
            return t;
        }
        if (c == '#') {
            advance();
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                    text_[pos_] == '.')) {
                name += text_[pos_];
                advance();
            }
            t.type = name.empty() ? Tok::Error : Tok::Abstract;
            t.text = name;
            finish(t);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                name += text_[pos_];
                advance();
            }
            t.text = name;
            t.type = keyword(name);
            if (t.type == Tok::Ident && std::isupper(static_cast<unsigned char>(name[0])))
                t.type = Tok::Variable;
            finish(t);
            return t;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
        };
        if (two('<', '-')) return punct(t, Tok::Arrow, 2);
        if (two('<', '=')) return punct(t, Tok::Le, 2);
        if (two('>', '=')) return punct(t, Tok::Ge, 2);
        if (two('!', '=')) return punct(t, Tok::Ne, 2);
        if (two('+', '+')) return punct(t, Tok::Concat, 2);
        switch (c) {
            case '(': return punct(t, Tok::LParen, 1);
            case ')': return punct(t, Tok::RParen, 1);
            case '{': return punct(t, Tok::LBrace, 1);
            case '}': return punct(t, Tok::RBrace, 1);
            case ',': return punct(t, Tok::Comma, 1);
            case ';': return punct(t, Tok::Semi, 1);
            case ':': return punct(t, Tok::Colon, 1);
            case '+': return punct(t, Tok::Plus, 1);
            case '-': return punct(t, Tok::Minus, 1);
            case '*': return punct(t, Tok::Star, 1);
            case '=': return punct(t, Tok::Eq, 1);
            case '<': return punct(t, Tok::Lt, 1);
            case '>': return punct(t, Tok::Gt, 1);
            default:
                t.type = Tok::Error;
                t.text = std::string(1, c);
                advance();
                finish(t);
                return t;
        }
    }

private:
    static Tok keyword(const std::string& s) {
        static const std::map<std::string, Tok> kw = {
            {"sorts", Tok::KwSorts},       {"statics", Tok::KwStatics},
            {"fluents", Tok::KwFluents},   {"inertial", Tok::KwInertial},
            {"transient", Tok::KwTransient}, {"timeless", Tok::KwTimeless},
            {"actions", Tok::KwActions},   {"mechanism", Tok::KwMechanism},
            {"at", Tok::KwAt},             {"scenario", Tok::KwScenario},
            {"init", Tok::KwInit},         {"do", Tok::KwDo},
            {"obs", Tok::KwObs},           {"neg", Tok::KwNeg},
        };
        auto it = kw.find(s);
        return it == kw.end() ? Tok::Ident : it->second;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
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
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    Token punct(Token& t, Tok type, int len) {
        t.type = type;
        for (int i = 0; i < len; ++i) {
            t.text += text_[pos_];
            advance();
        }
        finish(t);
        return t;
    }

    void finish(Token& t) {
        t.span.end_line = line_;
        t.span.end_column = col_;
    }

    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// Recursive-descent parser for declarations, mechanisms and scenarios.
// Statements are ';'-terminated; after an error the parser resynchronizes at
// the next ';' so several diagnostics can be reported in one pass.
class Parser {
public:
    Parser(std::string_view text, std::string file)
        : lexer_(text, file), file_(std::move(file)) {
        cur_ = lexer_.next();
    }

    ParseResult parse_program() {
        ParseResult result;
        CausalTheory& th = result.theory;
        while (cur_.type != Tok::End && cur_.type != Tok::KwScenario) {
            parse_declaration(th);
        }
        if (cur_.type == Tok::KwScenario) {
            eat();
            parse_scenario_body(th.signature, th.scenario);
        }
        result.errors = std::move(errors_);
        return result;
    }

    Scenario parse_scenario_only(const Signature& sig, Diagnostics& errs) {
        Scenario sc;
        if (cur_.type == Tok::KwScenario) eat();
        parse_scenario_body(sig, sc);
        errs = std::move(errors_);
        return sc;
    }

private:
    Lexer lexer_;
    std::string file_;
    Token cur_;
    Diagnostics errors_;

    void eat() { cur_ = lexer_.next(); }

    void error_here(std::string msg, std::vector<std::string> expected = {}) {
        errors_.push_back({cur_.span, std::move(msg), std::move(expected)});
    }

    void error_at(const SourceSpan& span, std::string msg) {
        errors_.push_back({span, std::move(msg), {}});
    }

    // Skip to just past the next ';' (or to end of input).
    void resync() {
        while (cur_.type != Tok::Semi && cur_.type != Tok::End) eat();
        if (cur_.type == Tok::Semi) eat();
    }

    bool expect(Tok type) {
        if (cur_.type == type) {
            eat();
            return true;
        }
        error_here("unexpected " + std::string(tok_name(cur_.type)), {tok_name(type)});
        return false;
    }

    std::optional<std::string> expect_ident() {
        if (cur_.type == Tok::Ident) {
            std::string s = cur_.text;
            eat();
            return s;
        }
        error_here("unexpected " + std::string(tok_name(cur_.type)), {tok_name(Tok::Ident)});
        return std::nullopt;
    }

    // ---- declarations ------------------------------------------------------

    void parse_declaration(CausalTheory& th) {
        switch (cur_.type) {
            case Tok::KwSorts: eat(); parse_sorts(th.signature); return;
            case Tok::KwStatics: eat(); parse_funcs(th.signature, SymbolKind::Static); return;
            case Tok::KwFluents: eat(); parse_fluents(th.signature); return;
            case Tok::KwActions: eat(); parse_actions(th.signature); return;
            case Tok::KwMechanism: eat(); parse_mechanism(th); return;
            default:
                error_here("unexpected " + std::string(tok_name(cur_.type)),
                           {"'sorts'", "'statics'", "'fluents'", "'actions'", "'mechanism'",
                            "'scenario'"});
                resync();
                return;
        }
    }

    void parse_sorts(Signature& sig) {
        do {
            Sort s;
            s.span = cur_.span;
            auto name = expect_ident();
            if (!name) return resync();
            s.name = *name;
            if (!expect(Tok::Eq)) return resync();
            // union of named sorts and literal constant sets
            bool first = true;
            while (first || cur_.type == Tok::Concat) {
                if (!first) eat();
                first = false;
                if (cur_.type == Tok::LBrace) {
                    eat();
                    while (true) {
                        auto v = expect_ident();
                        if (!v) return resync();
                        s.values.push_back(*v);
                        if (cur_.type == Tok::Comma) {
                            eat();
                            continue;
                        }
                        break;
                    }
                    if (!expect(Tok::RBrace)) return resync();
                } else if (cur_.type == Tok::Ident) {
                    const Sort* base = sig.find_sort(cur_.text);
                    if (!base) {
                        error_here("unknown sort '" + cur_.text + "'");
                        return resync();
                    }
                    for (const auto& v : base->values) s.values.push_back(v);
                    eat();
                } else {
                    error_here("unexpected " + std::string(tok_name(cur_.type)),
                               {"'{'", "sort name"});
                    return resync();
                }
            }
            sig.sorts.push_back(std::move(s));
        } while (cur_.type == Tok::Comma && (eat(), true));
        expect(Tok::Semi);
    }

    bool parse_sig_params(std::vector<std::string>& params) {
        if (cur_.type != Tok::LParen) return true;
        eat();
        while (true) {
            auto p = expect_ident();
            if (!p) return false;
            params.push_back(*p);
            if (cur_.type == Tok::Comma) {
                eat();
                continue;
            }
            break;
        }
        return expect(Tok::RParen);
    }

    void parse_funcs(Signature& sig, SymbolKind kind) {
        do {
            FunctionSymbol f;
            f.kind = kind;
            f.span = cur_.span;
            auto name = expect_ident();
            if (!name) return resync();
            f.name = *name;
            if (!parse_sig_params(f.param_sorts)) return resync();
            if (!expect(Tok::Colon)) return resync();
            auto vs = expect_ident();
            if (!vs) return resync();
            f.value_sort = *vs;
            sig.symbols.push_back(std::move(f));
        } while (cur_.type == Tok::Comma && (eat(), true));
        expect(Tok::Semi);
    }

    void parse_fluents(Signature& sig) {
        SymbolKind kind;
        switch (cur_.type) {
            case Tok::KwInertial: kind = SymbolKind::InertialFluent; break;
            case Tok::KwTransient: kind = SymbolKind::TransientFluent; break;
            case Tok::KwTimeless: kind = SymbolKind::TimelessFluent; break;
            default:
                error_here("unexpected " + std::string(tok_name(cur_.type)),
                           {"'inertial'", "'transient'", "'timeless'"});
                return resync();
        }
        eat();
        parse_funcs(sig, kind);
    }

    void parse_actions(Signature& sig) {
        do {
            FunctionSymbol f;
            f.kind = SymbolKind::Action;
            f.value_sort = kBoolSort;
            f.span = cur_.span;
            auto name = expect_ident();
            if (!name) return resync();
            f.name = *name;
            if (!parse_sig_params(f.param_sorts)) return resync();
            sig.symbols.push_back(std::move(f));
        } while (cur_.type == Tok::Comma && (eat(), true));
        expect(Tok::Semi);
    }

    // ---- terms and atoms ---------------------------------------------------

    std::optional<Term> parse_factor(const Signature& sig) {
        SourceSpan span = cur_.span;
        switch (cur_.type) {
            case Tok::Number: {
                Term t = Term::make_number(cur_.number);
                t.span = span;
                eat();
                return t;
            }
            case Tok::Abstract: {
                Term t = Term::make_abstract(cur_.text);
                t.span = span;
                eat();
                return t;
            }
            case Tok::Variable: {
                Term t = Term::make_variable(cur_.text);
                t.span = span;
                eat();
                return t;
            }
            case Tok::Ident: {
                std::string name = cur_.text;
                eat();
                if (cur_.type == Tok::LParen) {
                    eat();
                    std::vector<Term> args;
                    while (true) {
                        auto a = parse_expr(sig);
                        if (!a) return std::nullopt;
                        args.push_back(std::move(*a));
                        if (cur_.type == Tok::Comma) {
                            eat();
                            continue;
                        }
                        break;
                    }
                    if (!expect(Tok::RParen)) return std::nullopt;
                    Term t = Term::make_func(name, std::move(args));
                    t.span = span;
                    return t;
                }
                // bare identifier: a declared symbol reads as a functional
                // term, anything else as an object constant
                Term t = sig.find_symbol(name) ? Term::make_func(name, {})
                                               : Term::make_const(name);
                t.span = span;
                return t;
            }
            case Tok::LParen: {
                eat();
                auto t = parse_expr(sig);
                if (!t) return std::nullopt;
                if (!expect(Tok::RParen)) return std::nullopt;
                return t;
            }
            default:
                error_here("unexpected " + std::string(tok_name(cur_.type)),
                           {"number", "identifier", "variable", "abstract constant", "'('"});
                return std::nullopt;
        }
    }

    std::optional<Term> parse_mul(const Signature& sig) {
        auto lhs = parse_factor(sig);
        if (!lhs) return std::nullopt;
        while (cur_.type == Tok::Star) {
            eat();
            auto rhs = parse_factor(sig);
            if (!rhs) return std::nullopt;
            Term t = Term::make_binary('*', std::move(*lhs), std::move(*rhs));
            lhs = std::move(t);
        }
        return lhs;
    }

    std::optional<Term> parse_expr(const Signature& sig) {
        auto lhs = parse_mul(sig);
        if (!lhs) return std::nullopt;
        while (cur_.type == Tok::Plus || cur_.type == Tok::Minus) {
            char op = cur_.type == Tok::Plus ? '+' : '-';
            eat();
            auto rhs = parse_mul(sig);
            if (!rhs) return std::nullopt;
            Term t = Term::make_binary(op, std::move(*lhs), std::move(*rhs));
            lhs = std::move(t);
        }
        return lhs;
    }

    std::optional<Rel> current_rel() {
        switch (cur_.type) {
            case Tok::Eq: return Rel::Eq;
            case Tok::Ne: return Rel::Ne;
            case Tok::Lt: return Rel::Lt;
            case Tok::Le: return Rel::Le;
            case Tok::Gt: return Rel::Gt;
            case Tok::Ge: return Rel::Ge;
            default: return std::nullopt;
        }
    }

    // Functional term -> atom skeleton; splits off the trailing time-step
    // argument of time-dependent symbols and resolves the occurs form.
    std::optional<Atom> atom_from_func(const Signature& sig, Term func) {
        Atom a;
        a.span = func.span;
        a.value = Term::make_const("true");
        if (func.name == "occurs") {
            if (func.args.size() != 2) {
                error_at(func.span, "occurs takes an action and a time-step");
                return std::nullopt;
            }
            a.occurs_arg = func.args[0];
            if (a.occurs_arg->kind == Term::Kind::ObjectConst)
                *a.occurs_arg = Term::make_func(a.occurs_arg->name, {});
            a.time = func.args[1];
            return a;
        }
        const FunctionSymbol* f = sig.find_symbol(func.name);
        if (!f) {
            error_at(func.span, "unknown symbol '" + func.name + "'");
            return std::nullopt;
        }
        a.symbol = func.name;
        a.args = std::move(func.args);
        if (f->time_dependent()) {
            if (a.args.empty()) {
                error_at(func.span, "symbol '" + func.name + "' requires a time-step argument");
                return std::nullopt;
            }
            a.time = a.args.back();
            a.args.pop_back();
        }
        return a;
    }

    // An atom or arithmetic atom, as they appear in mechanism bodies and
    // scenario statements.
    std::optional<BodyLiteral> parse_literal(const Signature& sig, bool scenario_pos) {
        if (cur_.type == Tok::KwNeg) {
            SourceSpan span = cur_.span;
            eat();
            auto t = parse_factor(sig);
            if (!t) return std::nullopt;
            if (t->kind != Term::Kind::Func) {
                error_at(span, "'neg' applies to a Boolean atom");
                return std::nullopt;
            }
            auto a = atom_from_func(sig, std::move(*t));
            if (!a) return std::nullopt;
            a->value = Term::make_const("false");
            return BodyLiteral{std::move(*a)};
        }
        auto lhs = parse_expr(sig);
        if (!lhs) return std::nullopt;
        auto rel = current_rel();
        if (!rel) {
            if (lhs->kind == Term::Kind::Func) {
                auto a = atom_from_func(sig, std::move(*lhs));
                if (!a) return std::nullopt;
                return BodyLiteral{std::move(*a)};
            }
            error_at(lhs->span, "expected an atom or comparison");
            return std::nullopt;
        }
        Tok rel_tok = cur_.type;
        eat();
        auto rhs = parse_expr(sig);
        if (!rhs) return std::nullopt;

        bool lhs_named = lhs->kind == Term::Kind::Func && lhs->name != "occurs" &&
                         sig.find_symbol(lhs->name) != nullptr;
        bool eqish = *rel == Rel::Eq || *rel == Rel::Ne;
        bool simple_rhs = rhs->kind == Term::Kind::ObjectConst ||
                          rhs->kind == Term::Kind::Number ||
                          rhs->kind == Term::Kind::AbstractConst ||
                          rhs->kind == Term::Kind::Variable ||
                          (rhs->kind == Term::Kind::Func && rhs->args.empty() &&
                           sig.find_symbol(rhs->name) &&
                           sig.find_symbol(rhs->name)->kind == SymbolKind::Action);
        bool value_atom = lhs_named && eqish && (!scenario_pos || rhs->kind != Term::Kind::Binary);
        if (scenario_pos && value_atom) {
            // fact only when the right side is a plain value; f = g is a
            // constraint between two functional terms
            value_atom = simple_rhs && rhs->kind != Term::Kind::Variable;
        }
        if (value_atom) {
            if (rhs->kind == Term::Kind::Func && !rhs->args.empty() &&
                sig.find_symbol(rhs->name) &&
                sig.find_symbol(rhs->name)->kind != SymbolKind::Action) {
                value_atom = false;  // f(x) = g(y): comparison of two terms
            }
        }
        if (value_atom) {
            auto a = atom_from_func(sig, std::move(*lhs));
            if (!a) return std::nullopt;
            a->neq = *rel == Rel::Ne;
            if (rhs->kind == Term::Kind::ObjectConst && sig.find_symbol(rhs->name) &&
                sig.find_symbol(rhs->name)->kind == SymbolKind::Action)
                *rhs = Term::make_func(rhs->name, {});
            a->value = std::move(*rhs);
            return BodyLiteral{std::move(*a)};
        }
        (void)rel_tok;
        ArithmeticAtom ar;
        ar.span = lhs->span;
        ar.lhs = std::move(*lhs);
        ar.rel = *rel;
        ar.rhs = std::move(*rhs);
        return BodyLiteral{std::move(ar)};
    }

    // ---- mechanisms --------------------------------------------------------

    void parse_mechanism(CausalTheory& th) {
        CausalMechanism m;
        m.span = cur_.span;
        auto name = expect_ident();
        if (!name) return resync();
        m.label = *name;
        if (cur_.type == Tok::LParen) {
            eat();
            while (true) {
                if (cur_.type != Tok::Variable) {
                    error_here("unexpected " + std::string(tok_name(cur_.type)),
                               {tok_name(Tok::Variable)});
                    return resync();
                }
                m.label_params.push_back(cur_.text);
                eat();
                if (cur_.type == Tok::Comma) {
                    eat();
                    continue;
                }
                break;
            }
            if (!expect(Tok::RParen)) return resync();
        }
        if (cur_.type == Tok::KwAt) {
            eat();
            if (cur_.type != Tok::Variable) {
                error_here("unexpected " + std::string(tok_name(cur_.type)),
                           {tok_name(Tok::Variable)});
                return resync();
            }
            m.guard_var = cur_.text;
            eat();
        }
        if (!expect(Tok::Colon)) return resync();
        auto head = parse_literal(th.signature, false);
        if (!head) return resync();
        if (const Atom* ha = std::get_if<Atom>(&*head)) {
            m.head = *ha;
        } else {
            error_at(std::get<ArithmeticAtom>(*head).span, "mechanism head must be an atom");
            return resync();
        }
        if (m.guard_var.empty() && m.head.time && m.head.time->kind == Term::Kind::Variable)
            m.guard_var = m.head.time->name;
        if (!expect(Tok::Arrow)) return resync();
        while (true) {
            auto lit = parse_literal(th.signature, false);
            if (!lit) return resync();
            m.body.push_back(std::move(*lit));
            if (cur_.type == Tok::Comma) {
                eat();
                continue;
            }
            break;
        }
        expect(Tok::Semi);
        th.mechanisms.push_back(std::move(m));
    }

    // ---- scenario ----------------------------------------------------------

    void register_abstracts(Scenario& sc, const Term& t) {
        switch (t.kind) {
            case Term::Kind::AbstractConst:
                if (!sc.find_abstract(t.name)) sc.abstracts.push_back({t.name, false, t.span});
                return;
            case Term::Kind::Func:
            case Term::Kind::Binary:
                for (const auto& a : t.args) register_abstracts(sc, a);
                return;
            default: return;
        }
    }

    void parse_scenario_body(const Signature& sig, Scenario& sc) {
        while (cur_.type != Tok::End) {
            switch (cur_.type) {
                case Tok::KwInit: eat(); parse_init(sig, sc); break;
                case Tok::KwDo: eat(); parse_do(sig, sc); break;
                case Tok::KwObs: eat(); parse_obs(sig, sc); break;
                default: parse_fact_or_constraint(sig, sc); break;
            }
        }
    }

    void parse_init(const Signature& sig, Scenario& sc) {
        if (!expect(Tok::LParen)) return resync();
        while (true) {
            InitAtom init;
            init.span = cur_.span;
            bool negated = false;
            if (cur_.type == Tok::KwNeg) {
                negated = true;
                eat();
            }
            auto t = parse_factor(sig);
            if (!t) return resync();
            if (t->kind != Term::Kind::Func) {
                error_at(t->span, "init requires a fluent");
                return resync();
            }
            init.symbol = t->name;
            init.args = t->args;
            if (negated) {
                init.value = Term::make_const("false");
            } else if (cur_.type == Tok::Eq) {
                eat();
                auto v = parse_expr(sig);
                if (!v) return resync();
                init.value = std::move(*v);
            } else {
                init.value = Term::make_const("true");
            }
            register_abstracts(sc, init.value);
            sc.inits.push_back(std::move(init));
            if (cur_.type == Tok::Comma) {
                eat();
                continue;
            }
            break;
        }
        if (!expect(Tok::RParen)) return resync();
        expect(Tok::Semi);
    }

    void parse_do(const Signature& sig, Scenario& sc) {
        DoAtom d;
        d.span = cur_.span;
        if (!expect(Tok::LParen)) return resync();
        if (cur_.type == Tok::KwNeg) {
            d.positive = false;
            eat();
        }
        auto act = parse_factor(sig);
        if (!act) return resync();
        if (act->kind == Term::Kind::ObjectConst) *act = Term::make_func(act->name, {});
        if (act->kind != Term::Kind::Func) {
            error_at(act->span, "do requires an action");
            return resync();
        }
        const FunctionSymbol* f = sig.find_symbol(act->name);
        if (!f || f->kind != SymbolKind::Action) {
            error_at(act->span, "do requires an action, '" + act->name + "' is not one");
            return resync();
        }
        d.action = std::move(*act);
        if (!expect(Tok::Comma)) return resync();
        auto step = parse_expr(sig);
        if (!step) return resync();
        d.step = std::move(*step);
        register_abstracts(sc, d.step);
        if (!expect(Tok::RParen)) return resync();
        expect(Tok::Semi);
        sc.dos.push_back(std::move(d));
    }

    void parse_obs(const Signature& sig, Scenario& sc) {
        ObsAtom o;
        o.span = cur_.span;
        if (!expect(Tok::LParen)) return resync();
        auto t = parse_factor(sig);
        if (!t) return resync();
        if (t->kind != Term::Kind::Func) {
            error_at(t->span, "obs requires a fluent");
            return resync();
        }
        o.symbol = t->name;
        o.args = t->args;
        if (!expect(Tok::Comma)) return resync();
        auto v = parse_expr(sig);
        if (!v) return resync();
        o.value = std::move(*v);
        if (!expect(Tok::Comma)) return resync();
        auto step = parse_expr(sig);
        if (!step) return resync();
        o.step = std::move(*step);
        register_abstracts(sc, o.step);
        if (!expect(Tok::RParen)) return resync();
        expect(Tok::Semi);
        sc.observations.push_back(std::move(o));
    }

    void parse_fact_or_constraint(const Signature& sig, Scenario& sc) {
        auto lit = parse_literal(sig, true);
        if (!lit) return resync();
        if (Atom* a = std::get_if<Atom>(&*lit)) {
            if (a->occurs_arg) {
                error_at(a->span, "occurs atoms are not scenario facts; use do(...)");
                return resync();
            }
            for (const auto& arg : a->args) register_abstracts(sc, arg);
            register_abstracts(sc, a->value);
            sc.statics.push_back(std::move(*a));
        } else {
            ArithmeticAtom& ar = std::get<ArithmeticAtom>(*lit);
            register_abstracts(sc, ar.lhs);
            register_abstracts(sc, ar.rhs);
            sc.constraints.push_back(std::move(ar));
        }
        expect(Tok::Semi);
    }
};

}  // namespace

ParseResult parse_theory(std::string_view text, const std::string& filename) {
    Parser p(text, filename);
    ParseResult result = p.parse_program();
    if (result.errors.empty()) {
        result.theory.scenario =
            expand_shorthands(result.theory.scenario, result.theory.signature);
        Diagnostics val = validate(result.theory);
        for (auto& d : val) result.errors.push_back(std::move(d));
    }
    return result;
}

ScenarioParseResult parse_scenario(std::string_view text, const Signature& sig,
                                   const std::string& filename) {
    Parser p(text, filename);
    ScenarioParseResult result;
    result.scenario = p.parse_scenario_only(sig, result.errors);
    if (result.errors.empty()) result.scenario = expand_shorthands(result.scenario, sig);
    return result;
}

ObsParseResult parse_obs_atom(std::string_view text, const Signature& sig) {
    std::string stmt(text);
    if (stmt.find(';') == std::string::npos) stmt += ';';
    ScenarioParseResult r = parse_scenario(stmt, sig, "<obs>");
    ObsParseResult out;
    out.errors = r.errors;
    if (!r.errors.empty()) return out;
    if (r.scenario.observations.size() != 1 || !r.scenario.statics.empty() ||
        !r.scenario.dos.empty() || !r.scenario.inits.empty() ||
        !r.scenario.constraints.empty()) {
        out.errors.push_back({{}, "expected a single obs(fluent, value, step) atom", {}});
        return out;
    }
    out.obs = r.scenario.observations[0];
    return out;
}

PatternParseResult parse_change_pattern(std::string_view text, const Signature& sig) {
    PatternParseResult out;
    std::string stmt(text);
    ChangePattern pat;
    pat.text = stmt;
    // Bare fluent/action name.
    bool bare = !stmt.empty();
    for (char c : stmt)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) bare = false;
    if (bare) {
        if (!sig.find_symbol(stmt)) {
            out.errors.push_back({{}, "unknown symbol '" + stmt + "' in change pattern", {}});
            return out;
        }
        pat.symbol = stmt;
        out.pattern = std::move(pat);
        return out;
    }
    ScenarioParseResult r = parse_scenario(stmt + ";", sig, "<pattern>");
    if (!r.errors.empty() || r.scenario.statics.size() != 1) {
        out.errors.push_back({{}, "cannot parse change pattern '" + stmt + "'", {}});
        return out;
    }
    const Atom& a = r.scenario.statics[0];
    const FunctionSymbol* f = sig.find_symbol(a.symbol);
    if (!f) {
        out.errors.push_back({{}, "unknown symbol '" + a.symbol + "' in change pattern", {}});
        return out;
    }
    pat.symbol = a.symbol;
    std::vector<std::string> args;
    for (const auto& t : a.args) args.push_back(t.str());
    pat.args = std::move(args);
    if (a.time && a.time->kind == Term::Kind::Number) pat.step = static_cast<int>(a.time->number);
    // Boolean atoms default to true; an explicit '=' pins the value; bare
    // non-Boolean atoms match changes of any value.
    if (f->value_sort == kBoolSort || stmt.find('=') != std::string::npos)
        pat.value = a.value.str();
    out.pattern = std::move(pat);
    return out;
}

}  // namespace wcausal
