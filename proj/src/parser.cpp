#include "acir/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <map>
#include <set>

namespace acir {

ParseError::ParseError(Kind kind_, int line_, int column_, const std::string& detail)
    : Error("line " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + detail),
      kind(kind_),
      line(line_),
      column(column_) {}

namespace {

constexpr std::array<std::string_view, 11> kKeywords = {
    "fluents", "defaults", "actions", "law",        "initial", "sequence",
    "query",   "causes",   "if",      "impossible", "u",
};

bool is_keyword(std::string_view s) {
    return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

struct Token {
    enum class Type { Ident, Colon, Comma, Semicolon, Dot, LBrace, RBrace, Minus, LParen, RParen, End };
    Type        type;
    std::string text;
    int         line;
    int         column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_trivia();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_.type = Token::Type::End;
            current_.text.clear();
            return;
        }
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                bump();
            current_.type = Token::Type::Ident;
            current_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        switch (c) {
            case ':': current_.type = Token::Type::Colon; break;
            case ',': current_.type = Token::Type::Comma; break;
            case ';': current_.type = Token::Type::Semicolon; break;
            case '.': current_.type = Token::Type::Dot; break;
            case '{': current_.type = Token::Type::LBrace; break;
            case '}': current_.type = Token::Type::RBrace; break;
            case '-': current_.type = Token::Type::Minus; break;
            case '(': current_.type = Token::Type::LParen; break;
            case ')': current_.type = Token::Type::RParen; break;
            default:
                throw ParseError(ParseError::Kind::Syntax, line_, column_,
                                 "unexpected character '" + std::string(1, c) + "'");
        }
        current_.text = std::string(1, c);
        bump();
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t      pos_{0};
    int              line_{1};
    int              column_{1};
    Token            current_{};
};

[[noreturn]] void syntax_error(const Token& t, const std::string& expected) {
    std::string got = t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(ParseError::Kind::Syntax, t.line, t.column,
                     "expected " + expected + ", got " + got);
}

// Raw (unresolved) statement forms collected by the first pass.
struct RawLit {
    std::string name;
    bool        positive;
    int         line, column;
};
struct RawExt {
    std::string name;
    Tri         value;  // Unknown for u(name)
    int         line, column;
};
struct RawLaw {
    Law::Kind           kind;
    std::string         action;  // Dynamic / Executability
    int                 action_line{0}, action_column{0};
    RawExt              head;  // Dynamic consequence / constraint head
    std::vector<RawLit> conditions;
};
struct RawName {
    std::string name;
    int         line, column;
};

struct RawDocument {
    std::vector<RawName>              fluents;
    std::vector<RawName>              defaults;
    std::vector<RawName>              actions;
    std::vector<RawLaw>               laws;
    std::vector<RawLit>               initial;
    std::vector<std::vector<RawName>> sequence;
    bool has_fluents{false}, has_defaults{false}, has_actions{false}, has_initial{false},
        has_sequence{false};
};

class SourceParser {
public:
    explicit SourceParser(std::string_view text) : lex_(text) {}

    RawDocument parse() {
        RawDocument doc;
        while (lex_.peek().type != Token::Type::End) statement(doc);
        return doc;
    }

private:
    Token expect(Token::Type type, const std::string& what) {
        if (lex_.peek().type != type) syntax_error(lex_.peek(), what);
        return lex_.take();
    }

    RawName identifier(const std::string& what) {
        Token t = expect(Token::Type::Ident, what);
        if (is_keyword(t.text))
            throw ParseError(ParseError::Kind::Syntax, t.line, t.column,
                             "reserved word '" + t.text + "' used as " + what);
        return RawName{t.text, t.line, t.column};
    }

    RawLit literal() {
        bool positive = true;
        if (lex_.peek().type == Token::Type::Minus) {
            lex_.take();
            positive = false;
        }
        RawName n = identifier("fluent name");
        return RawLit{n.name, positive, n.line, n.column};
    }

    // <lit> | u(<id>); only dynamic-law consequences may use u(·).
    RawExt extended_literal() {
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Ident && t.text == "u") {
            Token u = lex_.take();
            expect(Token::Type::LParen, "'(' after u");
            RawName n = identifier("fluent name");
            expect(Token::Type::RParen, "')'");
            return RawExt{n.name, Tri::Unknown, u.line, u.column};
        }
        RawLit l = literal();
        return RawExt{l.name, l.positive ? Tri::True : Tri::False, l.line, l.column};
    }

    std::vector<RawName> name_list() {
        std::vector<RawName> out{identifier("name")};
        while (lex_.peek().type == Token::Type::Comma) {
            lex_.take();
            out.push_back(identifier("name"));
        }
        return out;
    }

    std::vector<RawLit> literal_list() {
        std::vector<RawLit> out{literal()};
        while (lex_.peek().type == Token::Type::Comma) {
            lex_.take();
            out.push_back(literal());
        }
        return out;
    }

    void section_once(bool& flag, const Token& t) {
        if (flag)
            throw ParseError(ParseError::Kind::DuplicateDeclaration, t.line, t.column,
                             "duplicate section '" + t.text + "'");
        flag = true;
    }

    void statement(RawDocument& doc) {
        Token head = expect(Token::Type::Ident, "a section keyword");
        expect(Token::Type::Colon, "':'");
        if (head.text == "fluents") {
            section_once(doc.has_fluents, head);
            doc.fluents = name_list();
        } else if (head.text == "defaults") {
            section_once(doc.has_defaults, head);
            if (lex_.peek().type != Token::Type::Dot) doc.defaults = name_list();
        } else if (head.text == "actions") {
            section_once(doc.has_actions, head);
            doc.actions = name_list();
        } else if (head.text == "law") {
            doc.laws.push_back(law());
        } else if (head.text == "initial") {
            section_once(doc.has_initial, head);
            if (lex_.peek().type != Token::Type::Dot) doc.initial = literal_list();
        } else if (head.text == "sequence") {
            section_once(doc.has_sequence, head);
            if (lex_.peek().type != Token::Type::Dot) sequence(doc);
        } else if (head.text == "query") {
            throw ParseError(ParseError::Kind::Syntax, head.line, head.column,
                             "'query' belongs in a .acq file, not a source document");
        } else {
            syntax_error(head, "one of fluents/defaults/actions/law/initial/sequence");
        }
        expect(Token::Type::Dot, "'.'");
    }

    RawLaw law() {
        RawLaw out;
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Ident && t.text == "impossible") {
            lex_.take();
            out.kind = Law::Kind::Executability;
            RawName act = identifier("action name");
            out.action = act.name;
            out.action_line = act.line;
            out.action_column = act.column;
            Token kw = expect(Token::Type::Ident, "'if'");
            if (kw.text != "if") syntax_error(kw, "'if'");
            out.conditions = literal_list();
            return out;
        }
        if (t.type == Token::Type::Minus) {
            // A negated head can only start a state constraint.
            RawLit head = literal();
            out.kind = Law::Kind::StateConstraint;
            out.head = RawExt{head.name, Tri::False, head.line, head.column};
            Token kw = expect(Token::Type::Ident, "'if'");
            if (kw.text != "if") syntax_error(kw, "'if'");
            out.conditions = literal_list();
            return out;
        }
        RawName first = identifier("action or fluent name");
        Token next = expect(Token::Type::Ident, "'causes' or 'if'");
        if (next.text == "causes") {
            out.kind = Law::Kind::Dynamic;
            out.action = first.name;
            out.action_line = first.line;
            out.action_column = first.column;
            out.head = extended_literal();
            if (lex_.peek().type == Token::Type::Ident && lex_.peek().text == "if") {
                lex_.take();
                out.conditions = literal_list();
            }
            return out;
        }
        if (next.text == "if") {
            out.kind = Law::Kind::StateConstraint;
            out.head = RawExt{first.name, Tri::True, first.line, first.column};
            out.conditions = literal_list();
            return out;
        }
        syntax_error(next, "'causes' or 'if'");
    }

    void sequence(RawDocument& doc) {
        doc.sequence.push_back(step());
        while (lex_.peek().type == Token::Type::Semicolon) {
            lex_.take();
            doc.sequence.push_back(step());
        }
    }

    std::vector<RawName> step() {
        if (lex_.peek().type == Token::Type::LBrace) {
            lex_.take();
            std::vector<RawName> ids = name_list();
            expect(Token::Type::RBrace, "'}'");
            return ids;
        }
        return {identifier("action name")};
    }

    Lexer lex_;
};

// ── Resolution ──────────────────────────────────────────────────────────────

FluentId resolve_fluent(const Signature& sig, const RawName& n) {
    if (auto id = sig.fluent_index(n.name)) return *id;
    throw ParseError(ParseError::Kind::UnknownSymbol, n.line, n.column,
                     "unknown fluent '" + n.name + "'");
}

ActionId resolve_action(const Signature& sig, const std::string& name, int line, int column) {
    if (auto id = sig.action_index(name)) return *id;
    throw ParseError(ParseError::Kind::UnknownSymbol, line, column,
                     "unknown action '" + name + "'");
}

Source resolve(const RawDocument& doc, std::string id) {
    auto require = [&](bool present, const char* section) {
        if (!present)
            throw ParseError(ParseError::Kind::Syntax, 1, 1,
                             std::string("missing section '") + section + "'");
    };
    require(doc.has_fluents, "fluents");
    require(doc.has_actions, "actions");
    require(doc.has_initial, "initial");
    require(doc.has_sequence, "sequence");

    std::set<std::string> declared;
    auto declare = [&](const RawName& n, const char* what) {
        if (!declared.insert(n.name).second)
            throw ParseError(ParseError::Kind::DuplicateDeclaration, n.line, n.column,
                             std::string("duplicate ") + what + " '" + n.name + "'");
    };
    std::vector<std::string> fluent_names, action_names;
    for (const RawName& n : doc.fluents) {
        declare(n, "declaration");
        fluent_names.push_back(n.name);
    }
    for (const RawName& n : doc.actions) {
        declare(n, "declaration");
        action_names.push_back(n.name);
    }

    Source src;
    src.id = std::move(id);
    src.signature = Signature(std::move(fluent_names), std::move(action_names));

    for (const RawName& n : doc.defaults) src.defaults.push_back(resolve_fluent(src.signature, n));
    canonicalize(src.defaults);

    for (const RawLaw& raw : doc.laws) {
        Law law;
        law.kind = raw.kind;
        if (raw.kind != Law::Kind::StateConstraint)
            law.action =
                resolve_action(src.signature, raw.action, raw.action_line, raw.action_column);
        if (raw.kind != Law::Kind::Executability) {
            law.consequence =
                ExtLit{resolve_fluent(src.signature, RawName{raw.head.name, raw.head.line,
                                                             raw.head.column}),
                       raw.head.value};
        }
        for (const RawLit& c : raw.conditions)
            law.conditions.push_back(
                FluentLiteral{resolve_fluent(src.signature, RawName{c.name, c.line, c.column}),
                              c.positive});
        canonicalize_conditions(law.conditions);
        src.description.laws.push_back(std::move(law));
    }
    src.description.canonicalize();

    std::map<FluentId, bool> signs;
    for (const RawLit& l : doc.initial) {
        FluentId f = resolve_fluent(src.signature, RawName{l.name, l.line, l.column});
        auto [it, inserted] = signs.emplace(f, l.positive);
        if (!inserted && it->second != l.positive)
            throw ParseError(ParseError::Kind::InconsistentInitial, l.line, l.column,
                             "inconsistent initial set: '" + l.name + "' and its complement");
    }
    for (auto [f, positive] : signs) src.initial.push_back(FluentLiteral{f, positive});

    for (const std::vector<RawName>& raw_step : doc.sequence) {
        Action a;
        for (const RawName& n : raw_step)
            a.push_back(resolve_action(src.signature, n.name, n.line, n.column));
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        src.sequence.push_back(std::move(a));
    }
    return src;
}

}  // namespace

Source parse_source(std::string_view text, std::string id) {
    SourceParser parser(text);
    return resolve(parser.parse(), std::move(id));
}

SourceDocument parse_document(std::string text, const std::string& path) {
    SourceDocument doc;
    doc.path = path;
    doc.source = parse_source(text, std::filesystem::path(path).stem().string());
    doc.text = std::move(text);
    return doc;
}

Query parse_query(std::string_view text) {
    Lexer lex(text);
    Token head = lex.take();
    if (head.type != Token::Type::Ident || head.text != "query") syntax_error(head, "'query'");
    if (lex.peek().type != Token::Type::Colon) syntax_error(lex.peek(), "':'");
    lex.take();
    if (lex.peek().type == Token::Type::Minus) {
        const Token& t = lex.peek();
        throw ParseError(ParseError::Kind::NegatedQuery, t.line, t.column,
                         "a query is a fluent; negation is not allowed");
    }
    Token name = lex.take();
    if (name.type != Token::Type::Ident) syntax_error(name, "fluent name");
    if (is_keyword(name.text))
        throw ParseError(ParseError::Kind::Syntax, name.line, name.column,
                         "reserved word '" + name.text + "' used as fluent name");
    if (lex.peek().type != Token::Type::Dot) syntax_error(lex.peek(), "'.'");
    lex.take();
    if (lex.peek().type != Token::Type::End) syntax_error(lex.peek(), "end of input");
    return Query{name.text};
}

// ── Serialization ───────────────────────────────────────────────────────────

namespace {

std::string law_to_string(const Signature& sig, const Law& law) {
    std::string out = "law: ";
    switch (law.kind) {
        case Law::Kind::Dynamic:
            out += sig.action_name(law.action) + " causes " + ext_to_string(sig, law.consequence);
            if (!law.conditions.empty()) out += " if";
            break;
        case Law::Kind::StateConstraint:
            out += ext_to_string(sig, law.consequence) + " if";
            break;
        case Law::Kind::Executability:
            out += "impossible " + sig.action_name(law.action) + " if";
            break;
    }
    for (std::size_t i = 0; i < law.conditions.size(); ++i)
        out += (i ? ", " : " ") + literal_to_string(sig, law.conditions[i]);
    out += ".";
    return out;
}

void append_name_list(std::string& out, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : " ") + names[i];
}

}  // namespace

std::string serialize_source(const Source& s) {
    std::string out;
    if (!s.id.empty()) out += "# source: " + s.id + "\n";

    auto end_section = [&](bool empty) { out += empty ? " .\n" : ".\n"; };

    out += "fluents:";
    append_name_list(out, s.signature.fluent_names());
    end_section(s.signature.fluent_count() == 0);
    out += "defaults:";
    std::vector<std::string> defaults;
    for (FluentId f : s.defaults) defaults.push_back(s.signature.fluent_name(f));
    append_name_list(out, defaults);
    end_section(defaults.empty());
    out += "actions:";
    append_name_list(out, s.signature.action_names());
    end_section(s.signature.action_count() == 0);

    ActionDescription canon = s.description;
    canon.canonicalize();
    for (const Law& law : canon.laws) out += law_to_string(s.signature, law) + "\n";

    out += "initial:";
    for (std::size_t i = 0; i < s.initial.size(); ++i)
        out += (i ? ", " : " ") + literal_to_string(s.signature, s.initial[i]);
    end_section(s.initial.empty());
    out += "sequence:";
    for (std::size_t i = 0; i < s.sequence.size(); ++i) {
        out += i ? "; " : " ";
        out += action_to_string(s.signature, s.sequence[i]);
    }
    end_section(s.sequence.empty());
    return out;
}

std::string serialize_query(const Query& q) { return "query: " + q.fluent + ".\n"; }

}  // namespace acir
