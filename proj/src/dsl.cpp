#include "dsl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace univsim::dsl {

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::set: return "set";
    case Kind::rel: return "rel";
    case Kind::preorder: return "preorder";
    case Kind::tcc: return "tcc";
    case Kind::simulator: return "simulator";
    case Kind::processing: return "processing";
    case Kind::functor: return "functor";
    case Kind::spin: return "spin";
    case Kind::phi: return "phi";
    case Kind::preset: return "preset";
    case Kind::check: return "check";
    }
    return "?";
}

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
    std::ostringstream os;
    if (!file.empty()) os << file << ":";
    os << d.span.line << ":" << d.span.col << ": " << d.code << ": " << d.message;
    return os.str();
}

namespace {

struct KeySpec {
    const char* key;
    int arity;  // -1: any number of words up to the next key
};

const std::vector<KeySpec>& key_specs(Kind k) {
    static const std::vector<KeySpec> tcc{{"targets", 1}, {"contexts", 1}, {"behaviors", 1},
                                          {"eval", 1},    {"order", 1},    {"spin", -1}};
    static const std::vector<KeySpec> sim{{"trivial", 0}, {"compiler", 1}, {"contexts", 1}};
    static const std::vector<KeySpec> proc{{"target", 1}, {"context", 1}};
    static const std::vector<KeySpec> preset{{"kind", 1}, {"args", -1}};
    static const std::vector<KeySpec> check{{"run", -1}, {"expect", 1}};
    static const std::vector<KeySpec> none;
    switch (k) {
    case Kind::tcc: return tcc;
    case Kind::simulator: return sim;
    case Kind::processing: return proc;
    case Kind::preset: return preset;
    case Kind::check: return check;
    default: return none;
    }
}

// ---- lexer ----

enum class Tok { word, lbrace, rbrace, lparen, rparen, comma, colon, arrow, geq, eq, star, eof };

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::word: return "word";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::colon: return "':'";
    case Tok::arrow: return "'->'";
    case Tok::geq: return "'>='";
    case Tok::eq: return "'='";
    case Tok::star: return "'*'";
    case Tok::eof: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    Span span;
};

bool word_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '\'' || c == '@' || c == '^' || c == '+' || c == '-' ||
           c == '/' || c == '|' || c == '!' || c == '?' || c == '%' || c == '&' || c == '~' || c >= 0x80;
}

class Lexer {
public:
    Lexer(std::string_view src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Span sp{line_, col_, line_, col_};
            if (pos_ >= src_.size()) {
                out.push_back({Tok::eof, "", sp});
                return out;
            }
            unsigned char c = static_cast<unsigned char>(src_[pos_]);
            auto single = [&](Tok t) {
                advance();
                sp.end_line = line_;
                sp.end_col = col_;
                out.push_back({t, std::string(1, static_cast<char>(c)), sp});
            };
            if (c == '-' && peek(1) == '>') {
                advance();
                advance();
                out.push_back({Tok::arrow, "->", {sp.line, sp.col, line_, col_}});
            } else if (c == '>' && peek(1) == '=') {
                advance();
                advance();
                out.push_back({Tok::geq, ">=", {sp.line, sp.col, line_, col_}});
            } else if (c == '{') {
                single(Tok::lbrace);
            } else if (c == '}') {
                single(Tok::rbrace);
            } else if (c == '(') {
                single(Tok::lparen);
            } else if (c == ')') {
                single(Tok::rparen);
            } else if (c == ',') {
                single(Tok::comma);
            } else if (c == ':') {
                single(Tok::colon);
            } else if (c == '=') {
                single(Tok::eq);
            } else if (c == '*') {
                single(Tok::star);
            } else if (word_char(c)) {
                std::string w;
                while (pos_ < src_.size()) {
                    unsigned char d = static_cast<unsigned char>(src_[pos_]);
                    if (!word_char(d) || (d == '-' && peek(1) == '>')) break;
                    w.push_back(static_cast<char>(d));
                    advance();
                }
                out.push_back({Tok::word, std::move(w), {sp.line, sp.col, line_, col_}});
            } else {
                advance();
                sp.end_line = line_;
                sp.end_col = col_;
                std::string shown = c >= 0x20 && c < 0x7f ? std::string(1, static_cast<char>(c)) : "\\x" + hex(c);
                diags_.push_back({"E-LEX", "unexpected character '" + shown + "'", sp});
            }
        }
    }

private:
    static std::string hex(unsigned char c) {
        const char* d = "0123456789abcdef";
        return {d[c >> 4], d[c & 15]};
    }
    char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1, col_ = 1;
};

// ---- parser ----

struct Bail {};

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : t_(std::move(toks)), diags_(diags) {}

    Document run() {
        Document doc;
        while (cur().kind != Tok::eof) {
            std::size_t start = i_;
            try {
                doc.blocks.push_back(block());
            } catch (const Bail&) {
                recover(start);
            }
        }
        return doc;
    }

private:
    const Token& cur() const { return t_[i_]; }
    const Token& next() { return t_[i_ < t_.size() - 1 ? i_++ : i_]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool at_word(std::string_view w) const { return at(Tok::word) && cur().text == w; }

    [[noreturn]] void error(const std::string& code, const std::string& msg, const Span& sp) {
        diags_.push_back({code, msg, sp});
        throw Bail{};
    }
    [[noreturn]] void unexpected(const std::string& wanted) {
        if (at(Tok::eof)) error("E-EOF", "unexpected end of input, expected " + wanted, cur().span);
        std::string got = at(Tok::word) ? "'" + cur().text + "'" : tok_name(cur().kind);
        error("E-SYNTAX", "expected " + wanted + ", found " + got, cur().span);
    }
    Token expect(Tok k) {
        if (!at(k)) unexpected(tok_name(k));
        return next();
    }
    Word word(const std::string& what) {
        if (!at(Tok::word)) unexpected(what);
        const Token& t = next();
        return {t.text, t.span};
    }
    void keyword(std::string_view kw) {
        if (!at_word(kw)) unexpected("'" + std::string(kw) + "'");
        next();
    }

    // skip past the rest of a broken block: to the brace closing the first opened one
    void recover(std::size_t start) {
        i_ = std::max(i_, start + 1);
        if (i_ >= t_.size()) i_ = t_.size() - 1;
        int depth = 0;
        for (std::size_t k = start; k < i_; ++k) {
            if (t_[k].kind == Tok::lbrace) ++depth;
            if (t_[k].kind == Tok::rbrace) --depth;
        }
        while (!at(Tok::eof)) {
            if (at(Tok::lbrace)) ++depth;
            if (at(Tok::rbrace)) {
                --depth;
                if (depth <= 0) {
                    next();
                    return;
                }
            }
            if (depth <= 0 && at(Tok::word) && is_block_keyword(cur().text) && i_ > start) return;
            next();
        }
    }

    static bool is_block_keyword(const std::string& w) {
        static const char* kws[] = {"set", "rel", "preorder", "tcc", "simulator", "processing",
                                    "functor", "spin", "phi", "preset", "check"};
        return std::any_of(std::begin(kws), std::end(kws), [&](const char* k) { return w == k; });
    }

    Block block() {
        if (!at(Tok::word)) unexpected("a block keyword");
        const Token kw = next();
        static const std::map<std::string, Kind> kinds{
            {"set", Kind::set},           {"rel", Kind::rel},         {"preorder", Kind::preorder},
            {"tcc", Kind::tcc},           {"simulator", Kind::simulator}, {"processing", Kind::processing},
            {"functor", Kind::functor},   {"spin", Kind::spin},       {"phi", Kind::phi},
            {"preset", Kind::preset},     {"check", Kind::check}};
        auto it = kinds.find(kw.text);
        if (it == kinds.end()) error("E-SYNTAX", "unknown block kind '" + kw.text + "'", kw.span);
        Block b;
        b.kind = it->second;
        b.name = word("a name");
        switch (b.kind) {
        case Kind::set: b.body = set_body(); break;
        case Kind::rel: b.body = rel_body(); break;
        case Kind::preorder: b.body = preorder_body(); break;
        case Kind::tcc:
        case Kind::preset:
        case Kind::check: b.body = fields_body(b.kind, false); break;
        case Kind::simulator:
        case Kind::processing: b.body = fields_body(b.kind, true); break;
        case Kind::functor: b.body = functor_body(); break;
        case Kind::spin: b.body = spin_body(); break;
        case Kind::phi: b.body = phi_body(); break;
        }
        b.span = {kw.span.line, kw.span.col, t_[i_ - 1].span.end_line, t_[i_ - 1].span.end_col};
        return b;
    }

    std::vector<Word> word_list() {
        expect(Tok::lbrace);
        std::vector<Word> out;
        while (!at(Tok::rbrace)) out.push_back(word("a word or '}'"));
        next();
        return out;
    }

    SetDecl set_body() { return {word_list()}; }

    TypeExpr type_expr() {
        TypeExpr t;
        Word first = word("a set name or I");
        t.span = first.span;
        if (first.text == "I") return t;
        t.factors.push_back(first);
        while (at(Tok::star)) {
            next();
            Word w = word("a set name");
            if (w.text == "I") continue;  // I is a strict unit
            t.factors.push_back(w);
        }
        t.span.end_line = t_[i_ - 1].span.end_line;
        t.span.end_col = t_[i_ - 1].span.end_col;
        return t;
    }

    ElemRef elem() {
        ElemRef e;
        e.span = cur().span;
        if (at(Tok::lparen)) {
            next();
            e.tuple = true;
            if (!at(Tok::rparen)) {
                e.parts.push_back(word("an element"));
                while (at(Tok::comma)) {
                    next();
                    e.parts.push_back(word("an element"));
                }
            }
            expect(Tok::rparen);
            // a one-tuple is the element itself
            if (e.parts.size() == 1) e.tuple = false;
        } else {
            e.parts.push_back(word("an element"));
        }
        e.span.end_line = t_[i_ - 1].span.end_line;
        e.span.end_col = t_[i_ - 1].span.end_col;
        return e;
    }

    RelDecl rel_body() {
        RelDecl r;
        expect(Tok::colon);
        r.dom = type_expr();
        expect(Tok::arrow);
        r.cod = type_expr();
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            ElemRef a = elem();
            expect(Tok::arrow);
            ElemRef x = elem();
            r.pairs.emplace_back(std::move(a), std::move(x));
        }
        next();
        return r;
    }

    PreorderDecl preorder_body() {
        PreorderDecl p;
        keyword("on");
        p.carrier = word("a set name");
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            Word a = word("an element");
            expect(Tok::geq);
            Word b = word("an element");
            p.edges.emplace_back(std::move(a), std::move(b));
        }
        next();
        return p;
    }

    FieldsDecl fields_body(Kind k, bool on) {
        FieldsDecl f;
        if (on) {
            keyword("on");
            f.on = word("an instance name");
        }
        const auto& specs = key_specs(k);
        auto spec_of = [&](const std::string& w) -> const KeySpec* {
            for (const auto& s : specs)
                if (w == s.key) return &s;
            return nullptr;
        };
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            Word key = word("a field name");
            const KeySpec* s = spec_of(key.text);
            if (!s) {
                std::string allowed;
                for (const auto& x : specs) allowed += std::string(allowed.empty() ? "" : ", ") + x.key;
                error("E-KEY", "unknown field '" + key.text + "' in " + kind_name(k) + " (allowed: " + allowed + ")",
                      key.span);
            }
            for (const auto& prev : f.fields)
                if (prev.key.text == key.text) error("E-DUP", "field '" + key.text + "' given twice", key.span);
            Field fld{key, {}};
            if (s->arity < 0) {
                while (at(Tok::word) && !spec_of(cur().text)) fld.values.push_back(word("a value"));
            } else {
                for (int n = 0; n < s->arity; ++n) fld.values.push_back(word("a value for '" + key.text + "'"));
            }
            f.fields.push_back(std::move(fld));
        }
        next();
        // canonical key order
        std::stable_sort(f.fields.begin(), f.fields.end(), [&](const Field& a, const Field& b) {
            return spec_of(a.key.text) < spec_of(b.key.text);
        });
        return f;
    }

    FunctorDecl functor_body() {
        FunctorDecl f;
        expect(Tok::colon);
        f.source = word("an instance name");
        expect(Tok::arrow);
        f.target = word("an instance name");
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            keyword("map");
            AtomMapDecl m;
            m.from = word("a set name");
            expect(Tok::arrow);
            m.to = word("a set name");
            expect(Tok::lbrace);
            while (!at(Tok::rbrace)) {
                Word a = word("an element");
                expect(Tok::arrow);
                Word b = word("an element");
                m.pairs.emplace_back(std::move(a), std::move(b));
            }
            next();
            f.maps.push_back(std::move(m));
        }
        next();
        return f;
    }

    SpinDecl spin_body() {
        SpinDecl s;
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            Word key = word("'field', 'vertices', 'levels', 'delta' or 'facet'");
            auto once = [&](bool given) {
                if (given) error("E-DUP", "'" + key.text + "' given twice", key.span);
            };
            if (key.text == "field") {
                once(s.field.has_value());
                s.field = word("a size");
            } else if (key.text == "vertices") {
                once(!s.vertices.empty());
                s.vertices = word_list();
            } else if (key.text == "levels") {
                once(s.levels.has_value());
                s.levels = word("a number of levels");
            } else if (key.text == "delta") {
                once(s.delta.has_value());
                s.delta = word("a threshold");
            } else if (key.text == "facet") {
                FacetDecl f;
                f.vertices = word_list();
                f.values = word_list();
                s.facets.push_back(std::move(f));
            } else {
                error("E-KEY", "unknown spin field '" + key.text + "'", key.span);
            }
        }
        next();
        return s;
    }

    PhiDecl phi_body() {
        PhiDecl p;
        keyword("on");
        p.on = word("an instance name");
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            Word key = word("a target, 'empty' or 'spectrum'");
            if (key.text == "spectrum" && !at(Tok::eq)) {
                p.spectrum = true;
                continue;
            }
            expect(Tok::eq);
            Word v = word("a value");
            if (key.text == "empty") {
                if (p.empty) error("E-DUP", "'empty' given twice", key.span);
                p.empty = v;
            } else {
                p.values.emplace_back(std::move(key), std::move(v));
            }
        }
        next();
        return p;
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
    std::vector<Diagnostic>& diags_;
};

std::string elem_text(const ElemRef& e) {
    if (!e.tuple) return e.parts.empty() ? "()" : e.parts[0].text;
    std::string s = "(";
    for (std::size_t i = 0; i < e.parts.size(); ++i) s += (i ? "," : "") + e.parts[i].text;
    return s + ")";
}

std::string type_text(const TypeExpr& t) {
    if (t.factors.empty()) return "I";
    std::string s;
    for (std::size_t i = 0; i < t.factors.size(); ++i) s += (i ? "*" : "") + t.factors[i].text;
    return s;
}

std::string words(const std::vector<Word>& ws) {
    std::string s;
    for (const auto& w : ws) s += " " + w.text;
    return s;
}

}  // namespace

const std::vector<std::string>& field_keys(Kind k) {
    static std::map<Kind, std::vector<std::string>> cache;
    auto& v = cache[k];
    if (v.empty())
        for (const auto& s : key_specs(k)) v.push_back(s.key);
    return v;
}

ParseResult parse(std::string_view text) {
    ParseResult r;
    Lexer lx(text, r.diagnostics);
    std::vector<Token> toks = lx.run();
    Parser p(std::move(toks), r.diagnostics);
    r.doc = p.run();
    return r;
}

bool is_plain_word(std::string_view w) {
    std::vector<Diagnostic> d;
    Lexer lx(w, d);
    auto toks = lx.run();
    return d.empty() && toks.size() == 2 && toks[0].kind == Tok::word && toks[0].text == w;
}

std::string serialize(const Document& doc) {
    std::ostringstream os;
    bool first = true;
    for (const auto& b : doc.blocks) {
        if (!first) os << "\n";
        first = false;
        os << kind_name(b.kind) << " " << b.name.text;
        std::visit(
            [&](const auto& body) {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, SetDecl>) {
                    os << " {" << words(body.elems) << " }\n";
                } else if constexpr (std::is_same_v<T, RelDecl>) {
                    os << " : " << type_text(body.dom) << " -> " << type_text(body.cod) << " {";
                    if (body.pairs.empty()) {
                        os << " }\n";
                    } else {
                        os << "\n";
                        for (const auto& [a, x] : body.pairs) os << "  " << elem_text(a) << " -> " << elem_text(x) << "\n";
                        os << "}\n";
                    }
                } else if constexpr (std::is_same_v<T, PreorderDecl>) {
                    os << " on " << body.carrier.text << " {";
                    for (const auto& [a, x] : body.edges) os << " " << a.text << " >= " << x.text;
                    os << " }\n";
                } else if constexpr (std::is_same_v<T, FieldsDecl>) {
                    if (body.on) os << " on " << body.on->text;
                    os << " {\n";
                    for (const auto& f : body.fields) os << "  " << f.key.text << words(f.values) << "\n";
                    os << "}\n";
                } else if constexpr (std::is_same_v<T, FunctorDecl>) {
                    os << " : " << body.source.text << " -> " << body.target.text << " {\n";
                    for (const auto& m : body.maps) {
                        os << "  map " << m.from.text << " -> " << m.to.text << " {";
                        for (const auto& [a, x] : m.pairs) os << " " << a.text << " -> " << x.text;
                        os << " }\n";
                    }
                    os << "}\n";
                } else if constexpr (std::is_same_v<T, SpinDecl>) {
                    os << " {\n";
                    if (body.field) os << "  field " << body.field->text << "\n";
                    if (!body.vertices.empty()) os << "  vertices {" << words(body.vertices) << " }\n";
                    if (body.levels) os << "  levels " << body.levels->text << "\n";
                    if (body.delta) os << "  delta " << body.delta->text << "\n";
                    for (const auto& f : body.facets)
                        os << "  facet {" << words(f.vertices) << " } {" << words(f.values) << " }\n";
                    os << "}\n";
                } else if constexpr (std::is_same_v<T, PhiDecl>) {
                    os << " on " << body.on.text << " {\n";
                    if (body.spectrum) os << "  spectrum\n";
                    for (const auto& [t, v] : body.values) os << "  " << t.text << " = " << v.text << "\n";
                    if (body.empty) os << "  empty = " << body.empty->text << "\n";
                    os << "}\n";
                }
            },
            b.body);
    }
    return os.str();
}

}  // namespace univsim::dsl
