#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace univsim::dsl {

struct Span {
    std::uint32_t line = 0, col = 0;      // 1-based start
    std::uint32_t end_line = 0, end_col = 0;  // 1-based, exclusive column
};

struct Diagnostic {
    std::string code;  // E-LEX, E-SYNTAX, E-EOF, E-DUP, E-REF, E-ELEM, E-TYPE, E-VALUE, E-KEY
    std::string message;
    Span span;
};
std::string format_diagnostic(const Diagnostic& d, std::string_view file = "");

// A word with its position; equality ignores the position.
struct Word {
    std::string text;
    Span span;
    friend bool operator==(const Word& a, const Word& b) { return a.text == b.text; }
};

// `a`, `(a,b)` or `()`
struct ElemRef {
    std::vector<Word> parts;
    bool tuple = false;
    Span span;
    friend bool operator==(const ElemRef& a, const ElemRef& b) { return a.parts == b.parts && a.tuple == b.tuple; }
};

// `I` or `A*B*C`
struct TypeExpr {
    std::vector<Word> factors;  // empty for I
    Span span;
    friend bool operator==(const TypeExpr& a, const TypeExpr& b) { return a.factors == b.factors; }
};

struct Field {
    Word key;
    std::vector<Word> values;
    friend bool operator==(const Field& a, const Field& b) { return a.key == b.key && a.values == b.values; }
};

struct SetDecl {
    std::vector<Word> elems;
    friend bool operator==(const SetDecl&, const SetDecl&) = default;
};

struct RelDecl {
    TypeExpr dom, cod;
    std::vector<std::pair<ElemRef, ElemRef>> pairs;
    friend bool operator==(const RelDecl&, const RelDecl&) = default;
};

struct PreorderDecl {
    Word carrier;
    std::vector<std::pair<Word, Word>> edges;  // first >= second
    friend bool operator==(const PreorderDecl&, const PreorderDecl&) = default;
};

// tcc, simulator, processing, preset and check bodies are keyword fields
struct FieldsDecl {
    std::optional<Word> on;  // instance for simulator, processing
    std::vector<Field> fields;
    friend bool operator==(const FieldsDecl&, const FieldsDecl&) = default;
};

struct AtomMapDecl {
    Word from, to;
    std::vector<std::pair<Word, Word>> pairs;
    friend bool operator==(const AtomMapDecl&, const AtomMapDecl&) = default;
};

struct FunctorDecl {
    Word source, target;
    std::vector<AtomMapDecl> maps;
    friend bool operator==(const FunctorDecl&, const FunctorDecl&) = default;
};

struct FacetDecl {
    std::vector<Word> vertices;
    std::vector<Word> values;
    friend bool operator==(const FacetDecl&, const FacetDecl&) = default;
};

struct SpinDecl {
    std::optional<Word> field;  // `field n` shorthand
    std::vector<Word> vertices;
    std::optional<Word> levels, delta;
    std::vector<FacetDecl> facets;
    friend bool operator==(const SpinDecl&, const SpinDecl&) = default;
};

struct PhiDecl {
    Word on;
    bool spectrum = false;
    std::vector<std::pair<Word, Word>> values;
    std::optional<Word> empty;
    friend bool operator==(const PhiDecl&, const PhiDecl&) = default;
};

enum class Kind { set, rel, preorder, tcc, simulator, processing, functor, spin, phi, preset, check };
const char* kind_name(Kind k);

using Body = std::variant<SetDecl, RelDecl, PreorderDecl, FieldsDecl, FunctorDecl, SpinDecl, PhiDecl>;

struct Block {
    Kind kind = Kind::set;
    Word name;
    Body body;
    Span span;
    friend bool operator==(const Block& a, const Block& b) {
        return a.kind == b.kind && a.name == b.name && a.body == b.body;
    }
};

struct Document {
    std::vector<Block> blocks;
    friend bool operator==(const Document& a, const Document& b) { return a.blocks == b.blocks; }
};

struct ParseResult {
    Document doc;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};

ParseResult parse(std::string_view text);
std::string serialize(const Document& doc);
// True when the word survives a serialize/parse trip as a single word.
bool is_plain_word(std::string_view w);

// Keys accepted in field bodies, in canonical order.
const std::vector<std::string>& field_keys(Kind k);

}  // namespace univsim::dsl
