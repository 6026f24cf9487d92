// ============================================================================
// acir/parser.hpp — concrete syntax for sources (.acir) and queries (.acq)
// ============================================================================
//
// Line-oriented, LL(1); `#` starts a comment, every statement ends with `.`:
//
//     fluents: m, ab.
//     defaults: ab.
//     actions: d, w.
//     law: w causes m.
//     law: m if w_done, -ab.
//     law: impossible d if m, -ab.
//     law: fd causes u(m).
//     initial: .
//     sequence: d; {fd, w}.
//
// Negation is `-`, a non-deterministic consequence is `u(<fluent>)`, a
// sequence step is a single action name or a braced set.  Query files hold a
// single statement `query: <fluent>.`.  Identifiers are [A-Za-z][A-Za-z0-9_]*;
// the keywords (fluents, defaults, actions, law, initial, sequence, query,
// causes, if, impossible, u) are reserved.
//
// ============================================================================

#pragma once

#include <string>
#include <string_view>

#include "acir/core.hpp"

namespace acir {

class ParseError : public Error {
public:
    enum class Kind {
        Syntax,
        UnknownSymbol,
        DuplicateDeclaration,
        InconsistentInitial,
        NegatedQuery,
    };

    ParseError(Kind kind, int line, int column, const std::string& detail);

    Kind kind;
    int  line;
    int  column;
};

/// Parses a source document; `id` becomes Source::id (load_corpus passes the
/// file stem).  All sets come out canonicalized; the result passes
/// validate_source.  Never crashes on arbitrary input: every failure is a
/// ParseError with a line and column.
Source parse_source(std::string_view text, std::string id = {});

Query parse_query(std::string_view text);

// A parsed source together with its provenance; error positions from the
// parse refer to lines of `text`.
struct SourceDocument {
    std::string path;  // empty for in-memory documents
    std::string text;
    Source      source;
};

SourceDocument parse_document(std::string text, const std::string& path);

/// Canonical text whose re-parse equals s (up to Source::id).
std::string serialize_source(const Source& s);

std::string serialize_query(const Query& q);

}  // namespace acir
