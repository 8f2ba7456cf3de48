#pragma once

// Surface syntax for frameworks and examples, canonical serialization, and the
// JSON trace format.

#include <string>
#include <string_view>
#include <vector>

#include "aba/core.hpp"
#include "aba/transform.hpp"

namespace aba {

struct SourceDocument {
    std::string path;
    std::string text;
    /// Empty iff the document parsed.
    std::vector<Diagnostic> diagnostics;
};

/// Reads a file; throws Error when it cannot be opened.
SourceDocument load_document(const std::string& path);

/// Statements, each ended by '.':
///   head.                          fact
///   head <- l1, ..., ln.           literals are atoms or `T = T` equalities
///   assumption a(X) contrary c(X).
///   universe c1, ..., cn.          constants beyond those in rules
/// `%` starts a comment. Throws ParseError, or ValidationError if the result
/// does not validate.
Framework parse_framework(std::string_view text);

/// Parses into a document, recording the diagnostic instead of throwing.
Framework parse_framework(SourceDocument& doc);

/// Lines `+ atom.` and `- atom.` with ground atoms.
ExampleSets parse_examples(std::string_view text);

GroundAtom parse_ground_atom(std::string_view text);

/// One rule, with or without the final '.'; returned normalised.
Rule parse_rule(std::string_view text);

AssumptionDecl parse_assumption(std::string_view text);

/// Canonical text: universe line (only constants no rule mentions),
/// assumption declarations, then rules ordered by head predicate and id.
std::string serialize(const Framework& fw);

std::string serialize_examples(const ExampleSets& examples);

/// JSON document with one record per event.
std::string trace_to_json(const Trace& trace, std::string_view status = "");
Trace trace_from_json(std::string_view json);

void write_trace(const Trace& trace, const std::string& path, std::string_view status = "");
Trace read_trace(const std::string& path);

}  // namespace aba
