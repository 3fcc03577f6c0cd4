#pragma once

#include <string>
#include <string_view>

#include "tmkg/graph.hpp"
#include "tmkg/term.hpp"

namespace tmkg {

// Canonical N-Triples subset:
//   <iri> <iri> (<iri> | "lexical"^^<datatype>) .
// one triple per line, UTF-8, \n endings, lines sorted lexicographically.
// No blank nodes, no language tags; datatypes limited to xsd:string,
// xsd:integer, xsd:decimal.

std::string render_term(const Term& term);
std::string render_triple(const Triple& triple);  // includes the trailing " ."

// Sorted canonical serialization; empty graph renders as empty text.
std::string export_graph(const Graph& graph);

// Parses into a fresh graph. Throws ParseError with a 1-based line number.
Graph import_graph(std::string_view text);

// Set-semantics union into an existing graph; importing the same text twice
// is a no-op. Blank lines and '#' comment lines are skipped.
void import_background(Graph& graph, std::string_view text);

}  // namespace tmkg
