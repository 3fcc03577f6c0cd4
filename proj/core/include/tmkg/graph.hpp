#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tmkg/term.hpp"

namespace tmkg {

// Indexed triple store with set semantics. Insertion keeps the store closed
// under one-step rdfs:subClassOf type propagation: whenever (x rdf:type C)
// and (C rdfs:subClassOf D) are both present, (x rdf:type D) is too. The
// closure is recomputed on every insert, so importing a previously exported
// graph adds nothing and canonical export is a fixpoint.
class Graph {
 public:
  enum class IndexOrder { kSpo, kPos, kOsp };

  Graph() = default;

  // Returns true when the triple was not already present.
  bool insert(Triple t);
  void insert_all(const std::vector<Triple>& triples);
  void insert_all(const std::set<Triple>& triples);

  bool contains(const Triple& t) const { return triples_.contains(t); }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const std::set<Triple>& triples() const { return triples_; }

  // Single triple-pattern lookup; nullopt is a wildcard. Picks the index
  // matching the bound positions.
  std::vector<Triple> find(const std::optional<Iri>& s, const std::optional<Iri>& p,
                           const std::optional<Term>& o) const;

  // Full enumeration through one index permutation; all three orders must
  // enumerate the same set.
  std::vector<Triple> enumerate(IndexOrder order) const;

 private:
  std::set<Triple> triples_;
  std::map<Iri, std::map<Iri, std::set<Term>>> spo_;
  std::map<Iri, std::map<Term, std::set<Iri>>> pos_;
  std::map<Term, std::map<Iri, std::set<Iri>>> osp_;

  void propagate_types(const Triple& t);
};

// One position of a basic graph pattern: a constant term or a ?variable.
struct PatternTerm {
  bool is_variable = false;
  std::string variable;  // without the '?' sigil
  Term value;

  static PatternTerm var(std::string name);
  static PatternTerm constant(Term t);
};

struct TriplePattern {
  PatternTerm s;
  PatternTerm p;
  PatternTerm o;
};

using Bindings = std::map<std::string, Term>;

// Conjunctive pattern matching. Every returned map binds all variables so
// that each pattern, after substitution, is a triple of the graph. Results
// are deduplicated and sorted, hence deterministic across runs.
// Throws std::invalid_argument for an empty pattern list.
std::vector<Bindings> match_pattern(const Graph& graph, const std::vector<TriplePattern>& patterns);

// Parses "?s rdf:type tm:Car" style patterns: three whitespace-separated
// terms; ?name variables, <iri>, prefix:local CURIEs, bare integers/decimals,
// and "quoted" strings (optionally ^^typed).
TriplePattern parse_pattern(std::string_view text);

}  // namespace tmkg
