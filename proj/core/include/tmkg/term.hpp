#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tmkg {

// IRIs are plain absolute-IRI strings; Term adds the literal case.
using Iri = std::string;

struct Term {
  enum class Kind { kIri, kLiteral };

  Kind kind = Kind::kIri;
  std::string value;     // the IRI, or the literal's lexical form
  std::string datatype;  // literal datatype IRI; empty for IRIs

  static Term iri(std::string v);
  static Term literal(std::string lexical, std::string datatype_iri);
  static Term string_literal(std::string lexical);
  static Term integer_literal(std::int64_t n);
  static Term decimal_literal(double v);

  bool is_iri() const { return kind == Kind::kIri; }
  bool is_literal() const { return kind == Kind::kLiteral; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Triple {
  Iri s;
  Iri p;
  Term o;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// Scheme check only; the N-Triples layer enforces the serializable charset.
bool is_absolute_iri(std::string_view iri);

// Exponent-free lexical form for xsd:decimal, shortest round-trip otherwise.
std::string render_decimal(double v);

}  // namespace tmkg
