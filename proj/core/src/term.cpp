#include "tmkg/term.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "tmkg/ontology.hpp"

namespace tmkg {

Term Term::iri(std::string v) {
  if (!is_absolute_iri(v)) {
    throw std::invalid_argument("not an absolute IRI: " + v);
  }
  Term t;
  t.kind = Kind::kIri;
  t.value = std::move(v);
  return t;
}

Term Term::literal(std::string lexical, std::string datatype_iri) {
  if (datatype_iri != xsd::String && datatype_iri != xsd::Integer &&
      datatype_iri != xsd::Decimal) {
    throw std::invalid_argument("unsupported literal datatype: " + datatype_iri);
  }
  Term t;
  t.kind = Kind::kLiteral;
  t.value = std::move(lexical);
  t.datatype = std::move(datatype_iri);
  return t;
}

Term Term::string_literal(std::string lexical) {
  return literal(std::move(lexical), xsd::String);
}

Term Term::integer_literal(std::int64_t n) {
  return literal(std::to_string(n), xsd::Integer);
}

Term Term::decimal_literal(double v) {
  return literal(render_decimal(v), xsd::Decimal);
}

bool is_absolute_iri(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri.front()))) {
    return false;
  }
  for (std::size_t i = 1; i < iri.size(); ++i) {
    const char c = iri[i];
    if (c == ':') {
      return i + 1 < iri.size();
    }
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
      return false;
    }
  }
  return false;
}

std::string render_decimal(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  if (s.find('e') == std::string::npos && s.find('E') == std::string::npos) {
    return s;
  }
  // xsd:decimal has no exponent form; fall back to plain notation.
  std::snprintf(buf, sizeof(buf), "%.17f", v);
  std::string plain(buf);
  auto last = plain.find_last_not_of('0');
  if (last != std::string::npos && plain[last] == '.') {
    ++last;  // keep one digit after the point
  }
  return plain.substr(0, last + 1);
}

}  // namespace tmkg
