#include "tmkg/ontology.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace tmkg {
namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kPrefixes = {{
    {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
    {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
    {"owl", "http://www.w3.org/2002/07/owl#"},
    {"xsd", "http://www.w3.org/2001/XMLSchema#"},
    {"tm", "http://example.org/tmo#"},
    {"tmi", "http://example.org/tmkg/"},
}};

}  // namespace

std::vector<Triple> default_axioms() {
  return {
      {tmo::Car, rdfs::subClassOf, Term::iri(tmo::Vehicle)},
      {tmo::Truck, rdfs::subClassOf, Term::iri(tmo::Vehicle)},
      {tmo::Truck, owl::disjointWith, Term::iri(tmo::Car)},
  };
}

Iri class_iri_for_label(std::string_view label) {
  if (label == "car") return tmo::Car;
  if (label == "truck") return tmo::Truck;
  if (label == "bike") return tmo::Bike;
  if (label == "person") return tmo::Person;
  return tmo::Unknown;
}

std::string class_label_for_iri(const Iri& iri) {
  if (iri == tmo::Car) return "car";
  if (iri == tmo::Truck) return "truck";
  if (iri == tmo::Bike) return "bike";
  if (iri == tmo::Person) return "person";
  if (iri == tmo::Unknown) return "unknown";
  if (iri == tmo::Vehicle) return "vehicle";
  throw std::invalid_argument("no label for class IRI: " + iri);
}

Iri expand_curie(std::string_view curie) {
  const auto colon = curie.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("not a CURIE: " + std::string(curie));
  }
  const auto prefix = curie.substr(0, colon);
  for (const auto& [name, base] : kPrefixes) {
    if (prefix == name) {
      return std::string(base) + std::string(curie.substr(colon + 1));
    }
  }
  throw std::invalid_argument("unknown CURIE prefix: " + std::string(curie));
}

std::string compact_iri(const Iri& iri) {
  for (const auto& [name, base] : kPrefixes) {
    if (iri.size() > base.size() && std::string_view(iri).substr(0, base.size()) == base) {
      return std::string(name) + ":" + iri.substr(base.size());
    }
  }
  return iri;
}

std::string local_name(const Iri& iri) {
  for (const auto& [name, base] : kPrefixes) {
    if (iri.size() > base.size() && std::string_view(iri).substr(0, base.size()) == base) {
      return iri.substr(base.size());
    }
  }
  const auto cut = iri.find_last_of("/#");
  if (cut != std::string::npos) {
    return iri.substr(cut + 1);
  }
  return iri;
}

}  // namespace tmkg
