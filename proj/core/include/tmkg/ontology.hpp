#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tmkg/term.hpp"

namespace tmkg {

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view tm = "http://example.org/tmo#";
inline constexpr std::string_view tmi = "http://example.org/tmkg/";
}  // namespace ns

namespace rdf {
inline const Iri type = std::string(ns::rdf) + "type";
}

namespace rdfs {
inline const Iri subClassOf = std::string(ns::rdfs) + "subClassOf";
}

namespace owl {
inline const Iri disjointWith = std::string(ns::owl) + "disjointWith";
}

namespace xsd {
inline const Iri String = std::string(ns::xsd) + "string";
inline const Iri Integer = std::string(ns::xsd) + "integer";
inline const Iri Decimal = std::string(ns::xsd) + "decimal";
}  // namespace xsd

// Traffic-monitoring vocabulary.
namespace tmo {
inline const Iri Scene = std::string(ns::tm) + "Scene";
inline const Iri Camera = std::string(ns::tm) + "Camera";
inline const Iri Lane = std::string(ns::tm) + "Lane";
inline const Iri Vehicle = std::string(ns::tm) + "Vehicle";
inline const Iri Car = std::string(ns::tm) + "Car";
inline const Iri Truck = std::string(ns::tm) + "Truck";
inline const Iri Bike = std::string(ns::tm) + "Bike";
inline const Iri Person = std::string(ns::tm) + "Person";
inline const Iri Unknown = std::string(ns::tm) + "Unknown";
inline const Iri Road = std::string(ns::tm) + "Road";

inline const Iri hasObject = std::string(ns::tm) + "hasObject";
inline const Iri inLane = std::string(ns::tm) + "inLane";
inline const Iri averageSpeed = std::string(ns::tm) + "averageSpeed";
inline const Iri atTime = std::string(ns::tm) + "atTime";
inline const Iri capturedBy = std::string(ns::tm) + "capturedBy";
inline const Iri trackId = std::string(ns::tm) + "trackId";
inline const Iri laneNumber = std::string(ns::tm) + "laneNumber";
inline const Iri hasLaneCount = std::string(ns::tm) + "hasLaneCount";
}  // namespace tmo

// Stock background knowledge: car/truck are vehicles, truck disjoint from car.
std::vector<Triple> default_axioms();

// Detection class label ("car", "truck", ...) to class IRI; anything outside
// the known set maps to tm:Unknown.
Iri class_iri_for_label(std::string_view label);

// Lowercased local name of a class IRI ("car" for tm:Car).
std::string class_label_for_iri(const Iri& iri);

// CURIE handling over the fixed prefix table (rdf, rdfs, owl, xsd, tm, tmi).
Iri expand_curie(std::string_view curie);      // throws std::invalid_argument on unknown prefix
std::string compact_iri(const Iri& iri);       // full IRI when no prefix applies
std::string local_name(const Iri& iri);        // suffix after a known namespace, else after last '/' or '#'

}  // namespace tmkg
