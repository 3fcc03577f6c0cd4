#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tmkg/graph.hpp"
#include "tmkg/term.hpp"

namespace tmkg {

// English rendering of one scene, in fixed sentence order: object count,
// composition, one speed sentence per moving object, one sentence per
// occupied lane. Regenerating from the same scene yields identical text.
struct SceneDescription {
  Iri scene_iri;
  std::vector<std::string> sentences;
  std::string text;  // sentences joined by single spaces
};

SceneDescription describe_scene(const std::set<Triple>& scene);

// Background triples to sentences:
//   (A rdfs:subClassOf C)                         -> "{a} is a {c}."
//   {A subClassOf C, B subClassOf C, A disjointWith B}
//                                                 -> "{a} is a {c} different from a {b}."
//   (R tm:hasLaneCount n)                         -> "{r} has {n-as-word} lanes."
// Labels are lowercased IRI local names; output sorted lexicographically.
std::vector<std::string> lexicalize_background(const Graph& graph);

// Round half-up to 2 fraction digits, trim one trailing zero, keep at least
// one fraction digit: 6 -> "6.0", 1.76 -> "1.76", 6.9 -> "6.9".
std::string format_speed(double v);

// first..tenth, then "11th", "12th", ...
std::string ordinal_word(int n);

// zero..twelve, digits beyond.
std::string number_word(std::int64_t n);

}  // namespace tmkg
