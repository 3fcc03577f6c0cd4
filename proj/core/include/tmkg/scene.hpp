#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tmkg/detection.hpp"
#include "tmkg/graph.hpp"
#include "tmkg/term.hpp"

namespace tmkg {

// Percent-encodes an id for use as one IRI path segment (unreserved RFC 3986
// characters pass through). Keeps the scene/object/lane minting injective.
std::string encode_iri_component(std::string_view id);

Iri mint_scene_iri(std::string_view camera_id, std::string_view frame_id);
Iri mint_camera_iri(std::string_view camera_id);
Iri mint_object_iri(std::string_view camera_id, std::string_view frame_id, std::string_view track_id);
Iri mint_lane_iri(std::string_view camera_id, int lane);

// Maps a validated record onto triples:
//   scene  rdf:type tm:Scene / tm:atTime / tm:capturedBy
//   scene  tm:hasObject obj
//   obj    rdf:type (class IRI), tm:trackId, tm:averageSpeed?, tm:inLane?
//   lane   rdf:type tm:Lane, tm:laneNumber
// averageSpeed falls back to the trajectory's mean speed when
// avg_speed_mps is absent.
std::set<Triple> instantiate_scene(const DetectionRecord& record);

// Scene IRIs present in the graph, sorted.
std::vector<Iri> list_scenes(const Graph& graph);

// The scene's triples plus those of its objects and their lanes. Type
// triples are narrowed to each subject's most specific classes, so
// materialized superclass types (and all background axioms) stay out.
// Throws std::invalid_argument when scene_iri is not a tm:Scene.
std::set<Triple> scene_subgraph(const Graph& graph, const Iri& scene_iri);

// Parsed, ordered view of a scene subgraph shared by the feature extractor,
// the canonicalizer and the lexicalizer. Objects are sorted by
// (class_label, track_id); ordinal is the 1-based rank within the class.
struct SceneObject {
  Iri iri;
  std::string class_label;
  std::string track_id;
  std::optional<double> avg_speed_mps;
  std::optional<int> lane;
  int ordinal = 0;
};

struct SceneView {
  Iri scene_iri;
  std::optional<std::int64_t> timestamp_ms;
  std::optional<Iri> camera;
  std::vector<SceneObject> objects;
  std::map<int, Iri> lane_iris;                      // lane number -> lane IRI
  std::map<int, std::vector<std::size_t>> lanes;     // lane number -> object indexes
};

SceneView parse_scene(const std::set<Triple>& scene);

}  // namespace tmkg
