#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tmkg/embedder.hpp"
#include "tmkg/graph.hpp"
#include "tmkg/hashing.hpp"
#include "tmkg/lexicalize.hpp"
#include "tmkg/nlquery.hpp"
#include "tmkg/similarity_types.hpp"

namespace tmkg {

// Comparable rendering of a scene subgraph: the scene IRI becomes SCENE,
// object IRIs become {class}#{ordinal}, lane IRIs LANE#{number}; atTime and
// capturedBy triples are dropped and speed literals are bucketed to whole
// m/s. Scenes differing only in frame id and timestamps canonicalize
// identically.
std::set<std::string> canonicalize_scene(const std::set<Triple>& scene);

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Jaccard over canonicalized triple sets; 1.0 for two empty scenes.
double structural_similarity(const std::set<Triple>& a, const std::set<Triple>& b);

// Cosine over term-frequency vectors of the description texts.
double lexical_similarity(const SceneDescription& a, const SceneDescription& b);
double lexical_similarity(std::string_view a, std::string_view b);

struct IndexParams {
  std::size_t m = 4096;          // structural: hashed-vector width
  std::uint64_t seed = 0;
  std::size_t rescore_depth = 0; // structural: candidates rescored by exact Jaccard; 0 = auto
  EmbedderSpec embedder;         // semantic backend only
};

using Probe = std::variant<std::set<Triple>, std::string>;

// Scene-similarity search over one backend. The structural backend keeps a
// hashed indicator vector per scene as a cheap pre-filter and rescores the
// top candidates by exact Jaccard; lexical and semantic rank descriptions.
class SimilarityIndex {
 public:
  static SimilarityIndex build(const Graph& graph, Backend backend, const IndexParams& params = {});
  static SimilarityIndex build(const std::vector<std::pair<Iri, std::set<Triple>>>& scenes,
                               Backend backend, const IndexParams& params = {});

  // Probe with a scene subgraph (any backend) or query text (lexical and
  // semantic). k is clamped to the corpus size. Throws
  // std::invalid_argument for k == 0 or a text probe on the structural
  // backend.
  std::vector<SimilarityHit> knn(const Probe& probe, std::size_t k) const;

  Backend backend() const { return backend_; }
  std::size_t size() const { return scene_iris_.size(); }

 private:
  Backend backend_ = Backend::kStructural;
  IndexParams params_;
  std::vector<Iri> scene_iris_;
  std::vector<std::set<std::string>> canonical_;      // structural
  std::vector<SparseHashedVector> hashed_;            // structural
  std::vector<std::string> texts_;                    // lexical
  std::vector<std::map<std::string, double>> tf_;     // lexical
  std::shared_ptr<SemanticIndex> semantic_;           // semantic

  std::vector<SimilarityHit> knn_structural(const std::set<Triple>& probe, std::size_t k) const;
  std::vector<SimilarityHit> knn_lexical(std::string_view text, std::size_t k) const;
};

std::vector<SimilarityHit> knn_query(const SimilarityIndex& index, const Probe& probe,
                                     std::size_t k);

}  // namespace tmkg
