#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tmkg/embedder.hpp"
#include "tmkg/lexicalize.hpp"
#include "tmkg/similarity_types.hpp"

namespace tmkg {

// Natural-language scene retrieval: descriptions embedded once at build,
// queries embedded with the same spec and frozen corpus stats, ranked by
// cosine with the usual (score desc, IRI asc) ordering.
class SemanticIndex {
 public:
  // Throws std::invalid_argument on an empty corpus; remote failures
  // propagate as RemoteEmbedderError.
  static SemanticIndex build(const std::vector<SceneDescription>& descriptions,
                             const EmbedderSpec& spec);

  std::vector<SimilarityHit> query(std::string_view text, std::size_t k) const;

  const CorpusStats& stats() const { return stats_; }
  const EmbedderSpec& spec() const { return spec_; }
  std::size_t size() const { return scene_iris_.size(); }

 private:
  EmbedderSpec spec_;
  CorpusStats stats_;
  std::vector<Iri> scene_iris_;
  std::vector<EmbeddingVector> vectors_;
};

std::vector<SimilarityHit> semantic_query(const SemanticIndex& index, std::string_view text,
                                          std::size_t k);

}  // namespace tmkg
