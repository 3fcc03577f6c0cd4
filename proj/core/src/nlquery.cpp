#include "tmkg/nlquery.hpp"

#include <algorithm>
#include <stdexcept>

namespace tmkg {
namespace {

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  double sum = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

}  // namespace

SemanticIndex SemanticIndex::build(const std::vector<SceneDescription>& descriptions,
                                   const EmbedderSpec& spec) {
  if (descriptions.empty()) {
    throw std::invalid_argument("semantic index requires a non-empty corpus");
  }
  SemanticIndex index;
  index.spec_ = spec;
  std::vector<std::string> texts;
  texts.reserve(descriptions.size());
  for (const auto& d : descriptions) {
    index.scene_iris_.push_back(d.scene_iri);
    texts.push_back(d.text);
  }
  index.stats_ = corpus_stats(texts);
  index.vectors_ = spec.kind == EmbedderSpec::Kind::kBuiltin
                       ? embed_builtin(texts, index.stats_, spec.dim, spec.seed)
                       : embed_remote(texts, spec);
  return index;
}

std::vector<SimilarityHit> SemanticIndex::query(std::string_view text, std::size_t k) const {
  if (k == 0) {
    throw std::invalid_argument("k must be at least 1");
  }
  const std::vector<std::string> query_text{std::string(text)};
  const EmbeddingVector q =
      (spec_.kind == EmbedderSpec::Kind::kBuiltin
           ? embed_builtin(query_text, stats_, spec_.dim, spec_.seed)
           : embed_remote(query_text, spec_))
          .front();

  std::vector<SimilarityHit> hits;
  hits.reserve(scene_iris_.size());
  for (std::size_t i = 0; i < scene_iris_.size(); ++i) {
    // both sides are unit (or zero) vectors, so the dot product is the cosine
    hits.push_back({scene_iris_[i], dot(q, vectors_[i]), Backend::kSemantic});
  }
  std::sort(hits.begin(), hits.end(), [](const SimilarityHit& a, const SimilarityHit& b) {
    if (a.score != b.score) {
      return a.score > b.score;
    }
    return a.scene_iri < b.scene_iri;
  });
  hits.resize(std::min(k, hits.size()));
  return hits;
}

std::vector<SimilarityHit> semantic_query(const SemanticIndex& index, std::string_view text,
                                          std::size_t k) {
  return index.query(text, k);
}

}  // namespace tmkg
