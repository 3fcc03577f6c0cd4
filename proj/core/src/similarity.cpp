#include "tmkg/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tmkg/ontology.hpp"
#include "tmkg/scene.hpp"
#include "tmkg/text.hpp"

namespace tmkg {
namespace {

void sort_hits(std::vector<SimilarityHit>& hits) {
  std::sort(hits.begin(), hits.end(), [](const SimilarityHit& a, const SimilarityHit& b) {
    if (a.score != b.score) {
      return a.score > b.score;
    }
    return a.scene_iri < b.scene_iri;
  });
}

double tf_cosine(const std::map<std::string, double>& a,
                 const std::map<std::string, double>& b) {
  if (a.empty() && b.empty()) {
    return 1.0;
  }
  if (a.empty() || b.empty()) {
    return 0.0;
  }
  double ab = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [token, weight] : a) {
    na += weight * weight;
    if (auto it = b.find(token); it != b.end()) {
      ab += weight * it->second;
    }
  }
  for (const auto& [token, weight] : b) {
    nb += weight * weight;
  }
  return ab / (std::sqrt(na) * std::sqrt(nb));
}

SceneFeatures indicator_features(const std::set<std::string>& canonical) {
  SceneFeatures f;
  for (const auto& line : canonical) {
    f.set(line, 1.0);
  }
  return f;
}

}  // namespace

std::set<std::string> canonicalize_scene(const std::set<Triple>& scene) {
  const SceneView view = parse_scene(scene);

  std::map<Iri, std::string> rename;
  rename[view.scene_iri] = "SCENE";
  for (const auto& obj : view.objects) {
    rename[obj.iri] = obj.class_label + "#" + std::to_string(obj.ordinal);
  }
  for (const auto& [number, iri] : view.lane_iris) {
    rename[iri] = "LANE#" + std::to_string(number);
  }

  const auto node = [&](const Iri& iri) {
    if (auto it = rename.find(iri); it != rename.end()) {
      return it->second;
    }
    return compact_iri(iri);
  };

  std::set<std::string> out;
  for (const Triple& t : scene) {
    if (t.p == tmo::atTime || t.p == tmo::capturedBy) {
      continue;
    }
    std::string object;
    if (t.o.is_iri()) {
      object = node(t.o.value);
    } else if (t.p == tmo::averageSpeed) {
      object = std::to_string(bucket_number(std::stod(t.o.value)));
    } else if (t.o.datatype == xsd::String) {
      object = "\"" + t.o.value + "\"";
    } else {
      object = t.o.value;
    }
    out.insert(node(t.s) + " " + compact_iri(t.p) + " " + object);
  }
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) {
    return 1.0;
  }
  std::size_t intersection = 0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& x : small) {
    intersection += large.contains(x) ? 1 : 0;
  }
  return static_cast<double>(intersection) /
         static_cast<double>(a.size() + b.size() - intersection);
}

double structural_similarity(const std::set<Triple>& a, const std::set<Triple>& b) {
  return jaccard(canonicalize_scene(a), canonicalize_scene(b));
}

double lexical_similarity(const SceneDescription& a, const SceneDescription& b) {
  return lexical_similarity(std::string_view(a.text), std::string_view(b.text));
}

double lexical_similarity(std::string_view a, std::string_view b) {
  return text_cosine(a, b);
}

SimilarityIndex SimilarityIndex::build(const Graph& graph, Backend backend,
                                       const IndexParams& params) {
  std::vector<std::pair<Iri, std::set<Triple>>> scenes;
  for (const Iri& iri : list_scenes(graph)) {
    scenes.emplace_back(iri, scene_subgraph(graph, iri));
  }
  return build(scenes, backend, params);
}

SimilarityIndex SimilarityIndex::build(
    const std::vector<std::pair<Iri, std::set<Triple>>>& scenes, Backend backend,
    const IndexParams& params) {
  if (scenes.empty()) {
    throw std::invalid_argument("similarity index requires a non-empty corpus");
  }
  SimilarityIndex index;
  index.backend_ = backend;
  index.params_ = params;
  for (const auto& [iri, _] : scenes) {
    index.scene_iris_.push_back(iri);
  }
  switch (backend) {
    case Backend::kStructural:
      for (const auto& [_, scene] : scenes) {
        index.canonical_.push_back(canonicalize_scene(scene));
        index.hashed_.push_back(hash_features_sparse(
            indicator_features(index.canonical_.back()), params.m, params.seed));
      }
      break;
    case Backend::kLexical:
      for (const auto& [_, scene] : scenes) {
        index.texts_.push_back(describe_scene(scene).text);
        index.tf_.push_back(term_frequencies(index.texts_.back()));
      }
      break;
    case Backend::kSemantic: {
      std::vector<SceneDescription> descriptions;
      descriptions.reserve(scenes.size());
      for (const auto& [_, scene] : scenes) {
        descriptions.push_back(describe_scene(scene));
      }
      index.semantic_ = std::make_shared<SemanticIndex>(
          SemanticIndex::build(descriptions, params.embedder));
      break;
    }
  }
  return index;
}

std::vector<SimilarityHit> SimilarityIndex::knn_structural(const std::set<Triple>& probe,
                                                           std::size_t k) const {
  const auto probe_canonical = canonicalize_scene(probe);
  const auto probe_hashed =
      hash_features_sparse(indicator_features(probe_canonical), params_.m, params_.seed);

  // hashed-cosine pre-filter, then exact Jaccard on the survivors
  std::vector<double> prefilter(scene_iris_.size());
  for (std::size_t i = 0; i < scene_iris_.size(); ++i) {
    prefilter[i] = cosine(probe_hashed, hashed_[i]);
  }
  std::vector<std::size_t> order(scene_iris_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (prefilter[a] != prefilter[b]) {
      return prefilter[a] > prefilter[b];
    }
    return scene_iris_[a] < scene_iris_[b];
  });

  std::size_t depth = params_.rescore_depth > 0 ? params_.rescore_depth
                                                : std::max<std::size_t>(4 * k, 32);
  depth = std::min(std::max(depth, k), order.size());

  std::vector<SimilarityHit> hits;
  hits.reserve(depth);
  for (std::size_t r = 0; r < depth; ++r) {
    const std::size_t i = order[r];
    hits.push_back({scene_iris_[i], jaccard(probe_canonical, canonical_[i]), backend_});
  }
  sort_hits(hits);
  hits.resize(std::min(k, hits.size()));
  return hits;
}

std::vector<SimilarityHit> SimilarityIndex::knn_lexical(std::string_view text,
                                                        std::size_t k) const {
  const auto probe_tf = term_frequencies(text);
  std::vector<SimilarityHit> hits;
  hits.reserve(scene_iris_.size());
  for (std::size_t i = 0; i < scene_iris_.size(); ++i) {
    hits.push_back({scene_iris_[i], tf_cosine(probe_tf, tf_[i]), backend_});
  }
  sort_hits(hits);
  hits.resize(std::min(k, hits.size()));
  return hits;
}

std::vector<SimilarityHit> SimilarityIndex::knn(const Probe& probe, std::size_t k) const {
  if (k == 0) {
    throw std::invalid_argument("k must be at least 1");
  }
  switch (backend_) {
    case Backend::kStructural:
      if (!std::holds_alternative<std::set<Triple>>(probe)) {
        throw std::invalid_argument("structural backend expects a scene probe");
      }
      return knn_structural(std::get<std::set<Triple>>(probe), k);
    case Backend::kLexical:
      if (std::holds_alternative<std::string>(probe)) {
        return knn_lexical(std::get<std::string>(probe), k);
      }
      return knn_lexical(describe_scene(std::get<std::set<Triple>>(probe)).text, k);
    case Backend::kSemantic:
      if (std::holds_alternative<std::string>(probe)) {
        return semantic_->query(std::get<std::string>(probe), k);
      }
      return semantic_->query(describe_scene(std::get<std::set<Triple>>(probe)).text, k);
  }
  throw std::invalid_argument("unknown backend");
}

std::vector<SimilarityHit> knn_query(const SimilarityIndex& index, const Probe& probe,
                                     std::size_t k) {
  return index.knn(probe, k);
}

}  // namespace tmkg
