#pragma once

#include <string_view>

#include "tmkg/term.hpp"

namespace tmkg {

enum class Backend { kStructural, kLexical, kSemantic };

std::string_view backend_name(Backend backend);
Backend backend_from_name(std::string_view name);  // throws std::invalid_argument

// One ranked retrieval result. Structural and lexical scores live in [0,1];
// semantic cosine in [-1,1]. Result lists are sorted by score descending,
// ties broken by scene IRI ascending.
struct SimilarityHit {
  Iri scene_iri;
  double score = 0.0;
  Backend backend = Backend::kStructural;
};

}  // namespace tmkg
