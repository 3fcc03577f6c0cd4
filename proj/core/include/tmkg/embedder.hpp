#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tmkg {

using EmbeddingVector = std::vector<double>;

// Which embedder backs the semantic index: the deterministic built-in
// hashed tf-idf, or a remote embedding service speaking the /embed contract.
struct EmbedderSpec {
  enum class Kind { kBuiltin, kRemote };

  Kind kind = Kind::kBuiltin;
  std::size_t dim = 1024;
  std::uint64_t seed = 0;
  std::string endpoint;          // required for kRemote
  double timeout_seconds = 30.0;
};

// Document frequencies frozen at index build; queries reuse them, and
// unseen query tokens fall back to df = 0.
struct CorpusStats {
  std::size_t corpus_size = 0;
  std::map<std::string, std::size_t> document_frequency;

  std::size_t df(const std::string& token) const {
    auto it = document_frequency.find(token);
    return it == document_frequency.end() ? 0 : it->second;
  }
};

CorpusStats corpus_stats(const std::vector<std::string>& texts);

// weight(token) = tf * ln((N+1)/(df+1) + 1), summed into dim buckets through
// the token-domain FNV scheme, then L2-normalized (all-zero stays zero).
std::vector<EmbeddingVector> embed_builtin(const std::vector<std::string>& texts,
                                           const CorpusStats& stats, std::size_t dim,
                                           std::uint64_t seed);

// POST {endpoint}/embed with {"texts": [...]}; expects
// {"vectors": [[...], ...], "dim": n} with vectors in input order. Returned
// vectors are L2-normalized. An empty text list short-circuits without any
// network call. Throws RemoteEmbedderError.
std::vector<EmbeddingVector> embed_remote(const std::vector<std::string>& texts,
                                          const EmbedderSpec& spec);

double vector_norm(const EmbeddingVector& v);
void normalize_in_place(EmbeddingVector& v);

}  // namespace tmkg
