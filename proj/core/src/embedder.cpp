#include "tmkg/embedder.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "tmkg/errors.hpp"
#include "tmkg/hashing.hpp"
#include "tmkg/text.hpp"

namespace tmkg {
namespace {

using json = nlohmann::json;

// "http://host:port/base" -> ("http://host:port", "/base")
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  const auto scheme = endpoint.find("://");
  if (scheme == std::string::npos) {
    throw RemoteEmbedderError(RemoteEmbedderError::Kind::kTransport,
                              "endpoint must be an http URL: " + endpoint);
  }
  const auto slash = endpoint.find('/', scheme + 3);
  if (slash == std::string::npos) {
    return {endpoint, ""};
  }
  std::string base = endpoint.substr(0, slash);
  std::string path = endpoint.substr(slash);
  while (!path.empty() && path.back() == '/') {
    path.pop_back();
  }
  return {std::move(base), std::move(path)};
}

}  // namespace

CorpusStats corpus_stats(const std::vector<std::string>& texts) {
  CorpusStats stats;
  stats.corpus_size = texts.size();
  for (const auto& text : texts) {
    std::set<std::string> seen;
    for (auto& token : tokenize(text)) {
      seen.insert(std::move(token));
    }
    for (const auto& token : seen) {
      ++stats.document_frequency[token];
    }
  }
  return stats;
}

std::vector<EmbeddingVector> embed_builtin(const std::vector<std::string>& texts,
                                           const CorpusStats& stats, std::size_t dim,
                                           std::uint64_t seed) {
  if (dim == 0) {
    throw std::invalid_argument("embedding dimension must be positive");
  }
  const double n = static_cast<double>(stats.corpus_size);
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    EmbeddingVector v(dim, 0.0);
    for (const auto& [token, tf] : term_frequencies(text)) {
      const double df = static_cast<double>(stats.df(token));
      const double weight = tf * std::log((n + 1.0) / (df + 1.0) + 1.0);
      v[hash_bucket(kTokenDomain, seed, token, dim)] += weight;
    }
    normalize_in_place(v);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<EmbeddingVector> embed_remote(const std::vector<std::string>& texts,
                                          const EmbedderSpec& spec) {
  if (texts.empty()) {
    return {};
  }
  if (spec.endpoint.empty()) {
    throw RemoteEmbedderError(RemoteEmbedderError::Kind::kTransport,
                              "remote embedder requires an endpoint");
  }
  const auto [base, path_prefix] = split_endpoint(spec.endpoint);
  httplib::Client client(base);
  const auto timeout =
      std::chrono::milliseconds(static_cast<long long>(spec.timeout_seconds * 1000.0));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  const std::string body = json{{"texts", texts}}.dump();
  auto res = client.Post(path_prefix + "/embed", body, "application/json");
  if (!res) {
    const auto err = res.error();
    const auto kind = (err == httplib::Error::ConnectionTimeout ||
                       err == httplib::Error::Read)
                          ? RemoteEmbedderError::Kind::kTimeout
                          : RemoteEmbedderError::Kind::kTransport;
    throw RemoteEmbedderError(kind, "embed request failed: " + httplib::to_string(err));
  }
  if (res->status != 200) {
    throw RemoteEmbedderError(RemoteEmbedderError::Kind::kHttpStatus,
                              "embed request returned HTTP " + std::to_string(res->status));
  }

  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::exception& e) {
    throw RemoteEmbedderError(RemoteEmbedderError::Kind::kBadResponse,
                              std::string("embed response is not valid JSON: ") + e.what());
  }
  if (!reply.is_object() || !reply.contains("vectors") || !reply.contains("dim") ||
      !reply["vectors"].is_array() || !reply["dim"].is_number_integer()) {
    throw RemoteEmbedderError(RemoteEmbedderError::Kind::kBadResponse,
                              "embed response must be {\"vectors\": [[...]], \"dim\": n}");
  }
  const auto dim = reply["dim"].get<std::int64_t>();
  if (dim <= 0) {
    throw RemoteEmbedderError(RemoteEmbedderError::Kind::kBadResponse,
                              "embed response dim must be positive");
  }
  if (reply["vectors"].size() != texts.size()) {
    throw RemoteEmbedderError(
        RemoteEmbedderError::Kind::kBadResponse,
        "embed response has " + std::to_string(reply["vectors"].size()) +
            " vectors for " + std::to_string(texts.size()) + " texts");
  }

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& row : reply["vectors"]) {
    if (!row.is_array()) {
      throw RemoteEmbedderError(RemoteEmbedderError::Kind::kBadResponse,
                                "embed response vector is not an array");
    }
    EmbeddingVector v;
    v.reserve(row.size());
    for (const auto& x : row) {
      if (!x.is_number()) {
        throw RemoteEmbedderError(RemoteEmbedderError::Kind::kBadResponse,
                                  "embed response vector holds a non-number");
      }
      v.push_back(x.get<double>());
    }
    if (v.size() != static_cast<std::size_t>(dim)) {
      throw RemoteEmbedderError(
          RemoteEmbedderError::Kind::kDimensionMismatch,
          "embed response vector of length " + std::to_string(v.size()) +
              " does not match dim " + std::to_string(dim));
    }
    normalize_in_place(v);
    out.push_back(std::move(v));
  }
  return out;
}

double vector_norm(const EmbeddingVector& v) {
  double sum = 0.0;
  for (double x : v) {
    sum += x * x;
  }
  return std::sqrt(sum);
}

void normalize_in_place(EmbeddingVector& v) {
  const double norm = vector_norm(v);
  if (norm == 0.0) {
    return;
  }
  for (double& x : v) {
    x /= norm;
  }
}

}  // namespace tmkg
