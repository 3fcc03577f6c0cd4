#include "tmkg/hashing.hpp"

#include <cmath>
#include <stdexcept>

namespace tmkg {

std::uint64_t fnv1a64(std::uint8_t domain, std::uint64_t seed, std::string_view key) {
  constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  constexpr std::uint64_t kPrime = 0x100000001b3ULL;
  std::uint64_t h = kOffset;
  auto mix = [&](std::uint8_t byte) {
    h ^= byte;
    h *= kPrime;
  };
  mix(domain);
  for (int i = 0; i < 8; ++i) {
    mix(static_cast<std::uint8_t>(seed >> (8 * i)));
  }
  for (char c : key) {
    mix(static_cast<std::uint8_t>(c));
  }
  return h;
}

std::size_t hash_bucket(std::uint8_t domain, std::uint64_t seed, std::string_view key,
                        std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("bucket count m must be positive");
  }
  return static_cast<std::size_t>(fnv1a64(domain, seed, key) % m);
}

double hash_sign(std::uint64_t seed, std::string_view key) {
  return (fnv1a64(kSignDomain, seed, key) >> 63) == 0 ? 1.0 : -1.0;
}

HashedVector hash_features(const SceneFeatures& features, std::size_t m, std::uint64_t seed) {
  if (m == 0) {
    throw std::invalid_argument("bucket count m must be positive");
  }
  HashedVector out;
  out.m = m;
  out.seed = seed;
  out.values.assign(m, 0.0);
  for (const auto& [key, value] : features.entries) {
    out.values[hash_bucket(kBucketDomain, seed, key, m)] += hash_sign(seed, key) * value;
  }
  return out;
}

SparseHashedVector hash_features_sparse(const SceneFeatures& features, std::size_t m,
                                        std::uint64_t seed) {
  if (m == 0) {
    throw std::invalid_argument("bucket count m must be positive");
  }
  SparseHashedVector out;
  out.m = m;
  out.seed = seed;
  for (const auto& [key, value] : features.entries) {
    out.values[hash_bucket(kBucketDomain, seed, key, m)] += hash_sign(seed, key) * value;
  }
  // signed sums can cancel to zero; keep the map sparse
  for (auto it = out.values.begin(); it != out.values.end();) {
    it = it->second == 0.0 ? out.values.erase(it) : std::next(it);
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double ab = dot(a, b);
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) {
    return 0.0;
  }
  return ab / (na * nb);
}

double dot(const SparseHashedVector& a, const SparseHashedVector& b) {
  if (a.m != b.m) {
    throw std::invalid_argument("dot: bucket count mismatch");
  }
  const auto& small = a.values.size() <= b.values.size() ? a : b;
  const auto& large = a.values.size() <= b.values.size() ? b : a;
  double sum = 0.0;
  for (const auto& [bucket, value] : small.values) {
    if (auto it = large.values.find(bucket); it != large.values.end()) {
      sum += value * it->second;
    }
  }
  return sum;
}

double cosine(const SparseHashedVector& a, const SparseHashedVector& b) {
  const double ab = dot(a, b);
  double na = 0.0;
  for (const auto& [bucket, value] : a.values) {
    na += value * value;
  }
  double nb = 0.0;
  for (const auto& [bucket, value] : b.values) {
    nb += value * value;
  }
  if (na == 0.0 || nb == 0.0) {
    return 0.0;
  }
  return ab / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace tmkg
