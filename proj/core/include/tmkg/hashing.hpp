#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "tmkg/features.hpp"

namespace tmkg {

// Domain-separation prefixes so bucket choice, sign choice and text-token
// bucketing draw from independent hash streams.
inline constexpr std::uint8_t kBucketDomain = 0x01;
inline constexpr std::uint8_t kSignDomain = 0x02;
inline constexpr std::uint8_t kTokenDomain = 0x03;

// FNV-1a 64 over (domain byte || seed as 8 little-endian bytes || key bytes).
std::uint64_t fnv1a64(std::uint8_t domain, std::uint64_t seed, std::string_view key);

std::size_t hash_bucket(std::uint8_t domain, std::uint64_t seed, std::string_view key, std::size_t m);

// +1 when the top bit of the sign-domain hash is 0, else -1.
double hash_sign(std::uint64_t seed, std::string_view key);

struct HashedVector {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

// Signed feature hashing: phi[i] = sum over keys j with bucket(j) == i of
// sign(j) * f[j]. Inner products are preserved exactly when no two present
// keys collide. Throws std::invalid_argument when m == 0.
HashedVector hash_features(const SceneFeatures& features, std::size_t m, std::uint64_t seed);

// Same map, bucket->value only; the workhorse for large m where the dense
// vector would be mostly zeros.
struct SparseHashedVector {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::map<std::size_t, double> values;
};

SparseHashedVector hash_features_sparse(const SceneFeatures& features, std::size_t m,
                                        std::uint64_t seed);

double dot(std::span<const double> a, std::span<const double> b);
double cosine(std::span<const double> a, std::span<const double> b);  // 0 when either norm is 0
double dot(const SparseHashedVector& a, const SparseHashedVector& b);
double cosine(const SparseHashedVector& a, const SparseHashedVector& b);

}  // namespace tmkg
