#pragma once

#include <map>
#include <set>
#include <string>

#include "tmkg/term.hpp"

namespace tmkg {

// Sparse keyed feature vector. Key grammar:
//   count:total, count:{class}, count:{class}:lane:{L},
//   lane_occupancy:{L}, speed_mean:{class}, speed_max:{class}
// Zero-valued entries are never stored.
struct SceneFeatures {
  std::map<std::string, double> entries;

  double at(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0.0 : it->second;
  }

  void set(const std::string& key, double value) {
    if (value == 0.0) {
      entries.erase(key);
    } else {
      entries[key] = value;
    }
  }

  bool empty() const { return entries.empty(); }

  friend bool operator==(const SceneFeatures&, const SceneFeatures&) = default;
};

// Triple-based features of one scene subgraph: class counts, per-lane
// counts, lane occupancy, and speed mean/max per class (speed stats only
// when at least one object of the class carries a speed).
SceneFeatures extract_features(const std::set<Triple>& scene);

}  // namespace tmkg
