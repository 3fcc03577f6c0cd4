#include "tmkg/features.hpp"

#include <algorithm>

#include "tmkg/scene.hpp"

namespace tmkg {

SceneFeatures extract_features(const std::set<Triple>& scene) {
  const SceneView view = parse_scene(scene);
  SceneFeatures f;
  f.set("count:total", static_cast<double>(view.objects.size()));

  std::map<std::string, int> class_counts;
  std::map<std::pair<std::string, int>, int> class_lane_counts;
  std::map<int, int> lane_counts;
  std::map<std::string, std::pair<double, int>> speed_sums;  // class -> (sum, n)
  std::map<std::string, double> speed_max;

  for (const auto& obj : view.objects) {
    ++class_counts[obj.class_label];
    if (obj.lane) {
      ++class_lane_counts[{obj.class_label, *obj.lane}];
      ++lane_counts[*obj.lane];
    }
    if (obj.avg_speed_mps) {
      auto& [sum, n] = speed_sums[obj.class_label];
      sum += *obj.avg_speed_mps;
      ++n;
      auto [it, inserted] = speed_max.emplace(obj.class_label, *obj.avg_speed_mps);
      if (!inserted) {
        it->second = std::max(it->second, *obj.avg_speed_mps);
      }
    }
  }

  for (const auto& [cls, n] : class_counts) {
    f.set("count:" + cls, n);
  }
  for (const auto& [key, n] : class_lane_counts) {
    f.set("count:" + key.first + ":lane:" + std::to_string(key.second), n);
  }
  for (const auto& [lane, n] : lane_counts) {
    f.set("lane_occupancy:" + std::to_string(lane), n);
  }
  for (const auto& [cls, acc] : speed_sums) {
    f.set("speed_mean:" + cls, acc.first / acc.second);
  }
  for (const auto& [cls, mx] : speed_max) {
    f.set("speed_max:" + cls, mx);
  }
  return f;
}

}  // namespace tmkg
