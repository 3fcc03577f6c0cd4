#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tmkg {

struct TrajectorySample {
  double x = 0.0;
  double y = 0.0;
  std::int64_t t_ms = 0;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// One detected object in a frame, as produced by an upstream video-analytics
// stage. class_label is lowercase; labels outside the known set
// {car, truck, bike, person, unknown} are preserved as-is.
struct ObjectDetection {
  std::string track_id;
  std::string class_label;
  std::optional<int> lane;
  std::optional<double> avg_speed_mps;
  std::optional<std::vector<TrajectorySample>> trajectory;
  std::optional<BoundingBox> bbox;

  friend bool operator==(const ObjectDetection&, const ObjectDetection&) = default;
};

// One camera frame's worth of detections.
struct DetectionRecord {
  std::string camera_id;
  std::string frame_id;
  std::int64_t timestamp_ms = 0;
  std::vector<ObjectDetection> objects;

  friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

}  // namespace tmkg
