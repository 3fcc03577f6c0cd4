#include "tmkg/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "tmkg/errors.hpp"

namespace tmkg {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

ObjectDetection object_from_json(const json& j) {
  if (!j.is_object()) {
    throw ValidationError("object entry must be a JSON object");
  }
  ObjectDetection obj;
  obj.track_id = j.at("track_id").get<std::string>();
  obj.class_label = j.at("class").get<std::string>();
  if (auto it = j.find("lane"); it != j.end() && !it->is_null()) {
    obj.lane = it->get<int>();
  }
  if (auto it = j.find("avg_speed_mps"); it != j.end() && !it->is_null()) {
    obj.avg_speed_mps = it->get<double>();
  }
  if (auto it = j.find("trajectory"); it != j.end() && !it->is_null()) {
    std::vector<TrajectorySample> traj;
    for (const auto& p : *it) {
      if (!p.is_array() || p.size() != 3) {
        throw ValidationError("trajectory samples must be [x, y, t_ms] arrays");
      }
      traj.push_back({p[0].get<double>(), p[1].get<double>(),
                      p[2].get<std::int64_t>()});
    }
    obj.trajectory = std::move(traj);
  }
  if (auto it = j.find("bbox"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 4) {
      throw ValidationError("bbox must be an [x, y, w, h] array");
    }
    obj.bbox = BoundingBox{(*it)[0].get<double>(), (*it)[1].get<double>(),
                           (*it)[2].get<double>(), (*it)[3].get<double>()};
  }
  return obj;
}

DetectionRecord record_from_json(const json& j) {
  if (!j.is_object()) {
    throw ValidationError("record must be a JSON object");
  }
  DetectionRecord rec;
  rec.camera_id = j.at("camera_id").get<std::string>();
  rec.frame_id = j.at("frame_id").get<std::string>();
  rec.timestamp_ms = j.at("timestamp_ms").get<std::int64_t>();
  for (const auto& o : j.at("objects")) {
    rec.objects.push_back(object_from_json(o));
  }
  return rec;
}

ordered_json object_to_json(const ObjectDetection& obj) {
  ordered_json j;
  j["track_id"] = obj.track_id;
  j["class"] = obj.class_label;
  j["lane"] = obj.lane ? json(*obj.lane) : json(nullptr);
  j["avg_speed_mps"] = obj.avg_speed_mps ? json(*obj.avg_speed_mps) : json(nullptr);
  if (obj.trajectory) {
    ordered_json traj = ordered_json::array();
    for (const auto& p : *obj.trajectory) {
      traj.push_back({p.x, p.y, p.t_ms});
    }
    j["trajectory"] = std::move(traj);
  } else {
    j["trajectory"] = nullptr;
  }
  if (obj.bbox) {
    j["bbox"] = {obj.bbox->x, obj.bbox->y, obj.bbox->w, obj.bbox->h};
  } else {
    j["bbox"] = nullptr;
  }
  return j;
}

}  // namespace

DetectionRecord validate_record(DetectionRecord record) {
  if (record.camera_id.empty()) {
    throw ValidationError("camera_id must be non-empty");
  }
  if (record.frame_id.empty()) {
    throw ValidationError("frame_id must be non-empty");
  }
  if (record.timestamp_ms < 0) {
    throw ValidationError("timestamp_ms must be non-negative");
  }
  std::set<std::string> seen_tracks;
  for (auto& obj : record.objects) {
    if (obj.track_id.empty()) {
      throw ValidationError("track_id must be non-empty");
    }
    if (!seen_tracks.insert(obj.track_id).second) {
      throw ValidationError("duplicate track_id within record: " + obj.track_id);
    }
    obj.class_label = lowercase(obj.class_label);
    if (obj.class_label.empty()) {
      throw ValidationError("class must be non-empty");
    }
    if (obj.avg_speed_mps && *obj.avg_speed_mps < 0.0) {
      throw ValidationError("avg_speed_mps must be non-negative for track " +
                            obj.track_id);
    }
    if (obj.lane && *obj.lane < 1) {
      throw ValidationError("lane must be a positive lane number for track " +
                            obj.track_id);
    }
    if (obj.trajectory) {
      for (std::size_t i = 1; i < obj.trajectory->size(); ++i) {
        if ((*obj.trajectory)[i].t_ms <= (*obj.trajectory)[i - 1].t_ms) {
          throw ValidationError(
              "trajectory timestamps must be strictly increasing for track " +
              obj.track_id);
        }
      }
    }
    if (obj.bbox && (obj.bbox->w < 0.0 || obj.bbox->h < 0.0)) {
      throw ValidationError("bbox extent must be non-negative for track " +
                            obj.track_id);
    }
  }
  return record;
}

std::vector<DetectionRecord> parse_detections(std::istream& in) {
  std::vector<DetectionRecord> records;
  std::set<std::pair<std::string, std::string>> seen_frames;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    DetectionRecord rec;
    try {
      rec = validate_record(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), lineno);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!seen_frames.emplace(rec.camera_id, rec.frame_id).second) {
      throw ParseError("duplicate frame: camera_id=" + rec.camera_id +
                           " frame_id=" + rec.frame_id,
                       lineno);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<DetectionRecord> parse_detections(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_detections(in);
}

std::string serialize_record(const DetectionRecord& record) {
  ordered_json j;
  j["camera_id"] = record.camera_id;
  j["frame_id"] = record.frame_id;
  j["timestamp_ms"] = record.timestamp_ms;
  ordered_json objs = ordered_json::array();
  for (const auto& obj : record.objects) {
    objs.push_back(object_to_json(obj));
  }
  j["objects"] = std::move(objs);
  return j.dump();
}

std::string serialize_detections(const std::vector<DetectionRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += serialize_record(rec);
    out += '\n';
  }
  return out;
}

}  // namespace tmkg
