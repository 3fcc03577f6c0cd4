#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "tmkg/detection.hpp"

namespace tmkg {

// Normalizes and checks one record: class labels lowercased, speeds
// non-negative, trajectory timestamps strictly increasing, track ids unique
// within the record. Throws ValidationError.
DetectionRecord validate_record(DetectionRecord record);

// Detection JSONL, one record per line:
//   {"camera_id": str, "frame_id": str, "timestamp_ms": int,
//    "objects": [{"track_id": str, "class": str, "lane": int|null,
//                 "avg_speed_mps": num|null, "trajectory": [[x,y,t_ms],...]|null,
//                 "bbox": [x,y,w,h]|null}]}
// Records come back in input order, each validated. Throws ParseError with
// the 1-based line number for malformed lines and duplicate
// (camera_id, frame_id) pairs.
std::vector<DetectionRecord> parse_detections(std::istream& in);
std::vector<DetectionRecord> parse_detections(std::string_view text);

// Inverse of parse_detections over the same schema; parse(serialize(x)) == x.
std::string serialize_record(const DetectionRecord& record);
std::string serialize_detections(const std::vector<DetectionRecord>& records);

}  // namespace tmkg
