#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmkg/detection.hpp"

namespace tmkg {

// A steady per-frame population: `count` objects of one class, optionally
// pinned to a lane and moving at a fixed speed.
struct BasePopulation {
  std::string class_label = "car";
  std::optional<int> lane;
  int count = 0;
  std::optional<double> speed_mps;
};

// Extra cars injected into one lane over an inclusive frame range.
struct CongestionEpisode {
  int start_frame = 0;
  int end_frame = 0;
  int lane = 0;
  int extra_cars = 0;
};

struct SynthConfig {
  std::string camera_id = "synth0";
  int frames = 0;
  std::int64_t start_timestamp_ms = 0;
  std::int64_t frame_period_ms = 1000;
  int noise = 0;  // max absolute per-population count jitter per frame
  std::vector<BasePopulation> base;
  std::vector<CongestionEpisode> episodes;
};

struct FrameTruth {
  std::string frame_id;
  bool congested = false;
};

struct SynthResult {
  std::vector<DetectionRecord> records;
  std::vector<FrameTruth> truth;
};

// Deterministic function of (config, seed); repeated calls serialize to
// byte-identical JSONL. Episodes add extra_cars to the named lane on top of
// the jittered base counts; truth marks every frame inside an episode.
// Throws ValidationError for invalid configs, including two episodes
// overlapping on the same lane.
SynthResult synthesize_scenes(const SynthConfig& config, std::uint64_t seed);

// JSON form of SynthConfig (the "synth" object of the CLI config file).
SynthConfig parse_synth_config(std::string_view json_text);

// Ground-truth JSONL: {"frame_id": str, "congested": bool} per line.
std::string serialize_truth(const std::vector<FrameTruth>& truth);

}  // namespace tmkg
