#include "tmkg/synth.hpp"

#include <algorithm>
#include <string>

#include <json.hpp>

#include "tmkg/errors.hpp"
#include "tmkg/ingest.hpp"

namespace tmkg {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// splitmix64: tiny, seedable, and stable across platforms, which std::mt19937
// distributions are not.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi] inclusive
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

void validate_config(const SynthConfig& config) {
  if (config.camera_id.empty()) {
    throw ValidationError("synth camera_id must be non-empty");
  }
  if (config.frames < 0) {
    throw ValidationError("synth frames must be non-negative");
  }
  if (config.frame_period_ms < 1) {
    throw ValidationError("synth frame_period_ms must be at least 1");
  }
  if (config.noise < 0) {
    throw ValidationError("synth noise must be non-negative");
  }
  for (const auto& pop : config.base) {
    if (pop.count < 0) {
      throw ValidationError("base population count must be non-negative");
    }
    if (pop.class_label.empty()) {
      throw ValidationError("base population class must be non-empty");
    }
    if (pop.lane && *pop.lane < 1) {
      throw ValidationError("base population lane must be positive");
    }
    if (pop.speed_mps && *pop.speed_mps < 0.0) {
      throw ValidationError("base population speed must be non-negative");
    }
  }
  for (const auto& ep : config.episodes) {
    if (ep.start_frame < 0 || ep.end_frame < ep.start_frame) {
      throw ValidationError("episode frame range must satisfy 0 <= start <= end");
    }
    if (ep.end_frame >= config.frames) {
      throw ValidationError("episode extends past the last frame");
    }
    if (ep.lane < 1) {
      throw ValidationError("episode lane must be positive");
    }
    if (ep.extra_cars < 1) {
      throw ValidationError("episode extra_cars must be positive");
    }
  }
  for (std::size_t i = 0; i < config.episodes.size(); ++i) {
    for (std::size_t j = i + 1; j < config.episodes.size(); ++j) {
      const auto& a = config.episodes[i];
      const auto& b = config.episodes[j];
      if (a.lane == b.lane && a.start_frame <= b.end_frame &&
          b.start_frame <= a.end_frame) {
        throw ValidationError("episodes overlap on lane " + std::to_string(a.lane));
      }
    }
  }
}

std::string frame_name(int index) { return "f" + std::to_string(index); }

}  // namespace

SynthResult synthesize_scenes(const SynthConfig& config, std::uint64_t seed) {
  validate_config(config);
  SplitMix64 rng(seed);
  SynthResult result;
  result.records.reserve(config.frames);
  result.truth.reserve(config.frames);

  for (int frame = 0; frame < config.frames; ++frame) {
    DetectionRecord rec;
    rec.camera_id = config.camera_id;
    rec.frame_id = frame_name(frame);
    rec.timestamp_ms = config.start_timestamp_ms + frame * config.frame_period_ms;

    int track_seq = 0;
    auto emit = [&](const std::string& cls, std::optional<int> lane,
                    std::optional<double> speed) {
      ObjectDetection obj;
      obj.track_id = "t" + std::to_string(frame) + "_" + std::to_string(track_seq++);
      obj.class_label = cls;
      obj.lane = lane;
      if (speed) {
        // +/-10% speed jitter keeps scenes from being byte-identical
        obj.avg_speed_mps = *speed * (0.9 + 0.2 * rng.unit());
      }
      rec.objects.push_back(std::move(obj));
    };

    for (const auto& pop : config.base) {
      int count = pop.count;
      if (config.noise > 0) {
        count += static_cast<int>(rng.range(-config.noise, config.noise));
      }
      count = std::max(count, 0);
      for (int i = 0; i < count; ++i) {
        emit(pop.class_label, pop.lane, pop.speed_mps);
      }
    }

    bool congested = false;
    for (const auto& ep : config.episodes) {
      if (frame < ep.start_frame || frame > ep.end_frame) {
        continue;
      }
      congested = true;
      for (int i = 0; i < ep.extra_cars; ++i) {
        // congested traffic crawls
        emit("car", ep.lane, 1.5);
      }
    }

    result.records.push_back(validate_record(std::move(rec)));
    result.truth.push_back({frame_name(frame), congested});
  }
  return result;
}

SynthConfig parse_synth_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  SynthConfig config;
  try {
    if (j.contains("camera_id")) config.camera_id = j["camera_id"].get<std::string>();
    if (j.contains("frames")) config.frames = j["frames"].get<int>();
    if (j.contains("start_timestamp_ms")) {
      config.start_timestamp_ms = j["start_timestamp_ms"].get<std::int64_t>();
    }
    if (j.contains("frame_period_ms")) {
      config.frame_period_ms = j["frame_period_ms"].get<std::int64_t>();
    }
    if (j.contains("noise")) config.noise = j["noise"].get<int>();
    if (j.contains("base")) {
      for (const auto& p : j["base"]) {
        BasePopulation pop;
        if (p.contains("class")) pop.class_label = p["class"].get<std::string>();
        if (p.contains("lane") && !p["lane"].is_null()) pop.lane = p["lane"].get<int>();
        pop.count = p.at("count").get<int>();
        if (p.contains("speed_mps") && !p["speed_mps"].is_null()) {
          pop.speed_mps = p["speed_mps"].get<double>();
        }
        config.base.push_back(std::move(pop));
      }
    }
    if (j.contains("episodes")) {
      for (const auto& e : j["episodes"]) {
        CongestionEpisode ep;
        ep.start_frame = e.at("start_frame").get<int>();
        ep.end_frame = e.at("end_frame").get<int>();
        ep.lane = e.at("lane").get<int>();
        ep.extra_cars = e.at("extra_cars").get<int>();
        config.episodes.push_back(ep);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("synth config: ") + e.what());
  }
  return config;
}

std::string serialize_truth(const std::vector<FrameTruth>& truth) {
  std::string out;
  for (const auto& t : truth) {
    ordered_json j;
    j["frame_id"] = t.frame_id;
    j["congested"] = t.congested;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace tmkg
