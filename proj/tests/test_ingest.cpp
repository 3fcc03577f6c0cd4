#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tmkg/errors.hpp"
#include "tmkg/ingest.hpp"
#include "tmkg/synth.hpp"

using namespace tmkg;
using testutil::make_object;
using testutil::make_record;

namespace {

DetectionRecord random_record(std::mt19937& rng, int index) {
  std::uniform_int_distribution<int> count(0, 5);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> lane(1, 4);
  std::uniform_real_distribution<double> speed(0.0, 30.0);
  DetectionRecord rec = make_record("cam", "f" + std::to_string(index), index * 100, {});
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    ObjectDetection obj = make_object("t" + std::to_string(i), i % 2 ? "car" : "bike");
    if (coin(rng)) obj.lane = lane(rng);
    if (coin(rng)) obj.avg_speed_mps = speed(rng);
    if (coin(rng)) {
      obj.trajectory = std::vector<TrajectorySample>{{0.0, 0.0, 0}, {speed(rng), 1.5, 500}};
    }
    if (coin(rng)) obj.bbox = BoundingBox{1.0, 2.0, 3.0, 4.0};
    rec.objects.push_back(std::move(obj));
  }
  return rec;
}

}  // namespace

TEST_CASE("parse_detections on the boundary inputs") {
  CHECK(parse_detections("").empty());

  auto one = parse_detections(
      R"({"camera_id":"c1","frame_id":"f1","timestamp_ms":0,"objects":[]})" "\n");
  REQUIRE(one.size() == 1);
  CHECK(one[0].camera_id == "c1");
  CHECK(one[0].objects.empty());

  SUBCASE("absent optional fields parse like explicit nulls") {
    auto recs = parse_detections(
        R"({"camera_id":"c1","frame_id":"f1","timestamp_ms":0,"objects":[{"track_id":"t1","class":"car"}]})" "\n");
    REQUIRE(recs.size() == 1);
    REQUIRE(recs[0].objects.size() == 1);
    CHECK_FALSE(recs[0].objects[0].lane);
    CHECK_FALSE(recs[0].objects[0].avg_speed_mps);
    CHECK_FALSE(recs[0].objects[0].trajectory);
    CHECK_FALSE(recs[0].objects[0].bbox);
  }
}

TEST_CASE("malformed middle line is reported as line 2") {
  std::string text;
  text += R"({"camera_id":"c1","frame_id":"f1","timestamp_ms":0,"objects":[]})" "\n";
  text += "{broken\n";
  text += R"({"camera_id":"c1","frame_id":"f3","timestamp_ms":0,"objects":[]})" "\n";
  try {
    parse_detections(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("duplicate camera/frame pairs are rejected by name") {
  const std::string line =
      R"({"camera_id":"c1","frame_id":"f1","timestamp_ms":0,"objects":[]})" "\n";
  try {
    parse_detections(line + line);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    std::string what = e.what();
    CHECK(what.find("c1") != std::string::npos);
    CHECK(what.find("f1") != std::string::npos);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("validate_record normalizes and rejects") {
  SUBCASE("class labels are lowercased") {
    auto rec = validate_record(make_record("c", "f", 0, {make_object("t1", "Car")}));
    CHECK(rec.objects[0].class_label == "car");
  }

  SUBCASE("negative speed") {
    CHECK_THROWS_AS(
        validate_record(make_record("c", "f", 0, {make_object("t1", "car", 1, -1.0)})),
        ValidationError);
  }

  SUBCASE("non-increasing trajectory timestamps") {
    ObjectDetection obj = make_object("t1", "car");
    obj.trajectory = std::vector<TrajectorySample>{{0, 0, 0}, {1, 1, 0}};
    CHECK_THROWS_AS(validate_record(make_record("c", "f", 0, {obj})), ValidationError);
  }

  SUBCASE("duplicate track ids") {
    CHECK_THROWS_AS(validate_record(make_record(
                        "c", "f", 0, {make_object("t1", "car"), make_object("t1", "bike")})),
                    ValidationError);
  }

  SUBCASE("negative timestamp") {
    CHECK_THROWS_AS(validate_record(make_record("c", "f", -5, {})), ValidationError);
  }

  SUBCASE("unknown class labels survive") {
    auto rec = validate_record(make_record("c", "f", 0, {make_object("t1", "Scooter")}));
    CHECK(rec.objects[0].class_label == "scooter");
  }
}

TEST_CASE("parse after serialize is the identity on random records") {
  std::mt19937 rng(99);
  for (int round = 0; round < 30; ++round) {
    std::vector<DetectionRecord> records;
    std::uniform_int_distribution<int> count(0, 6);
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
      records.push_back(random_record(rng, i));
    }
    CHECK(parse_detections(serialize_detections(records)) == records);
  }
}

TEST_CASE("synthesize_scenes honors its config") {
  SynthConfig config;
  config.camera_id = "cam";
  config.frames = 100;
  config.base = {{"car", 1, 2, 10.0}};
  config.episodes = {{40, 60, 1, 8}};

  SUBCASE("zero frames give an empty stream") {
    SynthConfig zero = config;
    zero.frames = 0;
    zero.episodes.clear();
    auto result = synthesize_scenes(zero, 1);
    CHECK(result.records.empty());
    CHECK(result.truth.empty());
  }

  SUBCASE("same config and seed twice is byte-identical") {
    auto a = synthesize_scenes(config, 5);
    auto b = synthesize_scenes(config, 5);
    CHECK(serialize_detections(a.records) == serialize_detections(b.records));
    CHECK(serialize_truth(a.truth) == serialize_truth(b.truth));
  }

  SUBCASE("different seeds differ") {
    auto a = synthesize_scenes(config, 5);
    auto b = synthesize_scenes(config, 6);
    CHECK(serialize_detections(a.records) != serialize_detections(b.records));
  }

  SUBCASE("episode frames carry the extra cars, bounded by noise") {
    config.noise = 1;
    auto result = synthesize_scenes(config, 17);
    REQUIRE(result.records.size() == 100);
    REQUIRE(result.truth.size() == 100);
    for (int frame = 0; frame < 100; ++frame) {
      int cars = 0;
      for (const auto& obj : result.records[frame].objects) {
        if (obj.class_label == "car" && obj.lane == 1) ++cars;
      }
      bool in_episode = frame >= 40 && frame <= 60;
      CHECK(result.truth[frame].congested == in_episode);
      if (in_episode) {
        CHECK(cars >= 2 + 8 - config.noise);
      } else {
        CHECK(cars <= 2 + config.noise);
      }
    }
  }

  SUBCASE("every synthesized record passes validation") {
    config.noise = 2;
    auto result = synthesize_scenes(config, 3);
    for (const auto& rec : result.records) {
      CHECK_NOTHROW(validate_record(rec));
    }
  }

  SUBCASE("overlapping episodes on one lane are rejected") {
    config.episodes = {{10, 20, 1, 3}, {15, 30, 1, 3}};
    CHECK_THROWS_AS(synthesize_scenes(config, 1), ValidationError);
  }

  SUBCASE("overlapping frame ranges on different lanes are allowed") {
    config.frames = 40;
    config.episodes = {{10, 20, 1, 3}, {15, 30, 2, 3}};
    CHECK_NOTHROW(synthesize_scenes(config, 1));
  }
}
