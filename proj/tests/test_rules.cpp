#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "test_util.hpp"
#include "tmkg/errors.hpp"
#include "tmkg/features.hpp"
#include "tmkg/rules.hpp"
#include "tmkg/scene.hpp"
#include "tmkg/synth.hpp"

using namespace tmkg;

namespace {

SceneFeatures from_map(const std::map<std::string, double>& entries) {
  SceneFeatures f;
  for (const auto& [k, v] : entries) f.set(k, v);
  return f;
}

}  // namespace

TEST_CASE("median_features follows the componentwise rule") {
  CHECK_THROWS_AS(median_features({}), std::invalid_argument);

  SceneFeatures f = from_map({{"count:car", 2}, {"count:bike", 1}});
  CHECK(median_features({f, f, f}) == f);

  CHECK(median_features({from_map({{"count:car", 2}}), from_map({{"count:car", 4}}),
                         from_map({{"count:car", 9}})}) == from_map({{"count:car", 4}}));

  SUBCASE("even batches average the middle pair") {
    CHECK(median_features({from_map({{"count:car", 2}}), from_map({{"count:car", 4}})}) ==
          from_map({{"count:car", 3}}));
  }

  SUBCASE("absent keys count as zero and zero medians are dropped") {
    auto median = median_features({from_map({{"count:car", 6}}), from_map({}), from_map({})});
    CHECK(median.empty());  // values 6,0,0 -> median 0 -> dropped
    auto median2 = median_features({from_map({{"count:car", 6}}), from_map({{"count:car", 2}}),
                                    from_map({})});
    CHECK(median2 == from_map({{"count:car", 2}}));
  }
}

TEST_CASE("deviation_score is the L1 distance with absent-as-zero") {
  SceneFeatures m = from_map({{"count:car", 4}});
  CHECK(deviation_score(m, m) == 0.0);
  CHECK(deviation_score(from_map({{"count:car", 9}}), m) == 5.0);
  CHECK(deviation_score(from_map({}), from_map({{"count:car", 3}, {"count:bike", 1}})) == 4.0);

  SUBCASE("metric axioms on random features") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> key(0, 8);
    std::uniform_real_distribution<double> value(0.0, 9.0);
    auto random_features = [&] {
      SceneFeatures f;
      for (int i = 0; i < 6; ++i) f.set("k" + std::to_string(key(rng)), value(rng));
      return f;
    };
    for (int round = 0; round < 50; ++round) {
      SceneFeatures a = random_features(), b = random_features(), c = random_features();
      CHECK(deviation_score(a, b) >= 0.0);
      CHECK(deviation_score(a, b) == doctest::Approx(deviation_score(b, a)));
      CHECK(deviation_score(a, c) <=
            doctest::Approx(deviation_score(a, b) + deviation_score(b, c)));
      CHECK((deviation_score(a, b) == 0.0) == (a == b));
    }
  }
}

TEST_CASE("rank_congestion orders, scores percentiles and fires labels") {
  SUBCASE("all-identical batch has zero deviations everywhere") {
    SceneFeatures f = from_map({{"count:car", 2}});
    auto report = rank_congestion(
        {{"http://t/a", f}, {"http://t/b", f}, {"http://t/c", f}});
    REQUIRE(report.size() == 3);
    for (const auto& entry : report) {
      CHECK(entry.deviation == 0.0);
      CHECK(entry.percentile == 0.0);
    }
    // Tie-break: IRI ascending.
    CHECK(report[0].scene_iri == "http://t/a");
    CHECK(report[2].scene_iri == "http://t/c");
  }

  SUBCASE("deviations 5, 2, 0 sort descending") {
    // car counts 4, 6, 11: median 6, so deviations are 2, 0, 5.
    auto report = rank_congestion({{"http://t/low", from_map({{"count:car", 4}})},
                                   {"http://t/mid", from_map({{"count:car", 6}})},
                                   {"http://t/high", from_map({{"count:car", 11}})}});
    REQUIRE(report.size() == 3);
    CHECK(report[0].scene_iri == "http://t/high");
    CHECK(report[0].deviation == 5.0);
    CHECK(report[0].percentile == 1.0);
    CHECK(report[1].scene_iri == "http://t/low");
    CHECK(report[1].deviation == 2.0);
    CHECK(report[1].percentile == 0.5);
    CHECK(report[2].scene_iri == "http://t/mid");
    CHECK(report[2].deviation == 0.0);
    CHECK(report[2].percentile == 0.0);
  }

  SUBCASE("single frame is its own median") {
    auto report = rank_congestion({{"http://t/only", from_map({{"count:car", 3}})}});
    REQUIRE(report.size() == 1);
    CHECK(report[0].deviation == 0.0);
    CHECK(report[0].percentile == 1.0);
  }

  SUBCASE("empty batch is rejected") {
    CHECK_THROWS_AS(rank_congestion({}), std::invalid_argument);
  }

  SUBCASE("ranking ignores appended zero-valued features") {
    std::vector<std::pair<Iri, SceneFeatures>> batch = {
        {"http://t/a", from_map({{"count:car", 1}})},
        {"http://t/b", from_map({{"count:car", 5}})},
        {"http://t/c", from_map({{"count:car", 2}})}};
    auto before = rank_congestion(batch);
    batch[0].second.set("count:ghost", 0.0);  // set drops zeros by contract
    batch[1].second.set("lane_occupancy:9", 0.0);
    auto after = rank_congestion(batch);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(before[i].scene_iri == after[i].scene_iri);
      CHECK(before[i].deviation == after[i].deviation);
    }
  }
}

TEST_CASE("rules parse from JSON and evaluate as conjunctions") {
  const std::string text = R"([
    {"name": "queue", "all": [{"feature": "count:car:lane:3", "op": ">=", "value": 5}],
     "label": "traffic_queue"},
    {"name": "empty-road", "all": [{"feature": "count:total", "op": "==", "value": 0}],
     "label": "empty"}
  ])";
  auto rules = parse_rules(text);
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].name == "queue");
  CHECK(rules[0].label == "traffic_queue");

  SUBCASE("boundary: >= 5 fires at 5, not at 4") {
    std::vector<Rule> queue_only = {rules[0]};
    CHECK(apply_rules(queue_only, from_map({{"count:car:lane:3", 5}})) ==
          std::vector<std::string>{"traffic_queue"});
    CHECK(apply_rules(queue_only, from_map({{"count:car:lane:3", 4}})).empty());
  }

  SUBCASE("absent features evaluate as zero") {
    auto fired = apply_rules(rules, from_map({}));
    CHECK(fired == std::vector<std::string>{"empty"});  // count:total absent -> 0
    auto busy = apply_rules(rules, from_map({{"count:total", 1}}));
    CHECK(busy.empty());
  }

  SUBCASE("conjunctions need every condition") {
    auto both = parse_rules(R"([{"name": "n", "all": [
      {"feature": "count:car", "op": ">", "value": 1},
      {"feature": "count:bike", "op": "<", "value": 1}], "label": "l"}])");
    CHECK(apply_rules(both, from_map({{"count:car", 2}})) == std::vector<std::string>{"l"});
    CHECK(apply_rules(both, from_map({{"count:car", 2}, {"count:bike", 1}})).empty());
    CHECK(apply_rules(both, from_map({{"count:bike", 0}})).empty());
  }

  SUBCASE("every comparator") {
    auto mk = [](const std::string& op) {
      return parse_rules(R"([{"name": "n", "all": [{"feature": "x", "op": ")" + op +
                         R"(", "value": 2}], "label": "l"}])");
    };
    CHECK(apply_rules(mk("<"), from_map({{"x", 1}})).size() == 1);
    CHECK(apply_rules(mk("<"), from_map({{"x", 2}})).empty());
    CHECK(apply_rules(mk("<="), from_map({{"x", 2}})).size() == 1);
    CHECK(apply_rules(mk("=="), from_map({{"x", 2}})).size() == 1);
    CHECK(apply_rules(mk(">="), from_map({{"x", 2}})).size() == 1);
    CHECK(apply_rules(mk(">"), from_map({{"x", 2}})).empty());
    CHECK(apply_rules(mk(">"), from_map({{"x", 3}})).size() == 1);
  }

  SUBCASE("malformed inputs are parse errors") {
    CHECK_THROWS_AS(parse_rules("{}"), ParseError);
    CHECK_THROWS_AS(parse_rules("[{\"name\":\"n\",\"all\":[],\"label\":\"l\"}]"), ParseError);
    CHECK_THROWS_AS(
        parse_rules(
            R"([{"name":"n","all":[{"feature":"x","op":"!=","value":1}],"label":"l"}])"),
        ParseError);
    CHECK_THROWS_AS(parse_rules("not json"), ParseError);
  }
}

TEST_CASE("episode frames deviate more than steady frames") {
  SynthConfig config;
  config.camera_id = "cam";
  config.frames = 120;
  config.noise = 1;
  config.base = {{"car", 1, 2, 10.0}};
  config.episodes = {{50, 80, 1, 8}};
  auto synth = synthesize_scenes(config, 13);

  std::vector<std::pair<Iri, SceneFeatures>> batch;
  for (const auto& rec : synth.records) {
    Graph g;
    g.insert_all(instantiate_scene(rec));
    auto scene = mint_scene_iri(rec.camera_id, rec.frame_id);
    batch.emplace_back(scene, extract_features(scene_subgraph(g, scene)));
  }
  auto report = rank_congestion(batch);

  std::map<Iri, bool> truth;
  for (std::size_t i = 0; i < synth.truth.size(); ++i) {
    truth[mint_scene_iri("cam", synth.truth[i].frame_id)] = synth.truth[i].congested;
  }
  double episode_sum = 0.0, steady_sum = 0.0;
  int episode_n = 0, steady_n = 0;
  for (const auto& entry : report) {
    if (truth.at(entry.scene_iri)) {
      episode_sum += entry.deviation;
      ++episode_n;
    } else {
      steady_sum += entry.deviation;
      ++steady_n;
    }
  }
  REQUIRE(episode_n > 0);
  REQUIRE(steady_n > 0);
  CHECK(episode_sum / episode_n > steady_sum / steady_n);
}
