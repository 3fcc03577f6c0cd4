#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "test_util.hpp"
#include "tmkg/graph.hpp"
#include "tmkg/lexicalize.hpp"
#include "tmkg/ontology.hpp"
#include "tmkg/scene.hpp"
#include "tmkg/similarity.hpp"
#include "tmkg/text.hpp"

using namespace tmkg;
using testutil::make_object;
using testutil::make_record;

namespace {

DetectionRecord random_scene_record(std::mt19937& rng, int index) {
  static const std::vector<std::string> classes = {"car", "truck", "bike", "person"};
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<std::size_t> ci(0, classes.size() - 1);
  std::uniform_int_distribution<int> lane(1, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> speed(0.5, 25.0);
  DetectionRecord rec = make_record("cam", "f" + std::to_string(index), index, {});
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    ObjectDetection obj = make_object("t" + std::to_string(i), classes[ci(rng)]);
    if (coin(rng)) obj.lane = lane(rng);
    if (coin(rng)) obj.avg_speed_mps = speed(rng);
    rec.objects.push_back(std::move(obj));
  }
  return rec;
}

std::vector<std::pair<Iri, std::set<Triple>>> random_corpus(std::mt19937& rng, int scenes) {
  std::vector<std::pair<Iri, std::set<Triple>>> corpus;
  for (int i = 0; i < scenes; ++i) {
    auto rec = random_scene_record(rng, i);
    corpus.emplace_back(mint_scene_iri(rec.camera_id, rec.frame_id), testutil::scene_of(rec));
  }
  return corpus;
}

}  // namespace

TEST_CASE("tokenizer lowercases and buckets numbers") {
  CHECK(tokenize("Fast CAR!") == std::vector<std::string>{"fast", "car"});
  CHECK(tokenize("5.31 m/s") == tokenize("5.0 m/s"));
  CHECK(tokenize("speed 5.31") == std::vector<std::string>{"speed", "5"});
  CHECK(tokenize("lane 3 holds 12 cars") ==
        std::vector<std::string>{"lane", "3", "holds", "12", "cars"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(bucket_number(5.99) == 5);
  CHECK(bucket_number(5.0) == 5);
  CHECK(bucket_number(0.2) == 0);
}

TEST_CASE("canonicalize_scene renames and filters") {
  SUBCASE("the empty scene keeps only its type statement") {
    auto canon = canonicalize_scene(testutil::scene_of(make_record("c1", "f1", 7, {})));
    CHECK(canon == std::set<std::string>{"SCENE rdf:type tm:Scene"});
  }

  SUBCASE("frame ids and timestamps do not show through") {
    auto a = canonicalize_scene(testutil::scene_of(testutil::reference_match_record("c1", "f1")));
    auto b = canonicalize_scene(
        testutil::scene_of(testutil::reference_match_record("other", "f99")));
    CHECK(a == b);
  }

  SUBCASE("one car in lane 3 at 5.31 m/s") {
    auto canon = canonicalize_scene(
        testutil::scene_of(make_record("c1", "f1", 0, {make_object("t1", "car", 3, 5.31)})));
    CHECK(canon.contains("car#1 tm:averageSpeed 5"));
    CHECK(canon.contains("car#1 tm:inLane LANE#3"));
    CHECK(canon.contains("car#1 rdf:type tm:Car"));
    CHECK(canon.contains("SCENE tm:hasObject car#1"));
    CHECK(canon.contains("LANE#3 rdf:type tm:Lane"));
    CHECK(canon.contains("LANE#3 tm:laneNumber 3"));
    for (const auto& line : canon) {
      CHECK(line.find("tm:atTime") == std::string::npos);
      CHECK(line.find("tm:capturedBy") == std::string::npos);
    }
  }

  SUBCASE("within-class ordinals count up") {
    auto canon = canonicalize_scene(testutil::scene_of(
        make_record("c1", "f1", 0,
                    {make_object("a", "car"), make_object("b", "car"), make_object("c", "bike")})));
    CHECK(canon.contains("SCENE tm:hasObject car#1"));
    CHECK(canon.contains("SCENE tm:hasObject car#2"));
    CHECK(canon.contains("SCENE tm:hasObject bike#1"));
  }
}

TEST_CASE("structural similarity is canonical-set Jaccard") {
  auto scene = testutil::scene_of(testutil::reference_match_record());
  CHECK(structural_similarity(scene, scene) == 1.0);

  CHECK(jaccard({}, {}) == 1.0);
  CHECK(jaccard({"x", "y", "z", "w"}, {"x", "y", "z", "q"}) == doctest::Approx(0.6));
  CHECK(jaccard({"x"}, {"y"}) == 0.0);

  SUBCASE("two scenes always share the scene-type statement") {
    auto a = testutil::scene_of(make_record("c1", "f1", 0, {make_object("t1", "car")}));
    auto b = testutil::scene_of(make_record("c1", "f2", 0, {make_object("t1", "truck", 2, 9.0)}));
    double sim = structural_similarity(a, b);
    std::set<std::string> all = canonicalize_scene(a);
    for (const auto& s : canonicalize_scene(b)) all.insert(s);
    CHECK(sim > 0.0);
    CHECK(sim == doctest::Approx(1.0 / static_cast<double>(all.size())));
  }

  SUBCASE("symmetry on random pairs") {
    std::mt19937 rng(3);
    for (int round = 0; round < 10; ++round) {
      auto a = testutil::scene_of(random_scene_record(rng, 2 * round));
      auto b = testutil::scene_of(random_scene_record(rng, 2 * round + 1));
      double ab = structural_similarity(a, b);
      CHECK(ab == structural_similarity(b, a));
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0);
    }
  }
}

TEST_CASE("lexical similarity is tf cosine over bucketed tokens") {
  CHECK(lexical_similarity("", "") == 1.0);
  CHECK(lexical_similarity("car", "") == 0.0);
  CHECK(lexical_similarity("truck bike", "person car") == 0.0);
  CHECK(lexical_similarity("the car moved", "the car moved") == doctest::Approx(1.0));

  SUBCASE("speeds that bucket together compare equal") {
    auto a = describe_scene(testutil::scene_of(
        make_record("c1", "f1", 0,
                    {make_object("t1", "car", 3, 5.31), make_object("t2", "car", 3, 5.31)})));
    auto b = describe_scene(testutil::scene_of(
        make_record("c1", "f2", 0,
                    {make_object("t1", "car", 3, 5.52), make_object("t2", "car", 3, 5.52)})));
    CHECK(lexical_similarity(a, b) == doctest::Approx(1.0));
  }

  SUBCASE("self-similarity and symmetry on random descriptions") {
    std::mt19937 rng(8);
    for (int round = 0; round < 8; ++round) {
      auto a = describe_scene(testutil::scene_of(random_scene_record(rng, 2 * round)));
      auto b = describe_scene(testutil::scene_of(random_scene_record(rng, 2 * round + 1)));
      CHECK(lexical_similarity(a, a) == doctest::Approx(1.0));
      CHECK(lexical_similarity(a, b) == doctest::Approx(lexical_similarity(b, a)));
    }
  }
}

TEST_CASE("similarity index basics hold for every backend") {
  auto target = testutil::reference_match_record("cam", "target");
  std::vector<std::pair<Iri, std::set<Triple>>> corpus = {
      {mint_scene_iri("cam", "target"), testutil::scene_of(target)},
      {mint_scene_iri("cam", "other"),
       testutil::scene_of(make_record("cam", "other", 0, {make_object("t1", "truck", 1, 20.0)}))},
  };

  for (Backend backend : {Backend::kStructural, Backend::kLexical, Backend::kSemantic}) {
    CAPTURE(backend_name(backend));
    SimilarityIndex index = SimilarityIndex::build(corpus, backend);
    CHECK(index.size() == 2);

    auto hits = index.knn(corpus[0].second, 1);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].scene_iri == corpus[0].first);
    CHECK(hits[0].score == doctest::Approx(1.0));
    CHECK(hits[0].backend == backend);

    auto all = index.knn(corpus[0].second, 10);  // k past the corpus clamps
    CHECK(all.size() == 2);
    CHECK(all[0].score >= all[1].score);

    CHECK_THROWS_AS(index.knn(corpus[0].second, 0), std::invalid_argument);

    auto again = index.knn(corpus[0].second, 2);
    CHECK(again.size() == all.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      CHECK(again[i].scene_iri == all[i].scene_iri);
      CHECK(again[i].score == all[i].score);
    }
  }

  SUBCASE("empty corpus and unknown backend are rejected") {
    CHECK_THROWS_AS(
        SimilarityIndex::build(std::vector<std::pair<Iri, std::set<Triple>>>{},
                               Backend::kStructural),
        std::invalid_argument);
    CHECK_THROWS_AS(backend_from_name("cosine"), std::invalid_argument);
    CHECK(backend_from_name("structural") == Backend::kStructural);
    CHECK(backend_from_name("lexical") == Backend::kLexical);
    CHECK(backend_from_name("semantic") == Backend::kSemantic);
  }

  SUBCASE("text probes work for lexical and semantic, not structural") {
    SimilarityIndex lexical = SimilarityIndex::build(corpus, Backend::kLexical);
    auto hits = lexical.knn(std::string("2 are car and 1 is a bike in lane 3"), 1);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].scene_iri == corpus[0].first);

    SimilarityIndex structural = SimilarityIndex::build(corpus, Backend::kStructural);
    CHECK_THROWS_AS(structural.knn(std::string("text"), 1), std::invalid_argument);
  }
}

TEST_CASE("index build from a graph matches the scene-list build") {
  Graph g;
  g.insert_all(default_axioms());
  std::mt19937 rng(21);
  for (int i = 0; i < 8; ++i) {
    g.insert_all(instantiate_scene(random_scene_record(rng, i)));
  }
  SimilarityIndex from_graph = SimilarityIndex::build(g, Backend::kStructural);
  CHECK(from_graph.size() == 8);

  auto probe = scene_subgraph(g, mint_scene_iri("cam", "f3"));
  auto hits = from_graph.knn(probe, 1);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].scene_iri == mint_scene_iri("cam", "f3"));
  CHECK(hits[0].score == doctest::Approx(1.0));
}

TEST_CASE("hashed prefilter agrees with exact Jaccard on top-1") {
  std::mt19937 rng(2025);
  auto corpus = random_corpus(rng, 150);
  IndexParams params;
  params.m = 1u << 16;
  params.seed = 0;
  SimilarityIndex index = SimilarityIndex::build(corpus, Backend::kStructural, params);

  std::vector<std::set<std::string>> canon;
  canon.reserve(corpus.size());
  for (const auto& [iri, scene] : corpus) canon.push_back(canonicalize_scene(scene));

  int agree = 0;
  for (std::size_t probe = 0; probe < corpus.size(); ++probe) {
    auto hits = index.knn(corpus[probe].second, 1);
    REQUIRE(hits.size() == 1);

    // Exact brute force with the same (score desc, IRI asc) ordering.
    Iri best;
    double best_score = -1.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      double score = jaccard(canon[probe], canon[i]);
      if (score > best_score || (score == best_score && corpus[i].first < best)) {
        best = corpus[i].first;
        best_score = score;
      }
    }
    if (hits[0].scene_iri == best && hits[0].score == doctest::Approx(best_score)) {
      ++agree;
    }
  }
  CHECK(agree >= static_cast<int>(corpus.size() * 95 / 100));
}

TEST_CASE("the two-car one-bike probe finds its twin under every backend") {
  std::mt19937 rng(6);
  std::vector<std::pair<Iri, std::set<Triple>>> corpus;
  // Dissimilar filler: trucks and persons at high speeds in other lanes.
  for (int i = 0; i < 20; ++i) {
    DetectionRecord rec = make_record("cam", "fill" + std::to_string(i), i, {});
    std::uniform_int_distribution<int> n(3, 7);
    int count = n(rng);
    for (int j = 0; j < count; ++j) {
      rec.objects.push_back(
          make_object("t" + std::to_string(j), j % 2 ? "truck" : "person", 1, 18.0 + j));
    }
    corpus.emplace_back(mint_scene_iri("cam", rec.frame_id), testutil::scene_of(rec));
  }
  auto target = testutil::reference_match_record("cam", "target");
  corpus.emplace_back(mint_scene_iri("cam", "target"), testutil::scene_of(target));

  // Probe: 2 cars + 1 bike, cars in lane 3 around 5 m/s — not byte-equal to
  // the target, but closest in shape.
  auto probe = testutil::scene_of(
      make_record("probe", "p", 0,
                  {make_object("q1", "car", 3, 5.0), make_object("q2", "car", 3, 5.0),
                   make_object("q3", "bike")}));

  for (Backend backend : {Backend::kStructural, Backend::kLexical, Backend::kSemantic}) {
    CAPTURE(backend_name(backend));
    SimilarityIndex index = SimilarityIndex::build(corpus, backend);
    auto hits = index.knn(probe, 1);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].scene_iri == mint_scene_iri("cam", "target"));
  }
}
