#include <benchmark/benchmark.h>

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tmkg/features.hpp"
#include "tmkg/graph.hpp"
#include "tmkg/hashing.hpp"
#include "tmkg/ingest.hpp"
#include "tmkg/lexicalize.hpp"
#include "tmkg/ntriples.hpp"
#include "tmkg/ontology.hpp"
#include "tmkg/scene.hpp"
#include "tmkg/similarity.hpp"
#include "tmkg/synth.hpp"

namespace {

using namespace tmkg;

SynthResult make_stream(int frames) {
  SynthConfig config;
  config.camera_id = "bench";
  config.frames = frames;
  config.noise = 1;
  config.base = {{"car", 1, 3, 9.5}, {"truck", 2, 1, 7.0}, {"bike", {}, 2, {}}};
  config.episodes = {{frames / 4, frames / 2, 1, 6}};
  return synthesize_scenes(config, 42);
}

Graph make_graph(int frames) {
  Graph g;
  g.insert_all(default_axioms());
  for (const auto& rec : make_stream(frames).records) g.insert_all(instantiate_scene(rec));
  return g;
}

SceneFeatures make_features() {
  SynthResult synth = make_stream(4);
  Graph g;
  g.insert_all(default_axioms());
  g.insert_all(instantiate_scene(synth.records[0]));
  return extract_features(scene_subgraph(g, mint_scene_iri("bench", synth.records[0].frame_id)));
}

void bm_hash_features_dense(benchmark::State& state) {
  SceneFeatures features = make_features();
  auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hash_features(features, m, 0));
  }
}
BENCHMARK(bm_hash_features_dense)->Arg(4096)->Arg(65536);

void bm_hash_features_sparse(benchmark::State& state) {
  SceneFeatures features = make_features();
  auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hash_features_sparse(features, m, 0));
  }
}
BENCHMARK(bm_hash_features_sparse)->Arg(4096)->Arg(1 << 18);

void bm_match_pattern_join(benchmark::State& state) {
  Graph g = make_graph(static_cast<int>(state.range(0)));
  std::vector<TriplePattern> patterns = {
      parse_pattern("?s rdf:type tm:Car"),
      parse_pattern("?s tm:inLane ?l"),
      parse_pattern("?l tm:laneNumber 1"),
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_pattern(g, patterns));
  }
  state.SetLabel(std::to_string(g.size()) + " triples");
}
BENCHMARK(bm_match_pattern_join)->Arg(16)->Arg(128);

void bm_structural_knn(benchmark::State& state) {
  Graph g = make_graph(static_cast<int>(state.range(0)));
  SimilarityIndex index = SimilarityIndex::build(g, Backend::kStructural);
  std::set<Triple> probe = scene_subgraph(g, list_scenes(g).front());
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.knn(probe, 5));
  }
}
BENCHMARK(bm_structural_knn)->Arg(64)->Arg(256);

void bm_describe_scene(benchmark::State& state) {
  Graph g = make_graph(4);
  std::set<Triple> scene = scene_subgraph(g, list_scenes(g).front());
  for (auto _ : state) {
    benchmark::DoNotOptimize(describe_scene(scene));
  }
}
BENCHMARK(bm_describe_scene);

void bm_export_graph(benchmark::State& state) {
  Graph g = make_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(export_graph(g));
  }
  state.SetLabel(std::to_string(g.size()) + " triples");
}
BENCHMARK(bm_export_graph)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
