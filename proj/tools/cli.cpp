#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmkg/embedder.hpp"
#include "tmkg/errors.hpp"
#include "tmkg/features.hpp"
#include "tmkg/graph.hpp"
#include "tmkg/ingest.hpp"
#include "tmkg/lexicalize.hpp"
#include "tmkg/nlquery.hpp"
#include "tmkg/ntriples.hpp"
#include "tmkg/ontology.hpp"
#include "tmkg/rules.hpp"
#include "tmkg/scene.hpp"
#include "tmkg/similarity.hpp"
#include "tmkg/synth.hpp"

namespace tmkg::cli {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) {
    throw ParseError("cannot write file: " + path);
  }
}

// Flag values, plus the option handles needed to tell "left at default"
// from "explicitly passed" when merging with the config file.
struct Options {
  std::string config_path;
  std::string kg;
  std::string in_path;
  std::vector<std::string> in_paths;
  std::string out_path;
  std::string truth_path;
  std::string scene_iri;
  std::string backend = "structural";
  std::string text;
  std::string rules_path;
  std::string embedder_kind;
  std::string endpoint;
  std::vector<std::string> background;
  std::vector<std::string> patterns;
  std::size_t k = 5;
  std::size_t m = 4096;
  std::size_t dim = 1024;
  std::uint64_t seed = 0;
  std::uint64_t hash_seed = 0;

  // handles for the numeric options of the active subcommand, set inside its
  // callback so defaults can be told apart from explicit flags
  CLI::Option* m_opt = nullptr;
  CLI::Option* hash_seed_opt = nullptr;
  CLI::Option* dim_opt = nullptr;
};

json load_config(const std::string& path) {
  if (path.empty()) {
    return json::object();
  }
  try {
    json config = json::parse(read_file(path));
    if (!config.is_object()) {
      throw ParseError("config file must hold a JSON object: " + path);
    }
    return config;
  } catch (const json::exception& e) {
    throw ParseError("config file " + path + ": " + e.what());
  }
}

bool passed(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

// flag > config > error
std::string require_path(const std::string& flag_value, const json& config, const char* key,
                         const std::string& flag_name) {
  if (!flag_value.empty()) {
    return flag_value;
  }
  if (config.contains(key) && config[key].is_string()) {
    return config[key].get<std::string>();
  }
  throw CLI::RequiredError(flag_name);
}

std::string optional_path(const std::string& flag_value, const json& config, const char* key) {
  if (!flag_value.empty()) {
    return flag_value;
  }
  if (config.contains(key) && config[key].is_string()) {
    return config[key].get<std::string>();
  }
  return "";
}

std::vector<std::string> merge_background(const Options& opt, const json& config) {
  if (!opt.background.empty()) {
    return opt.background;
  }
  std::vector<std::string> paths;
  if (config.contains("background")) {
    for (const auto& b : config["background"]) {
      paths.push_back(b.get<std::string>());
    }
  }
  return paths;
}

IndexParams make_index_params(const Options& opt, const json& config) {
  IndexParams params;
  const json hashing = config.value("hashing", json::object());
  params.m = passed(opt.m_opt) ? opt.m : hashing.value("m", std::size_t{4096});
  params.seed =
      passed(opt.hash_seed_opt) ? opt.hash_seed : hashing.value("seed", std::uint64_t{0});
  return params;
}

EmbedderSpec make_embedder_spec(const Options& opt, const json& config) {
  EmbedderSpec spec;
  const json e = config.value("embedder", json::object());
  const std::string kind =
      !opt.embedder_kind.empty() ? opt.embedder_kind : e.value("kind", "builtin");
  if (kind == "builtin") {
    spec.kind = EmbedderSpec::Kind::kBuiltin;
  } else if (kind == "remote") {
    spec.kind = EmbedderSpec::Kind::kRemote;
  } else {
    throw ParseError("unknown embedder kind: " + kind);
  }
  spec.dim = passed(opt.dim_opt) ? opt.dim : e.value("dim", std::size_t{1024});
  spec.seed = e.value("seed", std::uint64_t{0});
  spec.endpoint = !opt.endpoint.empty() ? opt.endpoint : e.value("endpoint", "");
  spec.timeout_seconds = e.value("timeout_s", 30.0);
  if (spec.kind == EmbedderSpec::Kind::kRemote && spec.endpoint.empty()) {
    throw CLI::RequiredError("--endpoint");
  }
  return spec;
}

Graph load_kg(const std::string& path) { return import_graph(read_file(path)); }

void emit(std::ostream& out, const std::string& out_path, const std::string& payload,
          const ordered_json& summary) {
  if (out_path.empty()) {
    out << payload;
  } else {
    write_file(out_path, payload);
    out << summary.dump() << "\n";
  }
}

std::string hits_json(const std::vector<SimilarityHit>& hits) {
  ordered_json arr = ordered_json::array();
  for (const auto& hit : hits) {
    ordered_json h;
    h["scene"] = hit.scene_iri;
    h["score"] = hit.score;
    h["backend"] = std::string(backend_name(hit.backend));
    arr.push_back(std::move(h));
  }
  return arr.dump() + "\n";
}

void cmd_synth(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  if (!config.contains("synth")) {
    throw ParseError("config has no \"synth\" section: " + opt.config_path);
  }
  const SynthConfig synth_config = parse_synth_config(config["synth"].dump());
  const SynthResult result = synthesize_scenes(synth_config, opt.seed);

  std::size_t objects = 0;
  for (const auto& rec : result.records) {
    objects += rec.objects.size();
  }
  ordered_json summary;
  summary["frames"] = result.records.size();
  summary["objects"] = objects;
  if (!opt.truth_path.empty()) {
    write_file(opt.truth_path, serialize_truth(result.truth));
    summary["truth"] = opt.truth_path;
  }
  if (!opt.out_path.empty()) {
    summary["out"] = opt.out_path;
  }
  emit(out, opt.out_path, serialize_detections(result.records), summary);
}

void cmd_ingest(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const std::string kg_path = require_path(opt.kg, config, "kg", "--kg");

  const std::vector<DetectionRecord> records = parse_detections(read_file(opt.in_path));
  Graph graph;
  graph.insert_all(default_axioms());
  for (const auto& path : merge_background(opt, config)) {
    import_background(graph, read_file(path));
  }
  for (const auto& rec : records) {
    graph.insert_all(instantiate_scene(rec));
  }
  write_file(kg_path, export_graph(graph));

  ordered_json summary;
  summary["records"] = records.size();
  summary["scenes"] = list_scenes(graph).size();
  summary["triples"] = graph.size();
  summary["kg"] = kg_path;
  out << summary.dump() << "\n";
}

std::vector<std::pair<Iri, std::set<Triple>>> select_scenes(const Graph& graph,
                                                            const std::string& only) {
  std::vector<std::pair<Iri, std::set<Triple>>> scenes;
  if (!only.empty()) {
    scenes.emplace_back(only, scene_subgraph(graph, only));
    return scenes;
  }
  for (const Iri& iri : list_scenes(graph)) {
    scenes.emplace_back(iri, scene_subgraph(graph, iri));
  }
  return scenes;
}

void cmd_lexicalize(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const Graph graph = load_kg(require_path(opt.kg, config, "kg", "--kg"));
  std::string payload;
  std::size_t count = 0;
  for (const auto& [iri, scene] : select_scenes(graph, opt.scene_iri)) {
    ordered_json line;
    line["scene"] = iri;
    line["text"] = describe_scene(scene).text;
    payload += line.dump();
    payload += '\n';
    ++count;
  }
  ordered_json summary;
  summary["scenes"] = count;
  summary["out"] = opt.out_path;
  emit(out, opt.out_path, payload, summary);
}

void cmd_features(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const Graph graph = load_kg(require_path(opt.kg, config, "kg", "--kg"));
  std::string payload;
  std::size_t count = 0;
  for (const auto& [iri, scene] : select_scenes(graph, opt.scene_iri)) {
    ordered_json line;
    line["scene"] = iri;
    line["features"] = extract_features(scene).entries;
    payload += line.dump();
    payload += '\n';
    ++count;
  }
  ordered_json summary;
  summary["scenes"] = count;
  summary["out"] = opt.out_path;
  emit(out, opt.out_path, payload, summary);
}

void cmd_congestion(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const Graph graph = load_kg(require_path(opt.kg, config, "kg", "--kg"));
  const std::string rules_path = optional_path(opt.rules_path, config, "rules");
  const std::vector<Rule> rules =
      rules_path.empty() ? std::vector<Rule>{} : parse_rules(read_file(rules_path));

  std::vector<std::pair<Iri, SceneFeatures>> batch;
  for (const auto& [iri, scene] : select_scenes(graph, "")) {
    batch.emplace_back(iri, extract_features(scene));
  }
  ordered_json report = ordered_json::array();
  for (const auto& entry : rank_congestion(batch, rules)) {
    ordered_json line;
    line["scene"] = entry.scene_iri;
    line["deviation"] = entry.deviation;
    line["percentile"] = entry.percentile;
    line["labels"] = entry.fired_labels;
    report.push_back(std::move(line));
  }
  ordered_json summary;
  summary["scenes"] = report.size();
  summary["out"] = opt.out_path;
  emit(out, opt.out_path, report.dump() + "\n", summary);
}

void cmd_similar(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const Graph graph = load_kg(require_path(opt.kg, config, "kg", "--kg"));
  IndexParams params = make_index_params(opt, config);
  params.embedder = make_embedder_spec(opt, config);
  const SimilarityIndex index =
      SimilarityIndex::build(graph, backend_from_name(opt.backend), params);
  const std::set<Triple> probe = scene_subgraph(graph, opt.scene_iri);
  out << hits_json(index.knn(Probe{probe}, opt.k));
}

void cmd_query(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const Graph graph = load_kg(require_path(opt.kg, config, "kg", "--kg"));
  std::vector<SceneDescription> descriptions;
  for (const auto& [iri, scene] : select_scenes(graph, "")) {
    descriptions.push_back(describe_scene(scene));
  }
  const SemanticIndex index =
      SemanticIndex::build(descriptions, make_embedder_spec(opt, config));
  out << hits_json(index.query(opt.text, opt.k));
}

void cmd_match(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const Graph graph = load_kg(require_path(opt.kg, config, "kg", "--kg"));
  std::vector<TriplePattern> patterns;
  patterns.reserve(opt.patterns.size());
  for (const auto& text : opt.patterns) {
    patterns.push_back(parse_pattern(text));
  }
  ordered_json arr = ordered_json::array();
  for (const auto& bindings : match_pattern(graph, patterns)) {
    ordered_json row;
    for (const auto& [var, term] : bindings) {
      row[var] = render_term(term);
    }
    arr.push_back(std::move(row));
  }
  out << arr.dump() << "\n";
}

void cmd_stats(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const Graph graph = load_kg(require_path(opt.kg, config, "kg", "--kg"));
  ordered_json summary;
  summary["triples"] = graph.size();
  summary["scenes"] = list_scenes(graph).size();
  out << summary.dump() << "\n";
}

void cmd_export(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const Graph graph = load_kg(require_path(opt.kg, config, "kg", "--kg"));
  ordered_json summary;
  summary["triples"] = graph.size();
  summary["out"] = opt.out_path;
  emit(out, opt.out_path, export_graph(graph), summary);
}

void cmd_import(const Options& opt, std::ostream& out) {
  const json config = load_config(opt.config_path);
  const std::string kg_path = require_path(opt.kg, config, "kg", "--kg");
  Graph graph;
  if (std::ifstream probe(kg_path); probe.good()) {
    graph = load_kg(kg_path);
  }
  for (const auto& path : opt.in_paths) {
    import_background(graph, read_file(path));
  }
  write_file(kg_path, export_graph(graph));
  ordered_json summary;
  summary["triples"] = graph.size();
  summary["kg"] = kg_path;
  out << summary.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"traffic monitoring knowledge graph engine"};
  app.name("tmkg");
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "JSON config file")->configurable(false);

  auto add_kg = [&](CLI::App* cmd) {
    cmd->add_option("--kg", opt.kg, "knowledge-graph snapshot (N-Triples)");
  };

  auto* synth = app.add_subcommand("synth", "generate a synthetic detection stream");
  synth->add_option("--seed", opt.seed, "generator seed");
  synth->add_option("--out", opt.out_path, "detections JSONL output");
  synth->add_option("--truth", opt.truth_path, "ground-truth JSONL output");
  synth->callback([&] { cmd_synth(opt, out); });

  auto* ingest = app.add_subcommand("ingest", "build a knowledge graph from detections");
  ingest->add_option("--in", opt.in_path, "detections JSONL")->required();
  add_kg(ingest);
  ingest->add_option("--background", opt.background, "background N-Triples files");
  ingest->callback([&] { cmd_ingest(opt, out); });

  auto* lexicalize = app.add_subcommand("lexicalize", "describe scenes in English");
  add_kg(lexicalize);
  lexicalize->add_option("--scene", opt.scene_iri, "limit to one scene IRI");
  lexicalize->add_option("--out", opt.out_path, "descriptions JSONL output");
  lexicalize->callback([&] { cmd_lexicalize(opt, out); });

  auto* features = app.add_subcommand("features", "extract scene feature vectors");
  add_kg(features);
  features->add_option("--scene", opt.scene_iri, "limit to one scene IRI");
  features->add_option("--out", opt.out_path, "features JSONL output");
  features->callback([&] { cmd_features(opt, out); });

  auto* congestion = app.add_subcommand("congestion", "rank scenes by median deviation");
  add_kg(congestion);
  congestion->add_option("--rules", opt.rules_path, "rules JSON file");
  congestion->add_option("--out", opt.out_path, "report JSON output");
  congestion->callback([&] { cmd_congestion(opt, out); });

  auto* similar = app.add_subcommand("similar", "find scenes similar to a probe scene");
  add_kg(similar);
  similar->add_option("--scene", opt.scene_iri, "probe scene IRI")->required();
  similar->add_option("--backend", opt.backend, "structural|lexical|semantic");
  similar->add_option("--k", opt.k, "result count");
  auto* similar_m = similar->add_option("--m", opt.m, "hashed-vector width");
  auto* similar_seed = similar->add_option("--hash-seed", opt.hash_seed, "hashing seed");
  similar->add_option("--embedder", opt.embedder_kind, "builtin|remote");
  similar->add_option("--endpoint", opt.endpoint, "remote embedder URL");
  auto* similar_dim = similar->add_option("--dim", opt.dim, "builtin embedding dimension");
  similar->callback([&, similar_m, similar_seed, similar_dim] {
    opt.m_opt = similar_m;
    opt.hash_seed_opt = similar_seed;
    opt.dim_opt = similar_dim;
    cmd_similar(opt, out);
  });

  auto* query = app.add_subcommand("query", "natural-language scene retrieval");
  add_kg(query);
  query->add_option("--text", opt.text, "query text")->required();
  query->add_option("--k", opt.k, "result count");
  query->add_option("--embedder", opt.embedder_kind, "builtin|remote");
  query->add_option("--endpoint", opt.endpoint, "remote embedder URL");
  auto* query_dim = query->add_option("--dim", opt.dim, "builtin embedding dimension");
  query->callback([&, query_dim] {
    opt.dim_opt = query_dim;
    cmd_query(opt, out);
  });

  auto* match = app.add_subcommand("match", "run a basic graph pattern");
  add_kg(match);
  match->add_option("--pattern", opt.patterns, "pattern \"?s <p> ?o\"")->required();
  match->callback([&] { cmd_match(opt, out); });

  auto* stats = app.add_subcommand("stats", "triple and scene counts");
  add_kg(stats);
  stats->callback([&] { cmd_stats(opt, out); });

  auto* do_export = app.add_subcommand("export", "canonical N-Triples serialization");
  add_kg(do_export);
  do_export->add_option("--out", opt.out_path, "output file (stdout when absent)");
  do_export->callback([&] { cmd_export(opt, out); });

  auto* do_import = app.add_subcommand("import", "merge N-Triples files into a snapshot");
  add_kg(do_import);
  do_import->add_option("--in", opt.in_paths, "N-Triples files")->required();
  do_import->callback([&] { cmd_import(opt, out); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const RemoteEmbedderError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tmkg::cli
