#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tmkg/features.hpp"
#include "tmkg/term.hpp"

namespace tmkg {

enum class Comparator { kLess, kLessEqual, kEqual, kGreaterEqual, kGreater };

struct RuleCondition {
  std::string feature_key;
  Comparator comparator = Comparator::kGreaterEqual;
  double value = 0.0;
};

// Conjunction of threshold conditions; fires its label when every condition
// holds. Missing feature keys evaluate as 0.
struct Rule {
  std::string name;
  std::vector<RuleCondition> conditions;
  std::string label;
};

// Rules JSON:
//   [{"name": str, "all": [{"feature": str, "op": "<"|"<="|"=="|">="|">",
//     "value": num}], "label": str}]
// Throws ParseError on malformed comparators or an empty "all" list.
std::vector<Rule> parse_rules(std::string_view json_text);

std::vector<std::string> apply_rules(const std::vector<Rule>& rules, const SceneFeatures& features);

// Componentwise median over the union of keys, absent entries counted as 0;
// even batch sizes average the two middle values. Throws
// std::invalid_argument on an empty batch.
SceneFeatures median_features(const std::vector<SceneFeatures>& batch);

// L1 distance over the union of keys.
double deviation_score(const SceneFeatures& f, const SceneFeatures& median);

struct CongestionEntry {
  Iri scene_iri;
  double deviation = 0.0;
  double percentile = 0.0;  // fraction of frames with strictly smaller deviation
  std::vector<std::string> fired_labels;
};

// Deviation of every frame from the batch median, sorted by deviation
// descending (ties by scene IRI). percentile is rank/(n-1), or 1.0 for a
// single-frame batch. Labels come from the optional rule set.
std::vector<CongestionEntry> rank_congestion(
    const std::vector<std::pair<Iri, SceneFeatures>>& batch,
    const std::vector<Rule>& rules = {});

}  // namespace tmkg
