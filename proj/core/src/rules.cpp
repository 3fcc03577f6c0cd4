#include "tmkg/rules.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "tmkg/errors.hpp"

namespace tmkg {
namespace {

using json = nlohmann::json;

Comparator comparator_from_op(const std::string& op) {
  if (op == "<") return Comparator::kLess;
  if (op == "<=") return Comparator::kLessEqual;
  if (op == "==") return Comparator::kEqual;
  if (op == ">=") return Comparator::kGreaterEqual;
  if (op == ">") return Comparator::kGreater;
  throw ParseError("unknown rule comparator: " + op);
}

bool holds(Comparator cmp, double lhs, double rhs) {
  switch (cmp) {
    case Comparator::kLess: return lhs < rhs;
    case Comparator::kLessEqual: return lhs <= rhs;
    case Comparator::kEqual: return lhs == rhs;
    case Comparator::kGreaterEqual: return lhs >= rhs;
    case Comparator::kGreater: return lhs > rhs;
  }
  return false;
}

}  // namespace

std::vector<Rule> parse_rules(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  if (!j.is_array()) {
    throw ParseError("rules file must be a JSON array");
  }
  std::vector<Rule> rules;
  for (const auto& entry : j) {
    Rule rule;
    try {
      rule.name = entry.at("name").get<std::string>();
      rule.label = entry.at("label").get<std::string>();
      for (const auto& cond : entry.at("all")) {
        rule.conditions.push_back({cond.at("feature").get<std::string>(),
                                   comparator_from_op(cond.at("op").get<std::string>()),
                                   cond.at("value").get<double>()});
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("rules file: ") + e.what());
    }
    if (rule.conditions.empty()) {
      throw ParseError("rule \"" + rule.name + "\" has an empty \"all\" list");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<std::string> apply_rules(const std::vector<Rule>& rules,
                                     const SceneFeatures& features) {
  std::vector<std::string> fired;
  for (const auto& rule : rules) {
    const bool all = std::all_of(
        rule.conditions.begin(), rule.conditions.end(), [&](const RuleCondition& c) {
          return holds(c.comparator, features.at(c.feature_key), c.value);
        });
    if (all) {
      fired.push_back(rule.label);
    }
  }
  return fired;
}

SceneFeatures median_features(const std::vector<SceneFeatures>& batch) {
  if (batch.empty()) {
    throw std::invalid_argument("median over an empty batch");
  }
  std::set<std::string> keys;
  for (const auto& f : batch) {
    for (const auto& [key, _] : f.entries) {
      keys.insert(key);
    }
  }
  SceneFeatures median;
  const std::size_t n = batch.size();
  std::vector<double> values(n);
  for (const auto& key : keys) {
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = batch[i].at(key);
    }
    std::sort(values.begin(), values.end());
    const double m = (n % 2 == 1) ? values[n / 2]
                                  : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    median.set(key, m);
  }
  return median;
}

double deviation_score(const SceneFeatures& f, const SceneFeatures& median) {
  double sum = 0.0;
  for (const auto& [key, value] : f.entries) {
    sum += std::abs(value - median.at(key));
  }
  for (const auto& [key, value] : median.entries) {
    if (!f.entries.contains(key)) {
      sum += std::abs(value);
    }
  }
  return sum;
}

std::vector<CongestionEntry> rank_congestion(
    const std::vector<std::pair<Iri, SceneFeatures>>& batch,
    const std::vector<Rule>& rules) {
  if (batch.empty()) {
    throw std::invalid_argument("congestion ranking over an empty batch");
  }
  std::vector<SceneFeatures> features;
  features.reserve(batch.size());
  for (const auto& [_, f] : batch) {
    features.push_back(f);
  }
  const SceneFeatures median = median_features(features);

  const std::size_t n = batch.size();
  std::vector<CongestionEntry> entries;
  entries.reserve(n);
  for (const auto& [iri, f] : batch) {
    entries.push_back({iri, deviation_score(f, median), 0.0, apply_rules(rules, f)});
  }
  for (auto& entry : entries) {
    if (n == 1) {
      entry.percentile = 1.0;
      continue;
    }
    std::size_t smaller = 0;
    for (const auto& other : entries) {
      if (other.deviation < entry.deviation) {
        ++smaller;
      }
    }
    entry.percentile = static_cast<double>(smaller) / static_cast<double>(n - 1);
  }
  std::sort(entries.begin(), entries.end(),
            [](const CongestionEntry& a, const CongestionEntry& b) {
              if (a.deviation != b.deviation) {
                return a.deviation > b.deviation;
              }
              return a.scene_iri < b.scene_iri;
            });
  return entries;
}

}  // namespace tmkg
