#include "tmkg/lexicalize.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "tmkg/ontology.hpp"
#include "tmkg/scene.hpp"

namespace tmkg {
namespace {

// "a", "a, and b", "a, b, and c": Oxford comma even for two parts.
std::string join_parts(const std::vector<std::string>& parts) {
  if (parts.size() == 1) {
    return parts.front();
  }
  std::string out;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += parts[i];
  }
  out += ", and ";
  out += parts.back();
  return out;
}

std::string lowercase(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return s;
}

std::string entity_label(const Iri& iri) { return lowercase(local_name(iri)); }

}  // namespace

std::string format_speed(double v) {
  // round half-up to 2 fraction digits
  const long long cents = std::llround(v * 100.0);
  std::string s = std::to_string(cents / 100) + ".";
  char frac[24];
  std::snprintf(frac, sizeof(frac), "%02lld", cents % 100);
  s += frac;
  if (s.back() == '0') {
    s.pop_back();  // trim one trailing zero, keeping one fraction digit
  }
  return s;
}

std::string ordinal_word(int n) {
  static const char* kWords[] = {"first", "second", "third",  "fourth", "fifth",
                                 "sixth", "seventh", "eighth", "ninth",  "tenth"};
  if (n >= 1 && n <= 10) {
    return kWords[n - 1];
  }
  return std::to_string(n) + "th";
}

std::string number_word(std::int64_t n) {
  static const char* kWords[] = {"zero", "one", "two",   "three", "four",  "five", "six",
                                 "seven", "eight", "nine", "ten",   "eleven", "twelve"};
  if (n >= 0 && n <= 12) {
    return kWords[n];
  }
  return std::to_string(n);
}

SceneDescription describe_scene(const std::set<Triple>& scene) {
  const SceneView view = parse_scene(scene);
  SceneDescription d;
  d.scene_iri = view.scene_iri;

  d.sentences.push_back("There are " + std::to_string(view.objects.size()) +
                        " object(s) in the scene.");

  if (!view.objects.empty()) {
    // objects are sorted by class, so counts come out alphabetically
    std::vector<std::pair<std::string, int>> class_counts;
    for (const auto& obj : view.objects) {
      if (class_counts.empty() || class_counts.back().first != obj.class_label) {
        class_counts.emplace_back(obj.class_label, 0);
      }
      ++class_counts.back().second;
    }
    std::vector<std::string> parts;
    for (const auto& [cls, n] : class_counts) {
      parts.push_back(n == 1 ? "1 is a " + cls : std::to_string(n) + " are " + cls);
    }
    d.sentences.push_back("From the object(s), " + join_parts(parts) + ".");

    for (const auto& obj : view.objects) {
      if (obj.avg_speed_mps) {
        d.sentences.push_back("The " + ordinal_word(obj.ordinal) + " " + obj.class_label +
                              " is moving with the average speed of " +
                              format_speed(*obj.avg_speed_mps) + " m/s.");
      }
    }

    for (const auto& [lane, indexes] : view.lanes) {
      std::vector<std::string> members;
      for (std::size_t i : indexes) {
        members.push_back(ordinal_word(view.objects[i].ordinal) + " " +
                          view.objects[i].class_label);
      }
      d.sentences.push_back("In lane " + std::to_string(lane) + " we see " +
                            join_parts(members) + ".");
    }
  }

  for (const auto& sentence : d.sentences) {
    if (!d.text.empty()) {
      d.text += ' ';
    }
    d.text += sentence;
  }
  return d;
}

std::vector<std::string> lexicalize_background(const Graph& graph) {
  std::set<std::string> sentences;

  for (const Triple& t : graph.find(std::nullopt, rdfs::subClassOf, std::nullopt)) {
    if (!t.o.is_iri()) {
      continue;
    }
    const std::string a = entity_label(t.s);
    const std::string c = entity_label(t.o.value);
    bool contrasted = false;
    for (const Triple& d : graph.find(t.s, owl::disjointWith, std::nullopt)) {
      if (d.o.is_iri() &&
          graph.contains({d.o.value, rdfs::subClassOf, Term::iri(t.o.value)})) {
        sentences.insert(a + " is a " + c + " different from a " +
                         entity_label(d.o.value) + ".");
        contrasted = true;
      }
    }
    if (!contrasted) {
      sentences.insert(a + " is a " + c + ".");
    }
  }

  for (const Triple& t : graph.find(std::nullopt, tmo::hasLaneCount, std::nullopt)) {
    if (t.o.is_literal()) {
      sentences.insert(entity_label(t.s) + " has " + number_word(std::stoll(t.o.value)) +
                       " lanes.");
    }
  }

  return {sentences.begin(), sentences.end()};
}

}  // namespace tmkg
