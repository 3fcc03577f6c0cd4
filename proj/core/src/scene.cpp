#include "tmkg/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tmkg/ontology.hpp"

namespace tmkg {
namespace {

constexpr char kHex[] = "0123456789ABCDEF";

bool unreserved(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c == '~';
}

// Mean speed over the trajectory: path length / elapsed time.
std::optional<double> trajectory_speed(const std::vector<TrajectorySample>& traj) {
  if (traj.size() < 2) {
    return std::nullopt;
  }
  const double dt_s = static_cast<double>(traj.back().t_ms - traj.front().t_ms) / 1000.0;
  if (dt_s <= 0.0) {
    return std::nullopt;
  }
  double length = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    length += std::hypot(traj[i].x - traj[i - 1].x, traj[i].y - traj[i - 1].y);
  }
  return length / dt_s;
}

}  // namespace

std::string encode_iri_component(std::string_view id) {
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    if (unreserved(c)) {
      out.push_back(c);
    } else {
      const auto b = static_cast<unsigned char>(c);
      out.push_back('%');
      out.push_back(kHex[b >> 4]);
      out.push_back(kHex[b & 0xf]);
    }
  }
  return out;
}

Iri mint_scene_iri(std::string_view camera_id, std::string_view frame_id) {
  return std::string(ns::tmi) + "scene/" + encode_iri_component(camera_id) + "/" +
         encode_iri_component(frame_id);
}

Iri mint_camera_iri(std::string_view camera_id) {
  return std::string(ns::tmi) + "camera/" + encode_iri_component(camera_id);
}

Iri mint_object_iri(std::string_view camera_id, std::string_view frame_id,
                    std::string_view track_id) {
  return std::string(ns::tmi) + "obj/" + encode_iri_component(camera_id) + "/" +
         encode_iri_component(frame_id) + "/" + encode_iri_component(track_id);
}

Iri mint_lane_iri(std::string_view camera_id, int lane) {
  return std::string(ns::tmi) + "lane/" + encode_iri_component(camera_id) + "/" +
         std::to_string(lane);
}

std::set<Triple> instantiate_scene(const DetectionRecord& record) {
  std::set<Triple> out;
  const Iri scene = mint_scene_iri(record.camera_id, record.frame_id);
  out.insert({scene, rdf::type, Term::iri(tmo::Scene)});
  out.insert({scene, tmo::atTime, Term::integer_literal(record.timestamp_ms)});
  out.insert({scene, tmo::capturedBy, Term::iri(mint_camera_iri(record.camera_id))});
  for (const auto& obj : record.objects) {
    const Iri o = mint_object_iri(record.camera_id, record.frame_id, obj.track_id);
    out.insert({scene, tmo::hasObject, Term::iri(o)});
    out.insert({o, rdf::type, Term::iri(class_iri_for_label(obj.class_label))});
    out.insert({o, tmo::trackId, Term::string_literal(obj.track_id)});
    std::optional<double> speed = obj.avg_speed_mps;
    if (!speed && obj.trajectory) {
      speed = trajectory_speed(*obj.trajectory);
    }
    if (speed) {
      out.insert({o, tmo::averageSpeed, Term::decimal_literal(*speed)});
    }
    if (obj.lane) {
      const Iri lane = mint_lane_iri(record.camera_id, *obj.lane);
      out.insert({o, tmo::inLane, Term::iri(lane)});
      out.insert({lane, rdf::type, Term::iri(tmo::Lane)});
      out.insert({lane, tmo::laneNumber, Term::integer_literal(*obj.lane)});
    }
  }
  return out;
}

std::vector<Iri> list_scenes(const Graph& graph) {
  std::vector<Iri> out;
  for (const Triple& t : graph.find(std::nullopt, rdf::type, Term::iri(tmo::Scene))) {
    out.push_back(t.s);
  }
  return out;
}

std::set<Triple> scene_subgraph(const Graph& graph, const Iri& scene_iri) {
  if (!graph.contains({scene_iri, rdf::type, Term::iri(tmo::Scene)})) {
    throw std::invalid_argument("not a scene in this graph: " + scene_iri);
  }
  std::set<Iri> subjects{scene_iri};
  for (const Triple& t : graph.find(scene_iri, tmo::hasObject, std::nullopt)) {
    if (!t.o.is_iri()) {
      continue;
    }
    subjects.insert(t.o.value);
    for (const Triple& l : graph.find(t.o.value, tmo::inLane, std::nullopt)) {
      if (l.o.is_iri()) {
        subjects.insert(l.o.value);
      }
    }
  }
  std::set<Triple> out;
  for (const Iri& subj : subjects) {
    // most specific types only: drop C when some other asserted type is a
    // direct subclass of C
    std::set<Iri> types;
    for (const Triple& t : graph.find(subj, rdf::type, std::nullopt)) {
      if (t.o.is_iri()) {
        types.insert(t.o.value);
      }
    }
    for (const Triple& t : graph.find(subj, std::nullopt, std::nullopt)) {
      if (t.p == rdf::type && t.o.is_iri()) {
        bool shadowed = false;
        for (const Iri& other : types) {
          if (other != t.o.value &&
              graph.contains({other, rdfs::subClassOf, Term::iri(t.o.value)})) {
            shadowed = true;
            break;
          }
        }
        if (shadowed) {
          continue;
        }
      }
      out.insert(t);
    }
  }
  return out;
}

SceneView parse_scene(const std::set<Triple>& scene) {
  // index the subgraph for direct lookups
  std::map<Iri, std::map<Iri, std::vector<Term>>> by_subject;
  for (const Triple& t : scene) {
    by_subject[t.s][t.p].push_back(t.o);
  }

  SceneView view;
  for (const auto& [s, preds] : by_subject) {
    if (auto it = preds.find(rdf::type); it != preds.end()) {
      for (const Term& o : it->second) {
        if (o.is_iri() && o.value == tmo::Scene) {
          if (!view.scene_iri.empty()) {
            throw std::invalid_argument("subgraph contains more than one scene");
          }
          view.scene_iri = s;
        }
      }
    }
  }
  if (view.scene_iri.empty()) {
    throw std::invalid_argument("subgraph contains no scene");
  }

  const auto& scene_preds = by_subject[view.scene_iri];
  if (auto it = scene_preds.find(tmo::atTime); it != scene_preds.end()) {
    for (const Term& o : it->second) {
      if (o.is_literal()) {
        view.timestamp_ms = std::stoll(o.value);
      }
    }
  }
  if (auto it = scene_preds.find(tmo::capturedBy); it != scene_preds.end()) {
    for (const Term& o : it->second) {
      if (o.is_iri()) {
        view.camera = o.value;
      }
    }
  }

  if (auto it = scene_preds.find(tmo::hasObject); it != scene_preds.end()) {
    for (const Term& o : it->second) {
      if (!o.is_iri()) {
        continue;
      }
      SceneObject obj;
      obj.iri = o.value;
      const auto& preds = by_subject[obj.iri];
      std::set<std::string> labels;
      if (auto ty = preds.find(rdf::type); ty != preds.end()) {
        for (const Term& cls : ty->second) {
          if (!cls.is_iri()) {
            continue;
          }
          try {
            labels.insert(class_label_for_iri(cls.value));
          } catch (const std::invalid_argument&) {
            // type outside the detection vocabulary; ignore
          }
        }
      }
      if (labels.size() > 1) {
        labels.erase("vehicle");  // keep the specific class
      }
      obj.class_label = labels.empty() ? "unknown" : *labels.begin();
      if (auto tr = preds.find(tmo::trackId); tr != preds.end() && !tr->second.empty()) {
        obj.track_id = tr->second.front().value;
      }
      if (auto sp = preds.find(tmo::averageSpeed); sp != preds.end() && !sp->second.empty()) {
        obj.avg_speed_mps = std::stod(sp->second.front().value);
      }
      if (auto ln = preds.find(tmo::inLane); ln != preds.end() && !ln->second.empty()) {
        const Term& lane_term = ln->second.front();
        if (lane_term.is_iri()) {
          const auto& lane_preds = by_subject[lane_term.value];
          if (auto num = lane_preds.find(tmo::laneNumber);
              num != lane_preds.end() && !num->second.empty()) {
            obj.lane = static_cast<int>(std::stol(num->second.front().value));
            view.lane_iris[*obj.lane] = lane_term.value;
          }
        }
      }
      view.objects.push_back(std::move(obj));
    }
  }

  std::sort(view.objects.begin(), view.objects.end(),
            [](const SceneObject& a, const SceneObject& b) {
              if (a.class_label != b.class_label) {
                return a.class_label < b.class_label;
              }
              return a.track_id < b.track_id;
            });
  std::map<std::string, int> class_rank;
  for (std::size_t i = 0; i < view.objects.size(); ++i) {
    view.objects[i].ordinal = ++class_rank[view.objects[i].class_label];
    if (view.objects[i].lane) {
      view.lanes[*view.objects[i].lane].push_back(i);
    }
  }
  return view;
}

}  // namespace tmkg
