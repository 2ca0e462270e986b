#include "editlang/scene.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace editlang {

using ordered_json = nlohmann::ordered_json;

namespace {

Vec3 vec3_from(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number()) {
    throw SchemaError(where, where + ": expected a [x, y, z] number triple");
  }
  Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  if (!v.finite()) throw SchemaError(where, where + ": non-finite component");
  return v;
}

ordered_json vec3_to(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

void reject_unknown_keys(const ordered_json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw SchemaError(where, where + ": unknown field '" + it.key() + "'");
    }
  }
}

template <typename T>
T get_or(const ordered_json& j, const char* key, const T& fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

Pose pose_from(const ordered_json& j, const std::string& where) {
  reject_unknown_keys(j, {"position", "yaw"}, where);
  if (!j.contains("position")) throw SchemaError(where, where + ": missing position");
  Pose p;
  p.position = vec3_from(j.at("position"), where + ".position");
  p.yaw = normalize_yaw(get_or<double>(j, "yaw", 0.0));
  if (!std::isfinite(p.yaw)) throw SchemaError(where, where + ": non-finite yaw");
  return p;
}

void check_reference_chain(const Scene& scene, const SceneObject& start,
                           std::optional<std::string> SceneObject::* link, const char* what) {
  std::set<std::string> seen{start.id};
  const SceneObject* cur = &start;
  while (true) {
    const auto& ref = cur->*link;
    if (!ref) return;
    if (*ref == kFloorId) return;
    const SceneObject* next = scene.find(*ref);
    if (!next) {
      throw SchemaError(cur->id,
                        std::string(what) + " of '" + cur->id + "' names unknown object '" +
                            *ref + "'");
    }
    if (!seen.insert(next->id).second) {
      throw SchemaError(next->id, std::string(what) + " chain through '" + next->id +
                                      "' forms a cycle");
    }
    cur = next;
  }
}

void validate(Scene& scene) {
  std::set<std::string> ids;
  for (const auto& o : scene.objects) {
    if (!ids.insert(o.id).second) throw SchemaError(o.id, "duplicate object id '" + o.id + "'");
    if (o.id == kFloorId) throw SchemaError(o.id, "'floor' is a reserved id");
    if (!(o.half_extents.x > 0 && o.half_extents.y > 0 && o.half_extents.z > 0)) {
      throw SchemaError(o.id, "object '" + o.id + "' has non-positive half_extents");
    }
    if (!o.pose.position.finite() || !o.half_extents.finite() || !o.front_axis.finite()) {
      throw SchemaError(o.id, "object '" + o.id + "' has non-finite geometry");
    }
    if (o.front_axis.norm() < 1e-9) {
      throw SchemaError(o.id, "object '" + o.id + "' has a zero front_axis");
    }
  }
  if (!(scene.bounds.min.x < scene.bounds.max.x && scene.bounds.min.y < scene.bounds.max.y &&
        scene.bounds.min.z < scene.bounds.max.z)) {
    throw SchemaError("bounds", "room bounds must satisfy min < max componentwise");
  }
  for (const auto& e : scene.catalog) {
    if (!(e.default_half_extents.x > 0 && e.default_half_extents.y > 0 &&
          e.default_half_extents.z > 0)) {
      throw SchemaError(e.category, "catalog entry '" + e.category +
                                        "' has non-positive default_half_extents");
    }
  }
  for (const auto& o : scene.objects) {
    check_reference_chain(scene, o, &SceneObject::support_parent, "support_parent");
    if (o.group_parent && *o.group_parent == kFloorId) {
      throw SchemaError(o.id, "group_parent of '" + o.id + "' cannot be 'floor'");
    }
    check_reference_chain(scene, o, &SceneObject::group_parent, "group_parent");
  }
  // Soft issues: worth surfacing but not a reason to refuse the document.
  for (const auto& o : scene.objects) {
    if (!o.support_parent && !o.wall_mounted && scene.bounds.contains(o.pose.position)) {
      scene.load_violations.push_back("object '" + o.id +
                                      "' has no support link but sits inside the room bounds");
    }
  }
}

}  // namespace

const SceneObject* Scene::find(const std::string& id) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), id,
                             [](const SceneObject& o, const std::string& k) { return o.id < k; });
  return (it != objects.end() && it->id == id) ? &*it : nullptr;
}

SceneObject* Scene::find(const std::string& id) {
  return const_cast<SceneObject*>(static_cast<const Scene*>(this)->find(id));
}

const CatalogEntry* Scene::find_catalog(const std::string& category) const {
  for (const auto& e : catalog) {
    if (e.category == category) return &e;
  }
  return nullptr;
}

std::vector<std::string> Scene::group_children(const std::string& id) const {
  std::vector<std::string> out;
  std::vector<std::string> frontier{id};
  while (!frontier.empty()) {
    std::string cur = frontier.back();
    frontier.pop_back();
    for (const auto& o : objects) {
      if (o.group_parent && *o.group_parent == cur) {
        out.push_back(o.id);
        frontier.push_back(o.id);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OrientedBox world_obb(const SceneObject& o) {
  return OrientedBox{o.pose.position, o.half_extents, o.pose.yaw};
}

bool scene_equal(const Scene& a, const Scene& b) {
  return a.objects == b.objects && a.bounds == b.bounds && a.catalog == b.catalog &&
         a.viewpoints == b.viewpoints && a.removed_ids == b.removed_ids;
}

Scene scene_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scene document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scene document must be a JSON object");
  reject_unknown_keys(j, {"bounds", "objects", "catalog", "viewpoints", "removed"}, "scene");
  if (!j.contains("bounds") || !j.contains("objects")) {
    throw SchemaError("scene", "scene: missing required field 'bounds' or 'objects'");
  }

  Scene scene;
  try {
    const auto& jb = j.at("bounds");
    reject_unknown_keys(jb, {"min", "max", "floor_height"}, "bounds");
    scene.bounds.min = vec3_from(jb.at("min"), "bounds.min");
    scene.bounds.max = vec3_from(jb.at("max"), "bounds.max");
    scene.bounds.floor_height = get_or<double>(jb, "floor_height", scene.bounds.min.z);

    for (const auto& jo : j.at("objects")) {
      SceneObject o;
      if (!jo.contains("id") || !jo.at("id").is_string()) {
        throw SchemaError("objects", "every object needs a string 'id'");
      }
      o.id = jo.at("id").get<std::string>();
      reject_unknown_keys(jo,
                          {"id", "category", "position", "yaw", "half_extents", "front_axis",
                           "style", "wall_mounted", "locked", "support_parent", "group_parent"},
                          "object '" + o.id + "'");
      o.category = get_or<std::string>(jo, "category", "");
      o.pose.position = vec3_from(jo.at("position"), "object '" + o.id + "'.position");
      o.pose.yaw = normalize_yaw(get_or<double>(jo, "yaw", 0.0));
      o.half_extents = vec3_from(jo.at("half_extents"), "object '" + o.id + "'.half_extents");
      if (jo.contains("front_axis")) {
        o.front_axis = vec3_from(jo.at("front_axis"), "object '" + o.id + "'.front_axis");
      }
      o.style = get_or<std::string>(jo, "style", "");
      o.wall_mounted = get_or<bool>(jo, "wall_mounted", false);
      o.locked = get_or<bool>(jo, "locked", false);
      if (jo.contains("support_parent") && !jo.at("support_parent").is_null()) {
        o.support_parent = jo.at("support_parent").get<std::string>();
      }
      if (jo.contains("group_parent") && !jo.at("group_parent").is_null()) {
        o.group_parent = jo.at("group_parent").get<std::string>();
      }
      scene.objects.push_back(std::move(o));
    }

    if (j.contains("catalog")) {
      for (const auto& je : j.at("catalog")) {
        reject_unknown_keys(je, {"category", "half_extents", "style"}, "catalog");
        CatalogEntry e;
        e.category = je.at("category").get<std::string>();
        e.default_half_extents = vec3_from(je.at("half_extents"), "catalog '" + e.category + "'");
        e.style = get_or<std::string>(je, "style", "");
        scene.catalog.push_back(std::move(e));
      }
    }
    if (j.contains("viewpoints")) {
      for (auto it = j.at("viewpoints").begin(); it != j.at("viewpoints").end(); ++it) {
        scene.viewpoints[it.key()] = pose_from(it.value(), "viewpoint '" + it.key() + "'");
      }
    }
    if (j.contains("removed")) {
      for (const auto& r : j.at("removed")) scene.removed_ids.insert(r.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("scene", std::string("scene: malformed field: ") + e.what());
  }

  std::sort(scene.objects.begin(), scene.objects.end(),
            [](const SceneObject& a, const SceneObject& b) { return a.id < b.id; });
  validate(scene);
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scene_from_json_text(ss.str());
}

std::string scene_to_json_text(const Scene& scene) {
  ordered_json j;
  j["bounds"] = {{"min", vec3_to(scene.bounds.min)},
                 {"max", vec3_to(scene.bounds.max)},
                 {"floor_height", scene.bounds.floor_height}};
  j["objects"] = ordered_json::array();
  for (const auto& o : scene.objects) {  // already sorted by id
    ordered_json jo;
    jo["id"] = o.id;
    jo["category"] = o.category;
    jo["position"] = vec3_to(o.pose.position);
    jo["yaw"] = o.pose.yaw;
    jo["half_extents"] = vec3_to(o.half_extents);
    jo["front_axis"] = vec3_to(o.front_axis);
    jo["style"] = o.style;
    jo["wall_mounted"] = o.wall_mounted;
    jo["locked"] = o.locked;
    if (o.support_parent) jo["support_parent"] = *o.support_parent;
    if (o.group_parent) jo["group_parent"] = *o.group_parent;
    j["objects"].push_back(std::move(jo));
  }
  if (!scene.catalog.empty()) {
    j["catalog"] = ordered_json::array();
    for (const auto& e : scene.catalog) {
      j["catalog"].push_back({{"category", e.category},
                              {"half_extents", vec3_to(e.default_half_extents)},
                              {"style", e.style}});
    }
  }
  if (!scene.viewpoints.empty()) {
    j["viewpoints"] = ordered_json::object();
    for (const auto& [name, pose] : scene.viewpoints) {
      j["viewpoints"][name] = {{"position", vec3_to(pose.position)}, {"yaw", pose.yaw}};
    }
  }
  if (!scene.removed_ids.empty()) {
    j["removed"] = ordered_json::array();
    for (const auto& r : scene.removed_ids) j["removed"].push_back(r);
  }
  return j.dump(2) + "\n";
}

void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open scene file for writing: " + path);
  out << scene_to_json_text(scene);
  if (!out) throw IoError("failed to write scene file: " + path);
}

std::string render_ascii(const Scene& scene, int width) {
  const double span_x = scene.bounds.max.x - scene.bounds.min.x;
  const double span_y = scene.bounds.max.y - scene.bounds.min.y;
  const int height = std::max(4, static_cast<int>(width * span_y / std::max(span_x, 1e-6) / 2));
  std::vector<std::string> grid(height, std::string(width, '.'));

  char label = 'a';
  std::string legend;
  for (const auto& o : scene.objects) {
    if (scene.is_staged(o)) continue;
    const OrientedBox box = world_obb(o);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const double x = scene.bounds.min.x + span_x * (c + 0.5) / width;
        const double y = scene.bounds.max.y - span_y * (r + 0.5) / height;
        if (point_in_footprint({x, y}, box)) grid[r][c] = label;
      }
    }
    legend += std::string(1, label) + " = " + o.id + "\n";
    label = (label == 'z') ? 'a' : static_cast<char>(label + 1);
  }

  std::string out = "+" + std::string(width, '-') + "+\n";
  for (const auto& row : grid) out += "|" + row + "|\n";
  out += "+" + std::string(width, '-') + "+\n" + legend;
  return out;
}

}  // namespace editlang
