#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "editlang/geometry.hpp"

namespace editlang {

inline constexpr const char* kFloorId = "floor";

struct SceneObject {
  std::string id;
  std::string category;
  Pose pose;                    // position is the world-frame OBB center
  Vec3 half_extents;            // strictly positive
  Vec3 front_axis{0, 1, 0};     // local frame, unit
  std::string style;
  bool wall_mounted = false;
  bool locked = false;
  std::optional<std::string> support_parent;  // object id or "floor"; absent = staged inventory
  std::optional<std::string> group_parent;

  bool operator==(const SceneObject& o) const = default;
};

struct RoomBounds {
  Vec3 min, max;  // min < max componentwise
  double floor_height = 0;
  bool operator==(const RoomBounds& o) const = default;

  bool contains_xy(double x, double y, double expand = 0) const {
    return x >= min.x - expand && x <= max.x + expand && y >= min.y - expand &&
           y <= max.y + expand;
  }
  bool contains(const Vec3& p, double expand = 0) const {
    return contains_xy(p.x, p.y, expand) && p.z >= min.z - expand && p.z <= max.z + expand;
  }
};

struct CatalogEntry {
  std::string category;
  Vec3 default_half_extents;
  std::string style;
  bool operator==(const CatalogEntry& o) const = default;
};

// Immutable snapshot of the world. All mutation goes through the executor,
// which produces a new snapshot; snapshots are safe to share across readers.
struct Scene {
  std::vector<SceneObject> objects;  // sorted by id, ids unique
  RoomBounds bounds;
  std::vector<CatalogEntry> catalog;
  std::map<std::string, Pose> viewpoints;
  std::set<std::string> removed_ids;  // ids deleted by remove_object; kept so removed() holds

  std::vector<std::string> load_violations;  // soft issues found at load; not serialized

  const SceneObject* find(const std::string& id) const;
  SceneObject* find(const std::string& id);
  const CatalogEntry* find_catalog(const std::string& category) const;

  // Inventory object: no support link and parked outside the room volume.
  bool is_staged(const SceneObject& o) const {
    return !o.support_parent && !bounds.contains(o.pose.position);
  }

  // Direct + transitive group children of `id` (not including `id`).
  std::vector<std::string> group_children(const std::string& id) const;
};

OrientedBox world_obb(const SceneObject& o);

// Structural equality, order-insensitive on object sets; ignores soft
// violation notes.
bool scene_equal(const Scene& a, const Scene& b);

// Validates every invariant; throws ParseError on malformed documents and
// SchemaError (naming the offending id/field) on invariant violations.
Scene load_scene(const std::string& path);
Scene scene_from_json_text(const std::string& text);

void save_scene(const Scene& scene, const std::string& path);
std::string scene_to_json_text(const Scene& scene);

// Top-down text plot of the room for debugging.
std::string render_ascii(const Scene& scene, int width = 60);

}  // namespace editlang
