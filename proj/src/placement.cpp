#include "editlang/placement.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace editlang {

namespace {

struct Cell {
  Vec3 position;
  std::string surface;  // "" for floor cells
  int gi = 0, gj = 0;
  double dist2 = 0;
};

bool box_inside_room(const OrientedBox& box, const RoomBounds& bounds) {
  if (box.base_z() < bounds.min.z - 1e-9 || box.top_z() > bounds.max.z + 1e-9) return false;
  for (const Vec2& c : footprint_corners(box)) {
    if (c.x < bounds.min.x - 1e-9 || c.x > bounds.max.x + 1e-9 || c.y < bounds.min.y - 1e-9 ||
        c.y > bounds.max.y + 1e-9) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Vec3> find_placement(const Scene& scene, const Tolerances& tol,
                                   const PlacementSpec& spec) {
  std::vector<const SceneObject*> obstacles;
  for (const auto& o : scene.objects) {
    if (spec.exclude_ids.count(o.id) || scene.is_staged(o)) continue;
    obstacles.push_back(&o);
  }

  std::vector<Cell> cells;

  if (spec.include_floor && !spec.only_surface) {
    const double z = scene.bounds.floor_height + spec.half_extents.z;
    const double span_x = scene.bounds.max.x - scene.bounds.min.x;
    const double span_y = scene.bounds.max.y - scene.bounds.min.y;
    const int nx = std::max(1, static_cast<int>(std::floor(span_x / kPlacementPitch)));
    const int ny = std::max(1, static_cast<int>(std::floor(span_y / kPlacementPitch)));
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        Cell c;
        c.position = {scene.bounds.min.x + span_x * (i + 0.5) / nx,
                      scene.bounds.min.y + span_y * (j + 0.5) / ny, z};
        c.gi = i;
        c.gj = j;
        cells.push_back(c);
      }
    }
  }

  if (spec.include_surfaces || spec.only_surface) {
    for (const auto& s : scene.objects) {
      if (scene.is_staged(s) || spec.exclude_ids.count(s.id)) continue;
      if (spec.only_surface && *spec.only_surface != s.id) continue;
      if (!spec.only_surface && spec.exclude_surfaces.count(s.id)) continue;
      if (!spec.only_surface && !spec.include_surfaces) continue;
      const OrientedBox top = world_obb(s);
      const double z = top.top_z() + spec.half_extents.z;
      const int nx = std::max(1, static_cast<int>(std::floor(2 * s.half_extents.x /
                                                             kPlacementPitch)));
      const int ny = std::max(1, static_cast<int>(std::floor(2 * s.half_extents.y /
                                                             kPlacementPitch)));
      for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
          const Vec2 local{-s.half_extents.x + 2 * s.half_extents.x * (i + 0.5) / nx,
                           -s.half_extents.y + 2 * s.half_extents.y * (j + 0.5) / ny};
          const Vec2 world = rotate2(local, s.pose.yaw) + Vec2{top.center.x, top.center.y};
          Cell c;
          c.position = {world.x, world.y, z};
          c.surface = s.id;
          c.gi = i;
          c.gj = j;
          cells.push_back(c);
        }
      }
    }
  }

  for (auto& c : cells) {
    const Vec3 d = c.position - spec.anchor;
    c.dist2 = d.dot(d);
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
    if (a.surface != b.surface) return a.surface < b.surface;
    if (a.gi != b.gi) return a.gi < b.gi;
    return a.gj < b.gj;
  });

  for (const Cell& c : cells) {
    const std::array<int, 3> key{static_cast<int>(std::lround(c.position.x * 100)),
                                 static_cast<int>(std::lround(c.position.y * 100)),
                                 static_cast<int>(std::lround(c.position.z * 100))};
    if (spec.avoid.count(key)) continue;

    const OrientedBox box{c.position, spec.half_extents, spec.yaw};
    if (!box_inside_room(box, scene.bounds)) continue;

    bool blocked = false;
    for (const SceneObject* o : obstacles) {
      if (colliding(box, world_obb(*o), tol)) {
        blocked = true;
        break;
      }
    }
    if (blocked) continue;

    if (!c.surface.empty()) {
      const SceneObject* s = scene.find(c.surface);
      if (support_ratio(box, world_obb(*s), tol) < tol.support_ratio) continue;
    }
    if (spec.filter && !spec.filter(c.position)) continue;
    return c.position;
  }
  return std::nullopt;
}

}  // namespace editlang
