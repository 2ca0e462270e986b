#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>

#include "editlang/scene.hpp"

namespace editlang {

// Deterministic placement search over a 10cm grid of floor and surface-top
// cells, nearest to `anchor` first. Ties break on (surface id, grid row,
// grid column) so results never depend on float noise alone.
struct PlacementSpec {
  Vec3 half_extents;                     // subject box
  double yaw = 0;
  std::set<std::string> exclude_ids;     // subject (and group members) to ignore as obstacles
  Vec3 anchor;                           // nearest-first reference point
  bool include_floor = true;
  bool include_surfaces = true;
  std::optional<std::string> only_surface;    // restrict to this surface's top
  std::set<std::string> exclude_surfaces;     // never place on these
  std::function<bool(const Vec3&)> filter;    // extra predicate on the candidate center
  std::set<std::array<int, 3>> avoid;         // previously proposed centers (cm), skipped
};

inline constexpr double kPlacementPitch = 0.10;

// Center position for the subject at the first feasible cell, or nullopt.
// Feasible: box fully inside the room, not colliding with any non-excluded
// placed object, and (for surface cells) support ratio >= tol.support_ratio.
std::optional<Vec3> find_placement(const Scene& scene, const Tolerances& tol,
                                   const PlacementSpec& spec);

}  // namespace editlang
