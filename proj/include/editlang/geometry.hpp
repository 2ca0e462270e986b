#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "editlang/errors.hpp"

namespace editlang {

// Right-handed, z-up, meters, radians. Rotations are yaw-only (about z).

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Vec3& o) const = default;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  double norm_xy() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

// Normalize an angle into [0, 2*pi).
double normalize_yaw(double yaw);

struct Pose {
  Vec3 position;
  double yaw = 0;  // [0, 2*pi)
  bool operator==(const Pose& o) const = default;
};

struct Vec2 {
  double x = 0, y = 0;
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 rotate2(const Vec2& v, double yaw) {
  const double c = std::cos(yaw), s = std::sin(yaw);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Yaw-only oriented box: an axis-aligned box in its local frame, rotated
// about z and translated. half_extents strictly positive.
struct OrientedBox {
  Vec3 center;
  Vec3 half_extents;
  double yaw = 0;

  double top_z() const { return center.z + half_extents.z; }
  double base_z() const { return center.z - half_extents.z; }
};

struct Tolerances {
  double collision_eps = 0.01;             // penetration above this counts as a collision
  double support_ratio = 0.60;             // fraction of base rays that must hit the surface
  double floor_contact = 0.10;             // max base-to-floor gap counted as grounded
  double oob_expand = 0.10;                // room AABB expansion for the out-of-bounds test
  double near_default = 0.75;              // default radius for near() goals
  double facing_cone = std::numbers::pi / 12.0;  // 15 degrees
};

// Footprint corners (xy, counterclockwise) and full 3D corners.
std::array<Vec2, 4> footprint_corners(const OrientedBox& b);
std::array<Vec3, 8> box_corners(const OrientedBox& b);

bool point_in_footprint(const Vec2& p, const OrientedBox& b);
bool point_in_box(const Vec3& p, const OrientedBox& b);

// Minimum translation depth between two yaw-only boxes: 0 when separated,
// otherwise the smallest face-normal overlap (2D SAT on footprints plus the
// z interval). Symmetric in its arguments.
double obb_penetration(const OrientedBox& a, const OrientedBox& b);

// Signed clearance: negative penetration when overlapping, else the exact
// euclidean gap between the two extruded footprints.
double obb_clearance(const OrientedBox& a, const OrientedBox& b);

bool colliding(const OrientedBox& a, const OrientedBox& b, const Tolerances& tol);

// Fraction of a regular grid of base-face sample points (pitch <= 2cm, at
// least 10x10) whose downward ray meets `surface`'s top face within a
// vertical gap of tol.collision_eps.
double support_ratio(const OrientedBox& obj, const OrientedBox& surface, const Tolerances& tol);

// True iff the actor's world-frame front axis (xy projection) points at
// target_center within `cone`. Throws DegenerateDirection when the target is
// within 1mm of the actor in the xy plane (or the front axis has no xy part).
bool facing(const Pose& actor_pose, const Vec3& actor_front, const Vec3& target_center,
            double cone);

enum class Halfspace { Left, Right, Front, Behind };

// Classify obj against ref in the viewer's camera frame. The view looks
// along its local +y; its +x is the viewer's right. "Front" means nearer the
// viewer than ref. A 1cm dead-band counts as neither side.
bool relative_halfspace(const Vec3& obj, const Vec3& ref, const Pose& view, Halfspace relation);

// Minimum xy-plane distance between the two box footprints; 0 when they
// overlap or touch.
double distance_xy(const OrientedBox& a, const OrientedBox& b);

// Does the open segment p0..p1 pass through the box? Used for visibility.
bool segment_intersects_box(const Vec3& p0, const Vec3& p1, const OrientedBox& b);

}  // namespace editlang
