#include "editlang/geometry.hpp"

#include <algorithm>
#include <limits>

namespace editlang {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Projection radius of a yaw-only box footprint onto a 2D unit axis.
double footprint_radius(const OrientedBox& b, const Vec2& axis) {
  const Vec2 bx = rotate2({1, 0}, b.yaw);
  const Vec2 by = rotate2({0, 1}, b.yaw);
  return b.half_extents.x * std::abs(bx.dot(axis)) + b.half_extents.y * std::abs(by.dot(axis));
}

// Overlap of the two footprints along each of the four face normals.
// Returns the minimum overlap, or a non-positive value if any axis separates.
double footprint_sat_overlap(const OrientedBox& a, const OrientedBox& b) {
  const Vec2 d{b.center.x - a.center.x, b.center.y - a.center.y};
  const std::array<Vec2, 4> axes = {rotate2({1, 0}, a.yaw), rotate2({0, 1}, a.yaw),
                                    rotate2({1, 0}, b.yaw), rotate2({0, 1}, b.yaw)};
  double min_overlap = std::numeric_limits<double>::infinity();
  for (const Vec2& u : axes) {
    const double overlap = footprint_radius(a, u) + footprint_radius(b, u) - std::abs(d.dot(u));
    if (overlap <= 0) return overlap;
    min_overlap = std::min(min_overlap, overlap);
  }
  return min_overlap;
}

double segment_point_distance(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 <= 0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  auto cross = [](const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; };
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double segment_segment_distance(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min(std::min(segment_point_distance(a, b, c), segment_point_distance(a, b, d)),
                  std::min(segment_point_distance(c, d, a), segment_point_distance(c, d, b)));
}

}  // namespace

double normalize_yaw(double yaw) {
  double r = std::fmod(yaw, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0;  // fmod can land exactly on 2*pi
  return r;
}

std::array<Vec2, 4> footprint_corners(const OrientedBox& b) {
  const Vec2 c{b.center.x, b.center.y};
  const Vec2 ex = rotate2({b.half_extents.x, 0}, b.yaw);
  const Vec2 ey = rotate2({0, b.half_extents.y}, b.yaw);
  return {c + ex + ey, c - ex + ey, c - ex - ey, c + ex - ey};
}

std::array<Vec3, 8> box_corners(const OrientedBox& b) {
  const auto f = footprint_corners(b);
  std::array<Vec3, 8> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = {f[i].x, f[i].y, b.base_z()};
    out[i + 4] = {f[i].x, f[i].y, b.top_z()};
  }
  return out;
}

bool point_in_footprint(const Vec2& p, const OrientedBox& b) {
  const Vec2 local = rotate2(p - Vec2{b.center.x, b.center.y}, -b.yaw);
  return std::abs(local.x) <= b.half_extents.x && std::abs(local.y) <= b.half_extents.y;
}

bool point_in_box(const Vec3& p, const OrientedBox& b) {
  return std::abs(p.z - b.center.z) <= b.half_extents.z && point_in_footprint({p.x, p.y}, b);
}

double obb_penetration(const OrientedBox& a, const OrientedBox& b) {
  const double z_overlap = a.half_extents.z + b.half_extents.z - std::abs(a.center.z - b.center.z);
  if (z_overlap <= 0) return 0.0;
  const double xy_overlap = footprint_sat_overlap(a, b);
  if (xy_overlap <= 0) return 0.0;
  return std::min(xy_overlap, z_overlap);
}

double obb_clearance(const OrientedBox& a, const OrientedBox& b) {
  const double pen = obb_penetration(a, b);
  if (pen > 0) return -pen;
  const double dz = std::max(0.0, std::abs(a.center.z - b.center.z) -
                                      (a.half_extents.z + b.half_extents.z));
  const double dxy = distance_xy(a, b);
  return std::hypot(dxy, dz);
}

bool colliding(const OrientedBox& a, const OrientedBox& b, const Tolerances& tol) {
  return obb_penetration(a, b) > tol.collision_eps;
}

double support_ratio(const OrientedBox& obj, const OrientedBox& surface, const Tolerances& tol) {
  const double gap = obj.base_z() - surface.top_z();
  if (std::abs(gap) > tol.collision_eps) return 0.0;

  const double sx = 2.0 * obj.half_extents.x;
  const double sy = 2.0 * obj.half_extents.y;
  const int nx = std::max(10, static_cast<int>(std::ceil(sx / 0.02)));
  const int ny = std::max(10, static_cast<int>(std::ceil(sy / 0.02)));

  int hits = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const Vec2 local{-obj.half_extents.x + sx * (i + 0.5) / nx,
                       -obj.half_extents.y + sy * (j + 0.5) / ny};
      const Vec2 world = rotate2(local, obj.yaw) + Vec2{obj.center.x, obj.center.y};
      if (point_in_footprint(world, surface)) ++hits;
    }
  }
  return static_cast<double>(hits) / (static_cast<double>(nx) * ny);
}

bool facing(const Pose& actor_pose, const Vec3& actor_front, const Vec3& target_center,
            double cone) {
  const Vec2 to_target{target_center.x - actor_pose.position.x,
                       target_center.y - actor_pose.position.y};
  if (to_target.norm() < 1e-3) {
    throw DegenerateDirection("facing: target coincides with actor in the xy plane");
  }
  const Vec2 front_local{actor_front.x, actor_front.y};
  if (front_local.norm() < 1e-9) {
    throw DegenerateDirection("facing: front axis has no xy component");
  }
  const Vec2 front_world = rotate2(front_local, actor_pose.yaw);
  const double cosang =
      front_world.dot(to_target) / (front_world.norm() * to_target.norm());
  return std::acos(std::clamp(cosang, -1.0, 1.0)) <= cone;
}

bool relative_halfspace(const Vec3& obj, const Vec3& ref, const Pose& view, Halfspace relation) {
  constexpr double kDeadband = 0.01;
  const Vec2 forward = rotate2({0, 1}, view.yaw);
  const Vec2 right = rotate2({1, 0}, view.yaw);
  const Vec2 d{obj.x - ref.x, obj.y - ref.y};
  switch (relation) {
    case Halfspace::Left:
      return d.dot(right) < -kDeadband;
    case Halfspace::Right:
      return d.dot(right) > kDeadband;
    case Halfspace::Front:
      return d.dot(forward) < -kDeadband;
    case Halfspace::Behind:
      return d.dot(forward) > kDeadband;
  }
  return false;
}

double distance_xy(const OrientedBox& a, const OrientedBox& b) {
  if (footprint_sat_overlap(a, b) > 0) return 0.0;
  const auto fa = footprint_corners(a);
  const auto fb = footprint_corners(b);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      best = std::min(best, segment_segment_distance(fa[i], fa[(i + 1) % 4], fb[j],
                                                     fb[(j + 1) % 4]));
    }
  }
  return best;
}

bool segment_intersects_box(const Vec3& p0, const Vec3& p1, const OrientedBox& b) {
  // Slab test in the box's local frame.
  const Vec2 l0 = rotate2({p0.x - b.center.x, p0.y - b.center.y}, -b.yaw);
  const Vec2 l1 = rotate2({p1.x - b.center.x, p1.y - b.center.y}, -b.yaw);
  const double z0 = p0.z - b.center.z, z1 = p1.z - b.center.z;
  const double origin[3] = {l0.x, l0.y, z0};
  const double dir[3] = {l1.x - l0.x, l1.y - l0.y, z1 - z0};
  const double he[3] = {b.half_extents.x, b.half_extents.y, b.half_extents.z};

  double tmin = 0.0, tmax = 1.0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(dir[i]) < 1e-12) {
      if (std::abs(origin[i]) > he[i]) return false;
      continue;
    }
    double t0 = (-he[i] - origin[i]) / dir[i];
    double t1 = (he[i] - origin[i]) / dir[i];
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return false;
  }
  // Endpoints resting exactly on the surface do not count as blocking.
  return tmax > 1e-9 && tmin < 1.0 - 1e-9;
}

}  // namespace editlang
