#include "editlang/predicates.hpp"

#include <algorithm>
#include <map>

namespace editlang {

namespace {

struct Evaluated {
  const SceneObject* obj;
  OrientedBox box;
  bool staged;
};

bool visible_from(const Scene& scene, const SceneObject& o, const Pose& view,
                  const std::vector<Evaluated>& placed) {
  for (const auto& e : placed) {
    if (e.obj->id == o.id) continue;
    if (segment_intersects_box(view.position, o.pose.position, e.box)) return false;
  }
  return true;
}

bool accessible_in(const Scene& scene, const SceneObject& o, const std::vector<Evaluated>& placed,
                   const Tolerances& tol) {
  // Four cells adjacent to the footprint sides, 0.5m deep, same height.
  const OrientedBox box = world_obb(o);
  const std::array<Vec2, 4> dirs = {rotate2({1, 0}, o.pose.yaw), rotate2({-1, 0}, o.pose.yaw),
                                    rotate2({0, 1}, o.pose.yaw), rotate2({0, -1}, o.pose.yaw)};
  const std::array<double, 4> side_he = {o.half_extents.x, o.half_extents.x, o.half_extents.y,
                                         o.half_extents.y};
  for (int i = 0; i < 4; ++i) {
    const double offset = side_he[i] + 0.25;
    OrientedBox cell;
    cell.center = {box.center.x + dirs[i].x * offset, box.center.y + dirs[i].y * offset,
                   box.center.z};
    // Cell spans the full side width and reaches 0.5m out from the face.
    if (i < 2) {
      cell.half_extents = {0.25, o.half_extents.y, o.half_extents.z};
    } else {
      cell.half_extents = {o.half_extents.x, 0.25, o.half_extents.z};
    }
    cell.yaw = o.pose.yaw;

    bool blocked = false;
    for (const auto& e : placed) {
      if (e.obj->id == o.id) continue;
      if (colliding(cell, e.box, tol)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return true;
  }
  return false;
}

}  // namespace

std::optional<std::string> geometric_support(const Scene& scene, const SceneObject& o,
                                             const Tolerances& tol) {
  if (scene.is_staged(o)) return std::nullopt;
  const OrientedBox box = world_obb(o);
  std::string best_id;
  double best_ratio = 0.0;
  for (const auto& s : scene.objects) {
    if (s.id == o.id || scene.is_staged(s)) continue;
    const double r = support_ratio(box, world_obb(s), tol);
    if (r >= tol.support_ratio && (r > best_ratio || (r == best_ratio && s.id < best_id))) {
      best_ratio = r;
      best_id = s.id;
    }
  }
  if (best_ratio >= tol.support_ratio) return best_id;
  if (std::abs(box.base_z() - scene.bounds.floor_height) <= tol.floor_contact) {
    return std::string(kFloorId);
  }
  return std::nullopt;
}

SymbolicState evaluate_state(const Scene& scene, const Tolerances& tol, const EvalOptions& opts) {
  SymbolicState state;
  auto emit = [&](GroundAtom a) { state.atoms.insert(std::move(a)); };

  for (const auto& id : scene.removed_ids) emit(atom1(Pred::Removed, id));

  std::vector<Evaluated> all;
  std::vector<Evaluated> placed;
  for (const auto& o : scene.objects) {
    Evaluated e{&o, world_obb(o), scene.is_staged(o)};
    all.push_back(e);
    if (!e.staged) placed.push_back(e);
  }

  std::set<double> taus = opts.extra_taus;
  taus.insert(tol.near_default);

  // Unary and attribute predicates.
  for (const auto& e : all) {
    const SceneObject& o = *e.obj;
    emit(atom1(Pred::Exists, o.id));
    if (o.locked) emit(atom1(Pred::Locked, o.id));
    if (!o.style.empty()) {
      emit(make_atom(Pred::HasStyle, {Term::ident(o.id), Term::text(o.style)}));
    }
    if (const CatalogEntry* cat = scene.find_catalog(o.category)) {
      emit(make_atom(Pred::HasScale,
                     {Term::ident(o.id),
                      Term::number(o.half_extents.x / cat->default_half_extents.x),
                      Term::number(o.half_extents.y / cat->default_half_extents.y),
                      Term::number(o.half_extents.z / cat->default_half_extents.z)}));
    }
    if (o.group_parent) emit(atom2(Pred::GroupedWith, o.id, *o.group_parent));
  }

  // Support structure.
  std::map<std::string, std::string> on_map;
  for (const auto& e : placed) {
    const SceneObject& o = *e.obj;
    emit(make_atom(Pred::At, {Term::ident(o.id), Term::position(o.pose.position)}));
    if (auto sup = geometric_support(scene, o, tol)) {
      on_map[o.id] = *sup;
      emit(atom2(Pred::On, o.id, *sup));
    }
    for (const auto& s : placed) {
      if (s.obj->id == o.id) continue;
      if (support_ratio(e.box, s.box, tol) >= tol.support_ratio) {
        emit(atom2(Pred::Supported, o.id, s.obj->id));
      }
    }
  }

  // clear(x): nothing rests on x. Staged objects trivially qualify.
  for (const auto& e : all) {
    bool occupied = false;
    for (const auto& [child, parent] : on_map) {
      if (parent == e.obj->id && child != e.obj->id) {
        occupied = true;
        break;
      }
    }
    if (!occupied) emit(atom1(Pred::Clear, e.obj->id));
  }

  // stable(o): single qualifying support, or wall-mounted, or floor contact.
  for (const auto& e : placed) {
    const SceneObject& o = *e.obj;
    if (o.wall_mounted) {
      emit(atom1(Pred::Stable, o.id));
      continue;
    }
    int supports = 0;
    for (const auto& s : placed) {
      if (s.obj->id == o.id) continue;
      if (support_ratio(e.box, s.box, tol) >= tol.support_ratio) ++supports;
    }
    const bool on_floor = std::abs(e.box.base_z() - scene.bounds.floor_height) <= tol.floor_contact;
    if (supports == 1 || (supports == 0 && on_floor)) emit(atom1(Pred::Stable, o.id));
  }

  // Pair predicates, bounded by the cutoff.
  for (const auto& a : placed) {
    for (const auto& b : placed) {
      if (a.obj->id == b.obj->id) continue;
      if (distance_xy(a.box, b.box) > opts.pair_cutoff) continue;

      if (obb_penetration(a.box, b.box) > tol.collision_eps) {
        emit(atom2(Pred::Colliding, a.obj->id, b.obj->id));
      }
      const double dxy = distance_xy(a.box, b.box);
      const double dz = std::max(0.0, std::abs(a.box.center.z - b.box.center.z) -
                                          (a.box.half_extents.z + b.box.half_extents.z));
      if (dxy <= tol.collision_eps && dz <= tol.collision_eps) {
        emit(atom2(Pred::Contact, a.obj->id, b.obj->id));
      }
      for (double tau : taus) {
        if (dxy <= tau) {
          emit(make_atom(Pred::Near, {Term::ident(a.obj->id), Term::ident(b.obj->id),
                                      Term::number(tau)}));
        }
      }
      try {
        if (facing(a.obj->pose, a.obj->front_axis, b.obj->pose.position, tol.facing_cone)) {
          emit(atom2(Pred::IsFacing, a.obj->id, b.obj->id));
        }
      } catch (const DegenerateDirection&) {
        // coincident in xy: no facing atom
      }
      for (int axis = 0; axis < 3; ++axis) {
        const double da = axis == 0 ? a.box.center.x - b.box.center.x
                          : axis == 1 ? a.box.center.y - b.box.center.y
                                      : a.box.center.z - b.box.center.z;
        if (std::abs(da) <= 0.02) {
          static const char* axis_names[3] = {"x", "y", "z"};
          emit(make_atom(Pred::AlignedWith, {Term::ident(a.obj->id), Term::ident(b.obj->id),
                                             Term::ident(axis_names[axis])}));
        }
      }
      for (const auto& [view_name, view_pose] : scene.viewpoints) {
        struct {
          Halfspace h;
          Pred p;
        } rels[4] = {{Halfspace::Left, Pred::LeftOf},
                     {Halfspace::Right, Pred::RightOf},
                     {Halfspace::Front, Pred::InFrontOf},
                     {Halfspace::Behind, Pred::Behind}};
        for (const auto& rel : rels) {
          if (relative_halfspace(a.obj->pose.position, b.obj->pose.position, view_pose, rel.h)) {
            emit(make_atom(rel.p, {Term::ident(a.obj->id), Term::ident(b.obj->id),
                                   Term::ident(view_name)}));
          }
        }
      }
      if (!a.obj->style.empty() &&
          normalize_style_text(a.obj->style) == normalize_style_text(b.obj->style)) {
        emit(atom2(Pred::MatchesStyle, a.obj->id, b.obj->id));
      }
    }
  }

  // between(o, a, b): o's footprint center near the segment joining a and b
  // and strictly between them in projection.
  for (const auto& o : placed) {
    for (const auto& a : placed) {
      if (a.obj->id == o.obj->id) continue;
      for (const auto& b : placed) {
        if (b.obj->id == o.obj->id || b.obj->id == a.obj->id) continue;
        const Vec2 pa{a.box.center.x, a.box.center.y};
        const Vec2 pb{b.box.center.x, b.box.center.y};
        const Vec2 po{o.box.center.x, o.box.center.y};
        const Vec2 ab = pb - pa;
        const double len2 = ab.dot(ab);
        if (len2 < 1e-9) continue;
        const double t = (po - pa).dot(ab) / len2;
        if (t <= 0 || t >= 1) continue;
        const Vec2 proj = pa + ab * t;
        if ((po - proj).norm() <= 0.3) emit(make_atom(
            Pred::Between,
            {Term::ident(o.obj->id), Term::ident(a.obj->id), Term::ident(b.obj->id)}));
      }
    }
  }

  // Visibility and accessibility.
  for (const auto& e : placed) {
    for (const auto& [view_name, view_pose] : scene.viewpoints) {
      if (visible_from(scene, *e.obj, view_pose, placed)) {
        emit(make_atom(Pred::Visible, {Term::ident(e.obj->id), Term::ident(view_name)}));
      }
    }
    if (accessible_in(scene, *e.obj, placed, tol)) {
      emit(atom1(Pred::Accessible, e.obj->id));
    }
  }

  return state;
}

bool holds(const SymbolicState& state, const GroundAtom& atom) {
  check_well_formed(atom);
  return state.contains(atom);
}

StateDiff diff_states(const SymbolicState& before, const SymbolicState& after) {
  StateDiff d;
  std::set_difference(after.atoms.begin(), after.atoms.end(), before.atoms.begin(),
                      before.atoms.end(), std::inserter(d.added, d.added.begin()));
  std::set_difference(before.atoms.begin(), before.atoms.end(), after.atoms.begin(),
                      after.atoms.end(), std::inserter(d.removed, d.removed.begin()));
  return d;
}

}  // namespace editlang
