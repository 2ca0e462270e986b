#include "editlang/domain.hpp"

#include <algorithm>
#include <cmath>

namespace editlang {

namespace {

const std::vector<ActionSignature>& action_table() {
  using SK = SlotKind;
  static const std::vector<ActionSignature> table = {
      {ActionName::MoveTo, "move_to", {SK::Object, SK::Position}},
      {ActionName::MoveGroup, "move_group", {SK::Object, SK::Position}},
      {ActionName::PlaceRelative, "place_relative", {SK::Object, SK::Object, SK::Relation, SK::View}},
      {ActionName::PlaceOn, "place_on", {SK::Object, SK::Object}},
      {ActionName::AlignWith, "align_with", {SK::Object, SK::Object, SK::Axis}},
      {ActionName::RotateTowards, "rotate_towards", {SK::Object, SK::Object}},
      {ActionName::RotateBy, "rotate_by", {SK::Object, SK::Scalar}},
      {ActionName::Scale, "scale", {SK::Object, SK::Scalar, SK::Scalar, SK::Scalar}},
      {ActionName::AddObject, "add_object", {SK::Object, SK::Text, SK::Object}},
      {ActionName::RemoveObject, "remove_object", {SK::Object}},
      {ActionName::Stylize, "stylize", {SK::Object, SK::Text}},
  };
  return table;
}

bool slot_matches(SlotKind slot, const Term& t) {
  switch (slot) {
    case SlotKind::Object:
    case SlotKind::View:
      return t.kind == TermKind::Ident;
    case SlotKind::Axis:
      return t.kind == TermKind::Ident && (t.s == "x" || t.s == "y" || t.s == "z");
    case SlotKind::Relation:
      return t.kind == TermKind::Ident &&
             (t.s == "left" || t.s == "right" || t.s == "front" || t.s == "behind");
    case SlotKind::Position:
      return t.kind == TermKind::Position;
    case SlotKind::Scalar:
      return t.kind == TermKind::Number;
    case SlotKind::Text:
      // Category labels may be written as bare identifiers.
      return t.kind == TermKind::Text || t.kind == TermKind::Ident;
  }
  return false;
}

Pred relation_pred(const std::string& rel) {
  if (rel == "left") return Pred::LeftOf;
  if (rel == "right") return Pred::RightOf;
  if (rel == "front") return Pred::InFrontOf;
  return Pred::Behind;
}

Halfspace relation_halfspace(const std::string& rel) {
  if (rel == "left") return Halfspace::Left;
  if (rel == "right") return Halfspace::Right;
  if (rel == "front") return Halfspace::Front;
  return Halfspace::Behind;
}

void recompute_support(Scene& scene, const std::vector<std::string>& ids, const Tolerances& tol) {
  for (const auto& id : ids) {
    SceneObject* o = scene.find(id);
    if (o) o->support_parent = geometric_support(scene, *o, tol);
  }
}

// Template <pre, add, del> from the schema table (docs/domain-schemas.md).
void template_sets(ActionName name, const std::vector<Term>& args, std::set<GroundAtom>& pre,
                   std::set<GroundAtom>& add, std::set<GroundAtom>& del) {
  const std::string subject = args.empty() ? "" : args[0].s;
  switch (name) {
    case ActionName::MoveTo:
    case ActionName::MoveGroup:
      pre.insert(atom1(Pred::Exists, subject));
      add.insert(make_atom(Pred::At, {args[0], args[1]}));
      break;
    case ActionName::PlaceRelative:
      pre.insert(atom1(Pred::Exists, subject));
      pre.insert(atom1(Pred::Exists, args[1].s));
      add.insert(make_atom(relation_pred(args[2].s), {args[0], args[1], args[3]}));
      break;
    case ActionName::PlaceOn:
      pre.insert(atom1(Pred::Exists, subject));
      pre.insert(atom1(Pred::Clear, args[1].s));
      add.insert(atom2(Pred::On, subject, args[1].s));
      add.insert(atom2(Pred::Supported, subject, args[1].s));
      add.insert(atom1(Pred::Stable, subject));
      del.insert(atom1(Pred::Clear, args[1].s));
      break;
    case ActionName::AlignWith:
      pre.insert(atom1(Pred::Exists, subject));
      pre.insert(atom1(Pred::Exists, args[1].s));
      add.insert(make_atom(Pred::AlignedWith, {args[0], args[1], args[2]}));
      break;
    case ActionName::RotateTowards:
      pre.insert(atom1(Pred::Exists, subject));
      pre.insert(atom1(Pred::Exists, args[1].s));
      add.insert(atom2(Pred::IsFacing, subject, args[1].s));
      break;
    case ActionName::RotateBy:
    case ActionName::Scale:
      pre.insert(atom1(Pred::Exists, subject));
      break;
    case ActionName::AddObject: {
      const std::string support = args[2].s;
      if (support != kFloorId) {
        pre.insert(atom1(Pred::Exists, support));
        add.insert(atom2(Pred::Supported, subject, support));
      }
      add.insert(atom1(Pred::Exists, subject));
      add.insert(atom2(Pred::On, subject, support));
      add.insert(atom1(Pred::Stable, subject));
      break;
    }
    case ActionName::RemoveObject:
      pre.insert(atom1(Pred::Exists, subject));
      pre.insert(atom1(Pred::Clear, subject));
      add.insert(atom1(Pred::Removed, subject));
      del.insert(atom1(Pred::Exists, subject));
      break;
    case ActionName::Stylize:
      pre.insert(atom1(Pred::Exists, subject));
      add.insert(make_atom(Pred::HasStyle, {args[0], Term::text(args[1].s)}));
      break;
  }
}

}  // namespace

const ActionSignature& action_signature(ActionName name) {
  for (const auto& sig : action_table()) {
    if (sig.name == name) return sig;
  }
  throw Error("unknown action enum value");
}

std::optional<ActionName> action_from_name(const std::string& name) {
  for (const auto& sig : action_table()) {
    if (name == sig.text) return sig.name;
  }
  return std::nullopt;
}

std::string ActionInstance::to_string() const {
  std::string out = action_signature(name).text;
  out += "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].to_string();
  }
  return out + ")";
}

std::string GroundedTemplate::to_string() const {
  const auto& sig = action_signature(name);
  std::string out = sig.text;
  out += "(";
  for (std::size_t i = 0; i < sig.slots.size(); ++i) {
    if (i) out += ", ";
    out += i < bound.size() ? bound[i].to_string() : "?";
  }
  return out + ")";
}

std::string fresh_object_id(const Scene& scene, const std::string& category) {
  std::string base;
  for (unsigned char c : category) {
    base += std::isalnum(c) ? static_cast<char>(std::tolower(c)) : '_';
  }
  if (base.empty() || !std::isalpha(static_cast<unsigned char>(base[0]))) base = "obj_" + base;
  for (int n = 1;; ++n) {
    std::string id = base + "_" + std::to_string(n);
    if (!scene.find(id) && !scene.removed_ids.count(id)) return id;
  }
}

std::vector<GroundedTemplate> ground_domain(const Scene& scene) {
  std::vector<GroundedTemplate> out;
  std::vector<const SceneObject*> placed;
  for (const auto& o : scene.objects) {
    if (!scene.is_staged(o)) placed.push_back(&o);
  }

  for (const auto& o : scene.objects) {
    if (o.locked) continue;  // locked objects are never the moved subject
    const Term subject = Term::ident(o.id);
    out.push_back({ActionName::MoveTo, {subject}});
    if (!scene.group_children(o.id).empty()) out.push_back({ActionName::MoveGroup, {subject}});
    out.push_back({ActionName::RotateBy, {subject}});
    out.push_back({ActionName::Scale, {subject}});
    out.push_back({ActionName::RemoveObject, {subject}});
    out.push_back({ActionName::Stylize, {subject}});

    for (const SceneObject* t : placed) {
      if (t->id == o.id) continue;
      const Term target = Term::ident(t->id);
      out.push_back({ActionName::PlaceOn, {subject, target}});
      out.push_back({ActionName::RotateTowards, {subject, target}});
      for (const char* axis : {"x", "y"}) {
        out.push_back({ActionName::AlignWith, {subject, target, Term::ident(axis)}});
      }
      for (const auto& [view, pose] : scene.viewpoints) {
        for (const char* rel : {"left", "right", "front", "behind"}) {
          out.push_back(
              {ActionName::PlaceRelative, {subject, target, Term::ident(rel), Term::ident(view)}});
        }
      }
    }
  }

  for (const auto& entry : scene.catalog) {
    const Term fresh = Term::ident(fresh_object_id(scene, entry.category));
    const Term cat = Term::text(entry.category);
    out.push_back({ActionName::AddObject, {fresh, cat, Term::ident(kFloorId)}});
    for (const SceneObject* t : placed) {
      out.push_back({ActionName::AddObject, {fresh, cat, Term::ident(t->id)}});
    }
  }
  return out;
}

std::vector<std::string> touched_objects(const Scene& scene, ActionName name,
                                         const std::vector<Term>& args) {
  std::vector<std::string> out;
  if (args.empty()) return out;
  out.push_back(args[0].s);
  if (name == ActionName::MoveGroup) {
    for (const auto& child : scene.group_children(args[0].s)) out.push_back(child);
  }
  return out;
}

Scene apply_action_geometry(const Scene& scene, const Tolerances& tol, ActionName name,
                            const std::vector<Term>& args,
                            const std::set<std::array<int, 3>>* avoid, Vec3* chosen_out) {
  Scene next = scene;
  next.load_violations.clear();
  const std::string subject = args.empty() ? "" : args[0].s;

  auto require = [&](const std::string& id) -> SceneObject& {
    SceneObject* o = next.find(id);
    if (!o) throw Error("unknown object '" + id + "'");
    return *o;
  };
  auto place_search = [&](const SceneObject& obj, PlacementSpec spec) {
    spec.half_extents = obj.half_extents;
    spec.yaw = obj.pose.yaw;
    spec.exclude_ids.insert(obj.id);
    if (avoid) spec.avoid = *avoid;
    auto pos = find_placement(next, tol, spec);
    if (!pos) throw Error("no feasible placement for '" + obj.id + "'");
    if (chosen_out) *chosen_out = *pos;
    return *pos;
  };

  switch (name) {
    case ActionName::MoveTo: {
      SceneObject& o = require(subject);
      o.pose.position = args[1].pos();
      recompute_support(next, {subject}, tol);
      break;
    }
    case ActionName::MoveGroup: {
      SceneObject& o = require(subject);
      const Vec3 delta = args[1].pos() - o.pose.position;
      std::vector<std::string> moved{subject};
      for (const auto& child : next.group_children(subject)) moved.push_back(child);
      for (const auto& id : moved) {
        SceneObject& m = require(id);
        m.pose.position = m.pose.position + delta;
      }
      recompute_support(next, moved, tol);
      break;
    }
    case ActionName::PlaceRelative: {
      SceneObject& o = require(subject);
      const SceneObject& ref = require(args[1].s);
      auto view_it = next.viewpoints.find(args[3].s);
      if (view_it == next.viewpoints.end()) throw Error("unknown viewpoint '" + args[3].s + "'");
      const Pose view = view_it->second;
      const Halfspace rel = relation_halfspace(args[2].s);
      PlacementSpec spec;
      spec.include_surfaces = false;
      spec.anchor = ref.pose.position;
      spec.filter = [&, rel](const Vec3& p) {
        return relative_halfspace(p, ref.pose.position, view, rel);
      };
      o.pose.position = place_search(o, spec);
      recompute_support(next, {subject}, tol);
      break;
    }
    case ActionName::PlaceOn: {
      SceneObject& o = require(subject);
      const SceneObject& surf = require(args[1].s);
      PlacementSpec spec;
      spec.only_surface = surf.id;
      spec.anchor = {surf.pose.position.x, surf.pose.position.y,
                     world_obb(surf).top_z() + o.half_extents.z};
      o.pose.position = place_search(o, spec);
      o.support_parent = surf.id;
      break;
    }
    case ActionName::AlignWith: {
      SceneObject& o = require(subject);
      const SceneObject& t = require(args[1].s);
      if (args[2].s == "x") {
        o.pose.position.x = t.pose.position.x;
      } else {
        o.pose.position.y = t.pose.position.y;
      }
      recompute_support(next, {subject}, tol);
      break;
    }
    case ActionName::RotateTowards: {
      SceneObject& o = require(subject);
      const SceneObject& t = require(args[1].s);
      const Vec2 dir{t.pose.position.x - o.pose.position.x,
                     t.pose.position.y - o.pose.position.y};
      if (dir.norm() < 1e-3) throw Error("'" + subject + "' coincides with its rotation target");
      const Vec2 front{o.front_axis.x, o.front_axis.y};
      if (front.norm() < 1e-9) throw Error("'" + subject + "' has no horizontal front axis");
      o.pose.yaw = normalize_yaw(std::atan2(dir.y, dir.x) - std::atan2(front.y, front.x));
      break;
    }
    case ActionName::RotateBy: {
      SceneObject& o = require(subject);
      o.pose.yaw = normalize_yaw(o.pose.yaw + args[1].num() * std::numbers::pi / 180.0);
      break;
    }
    case ActionName::Scale: {
      SceneObject& o = require(subject);
      const double base = world_obb(o).base_z();
      o.half_extents = {o.half_extents.x * args[1].num(), o.half_extents.y * args[2].num(),
                        o.half_extents.z * args[3].num()};
      o.pose.position.z = base + o.half_extents.z;  // keep the base resting where it was
      break;
    }
    case ActionName::AddObject: {
      const CatalogEntry* entry = next.find_catalog(args[1].s);
      if (!entry) throw Error("no catalog entry for category '" + args[1].s + "'");
      SceneObject o;
      o.id = subject;
      o.category = entry->category;
      o.half_extents = entry->default_half_extents;
      o.style = entry->style;
      PlacementSpec spec;
      if (args[2].s == kFloorId) {
        spec.include_surfaces = false;
        spec.anchor = {(next.bounds.min.x + next.bounds.max.x) / 2,
                       (next.bounds.min.y + next.bounds.max.y) / 2,
                       next.bounds.floor_height + o.half_extents.z};
      } else {
        const SceneObject& surf = require(args[2].s);
        spec.only_surface = surf.id;
        spec.anchor = {surf.pose.position.x, surf.pose.position.y,
                       world_obb(surf).top_z() + o.half_extents.z};
      }
      spec.half_extents = o.half_extents;
      spec.yaw = 0;
      if (avoid) spec.avoid = *avoid;
      auto pos = find_placement(next, tol, spec);
      if (!pos) throw Error("no feasible placement for new object '" + subject + "'");
      if (chosen_out) *chosen_out = *pos;
      o.pose.position = *pos;
      o.support_parent = args[2].s == kFloorId ? std::string(kFloorId) : args[2].s;
      auto it = std::lower_bound(
          next.objects.begin(), next.objects.end(), o.id,
          [](const SceneObject& a, const std::string& id) { return a.id < id; });
      next.objects.insert(it, std::move(o));
      break;
    }
    case ActionName::RemoveObject: {
      require(subject);
      next.objects.erase(std::remove_if(next.objects.begin(), next.objects.end(),
                                        [&](const SceneObject& o) { return o.id == subject; }),
                         next.objects.end());
      next.removed_ids.insert(subject);
      for (auto& o : next.objects) {
        if (o.group_parent && *o.group_parent == subject) o.group_parent.reset();
        if (o.support_parent && *o.support_parent == subject) {
          o.support_parent = geometric_support(next, o, tol);
        }
      }
      break;
    }
    case ActionName::Stylize: {
      SceneObject& o = require(subject);
      o.style = args[1].s;
      break;
    }
  }
  return next;
}

InstantiateResult instantiate(const Scene& scene, const SymbolicState& base_state,
                              const Tolerances& tol, const EvalOptions& opts, ActionName name,
                              const std::vector<Term>& args,
                              const std::set<std::array<int, 3>>* avoid) {
  const auto& sig = action_signature(name);
  auto formal = [&](const std::string& msg) {
    return InstantiateResult{InstantiateError{true, msg}};
  };

  if (args.size() != sig.slots.size()) {
    return formal(std::string(sig.text) + ": expected " + std::to_string(sig.slots.size()) +
                  " arguments, got " + std::to_string(args.size()));
  }
  std::vector<Term> canon = args;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (sig.slots[i] == SlotKind::Text && canon[i].kind == TermKind::Ident) {
      canon[i] = Term::text(canon[i].s);
    }
    if (!slot_matches(sig.slots[i], canon[i])) {
      return formal(std::string(sig.text) + ": argument " + std::to_string(i + 1) +
                    " has the wrong kind");
    }
    if (canon[i].kind == TermKind::Ident && canon[i].s.find('*') != std::string::npos) {
      return formal("wildcard '" + canon[i].s + "' is only allowed in goal documents");
    }
  }

  const std::string subject = canon[0].s;
  if (subject == kFloorId) return formal("'floor' cannot be the subject of an action");

  if (name == ActionName::AddObject) {
    if (scene.find(subject)) return formal("object id '" + subject + "' already exists");
    if (scene.removed_ids.count(subject)) {
      return formal("object id '" + subject + "' was removed and stays reserved");
    }
    if (!scene.find_catalog(canon[1].s)) {
      return formal("no catalog entry for category '" + canon[1].s + "'");
    }
    if (canon[2].s != kFloorId) {
      const SceneObject* sup = scene.find(canon[2].s);
      if (!sup) return formal("unknown object '" + canon[2].s + "'");
      if (scene.is_staged(*sup)) return formal("'" + canon[2].s + "' is staged inventory");
    }
  } else {
    const SceneObject* subj = scene.find(subject);
    if (!subj) return formal("unknown object '" + subject + "'");
    if (subj->locked) return formal("object '" + subject + "' is locked");
  }

  // Secondary object slots must resolve; binding an object to itself in a
  // binary slot is degenerate.
  for (std::size_t i = 1; i < canon.size(); ++i) {
    if (sig.slots[i] != SlotKind::Object || name == ActionName::AddObject) continue;
    if (canon[i].s == subject) return formal("'" + subject + "' cannot be bound to itself");
    if (canon[i].s != kFloorId && !scene.find(canon[i].s)) {
      return formal("unknown object '" + canon[i].s + "'");
    }
    if (canon[i].s == kFloorId) {
      return formal("'floor' is not a valid target here; use move_to for floor placement");
    }
  }
  if (name == ActionName::PlaceRelative && !scene.viewpoints.count(canon[3].s)) {
    return formal("unknown viewpoint '" + canon[3].s + "'");
  }
  if (name == ActionName::AlignWith && canon[2].s == "z") {
    return formal("alignment along z is not supported");
  }
  if (name == ActionName::Scale) {
    for (int i = 1; i <= 3; ++i) {
      if (canon[i].num() <= 0) return formal("scale factors must be positive");
    }
  }
  if (name == ActionName::MoveTo || name == ActionName::MoveGroup) {
    const Vec3 p = canon[1].pos();
    if (!p.finite()) return formal("target position must be finite");
  }

  ActionInstance inst;
  inst.name = name;
  inst.args = canon;
  Vec3 chosen;
  Scene preview;
  try {
    preview = apply_action_geometry(scene, tol, name, canon, avoid, &chosen);
  } catch (const Error& e) {
    return InstantiateResult{InstantiateError{false, e.what()}};
  }
  if (name == ActionName::PlaceOn || name == ActionName::PlaceRelative ||
      name == ActionName::AddObject) {
    inst.planned_position = chosen;
  }

  std::set<GroundAtom> tmpl_pre, tmpl_add, tmpl_del;
  template_sets(name, canon, tmpl_pre, tmpl_add, tmpl_del);

  SymbolicState preview_state = evaluate_state(preview, tol, opts);
  StateDiff derived = diff_states(base_state, preview_state);

  inst.pre = std::move(tmpl_pre);
  inst.add = tmpl_add;
  inst.add.insert(derived.added.begin(), derived.added.end());
  for (const auto& d : tmpl_del) {
    if (!inst.add.count(d)) inst.del.insert(d);
  }
  for (const auto& d : derived.removed) {
    if (!inst.add.count(d)) inst.del.insert(d);
  }

  return InstantiateResult{Instantiated{std::move(inst), std::move(preview),
                                        std::move(preview_state)}};
}

std::set<GroundAtom> mutex_closure(const SymbolicState& state, const std::set<GroundAtom>& add) {
  std::set<GroundAtom> extra;
  for (const auto& a : add) {
    switch (a.pred) {
      case Pred::On:
      case Pred::At:
      case Pred::HasStyle:
      case Pred::HasScale:
        for (const auto& s : state.atoms) {
          if (s.pred == a.pred && s.args[0] == a.args[0] && s != a) extra.insert(s);
        }
        break;
      case Pred::Exists: {
        GroundAtom sibling = atom1(Pred::Removed, a.args[0].s);
        if (state.contains(sibling)) extra.insert(sibling);
        break;
      }
      case Pred::Removed: {
        GroundAtom sibling = atom1(Pred::Exists, a.args[0].s);
        if (state.contains(sibling)) extra.insert(sibling);
        break;
      }
      default:
        break;
    }
  }
  return extra;
}

SymbolicState apply(const SymbolicState& state, const ActionInstance& action) {
  std::vector<std::string> missing;
  for (const auto& p : action.pre) {
    if (!state.contains(p)) missing.push_back(p.to_string());
  }
  if (!missing.empty()) {
    std::string msg = action.to_string() + ": unsatisfied preconditions:";
    for (const auto& m : missing) msg += " " + m;
    throw PreconditionUnsatisfied(msg, missing);
  }

  std::set<GroundAtom> del_star = action.del;
  const auto extra = mutex_closure(state, action.add);
  del_star.insert(extra.begin(), extra.end());

  SymbolicState out;
  std::set_difference(state.atoms.begin(), state.atoms.end(), del_star.begin(), del_star.end(),
                      std::inserter(out.atoms, out.atoms.begin()));
  out.atoms.insert(action.add.begin(), action.add.end());
  return out;
}

}  // namespace editlang
