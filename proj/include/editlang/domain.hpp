#pragma once

#include <variant>

#include "editlang/placement.hpp"
#include "editlang/predicates.hpp"

namespace editlang {

enum class ActionName {
  MoveTo,
  MoveGroup,
  PlaceRelative,
  PlaceOn,
  AlignWith,
  RotateTowards,
  RotateBy,
  Scale,
  AddObject,
  RemoveObject,
  Stylize,
};

struct ActionSignature {
  ActionName name;
  const char* text;
  std::vector<SlotKind> slots;
};

const ActionSignature& action_signature(ActionName name);
std::optional<ActionName> action_from_name(const std::string& name);

// A fully ground action: surface form plus its <pre, add, del> sets.
// add/del carry both the schema's template atoms and the derived geometric
// consequences of the concrete parameters against the scene the instance was
// built from. add and del are disjoint by construction.
struct ActionInstance {
  ActionName name;
  std::vector<Term> args;  // canonical textual arguments
  std::set<GroundAtom> pre, add, del;
  std::optional<Vec3> planned_position;  // spot chosen for implicit placements (audit only)

  std::string to_string() const;
  // Identity is the surface form; effect sets are derived data.
  bool same_surface(const ActionInstance& o) const { return name == o.name && args == o.args; }
};

// Schema with object/discrete slots bound and continuous parameters still
// open (positions, degrees, factors, style text).
struct GroundedTemplate {
  ActionName name;
  std::vector<Term> bound;  // leading discrete arguments
  std::string to_string() const;
};

// Every schema instantiated over compatible object bindings. Locked objects
// never appear as the moved subject; binding an object to itself in a binary
// slot is excluded.
std::vector<GroundedTemplate> ground_domain(const Scene& scene);

// Smallest unused "<category>_<n>" id; removed ids stay reserved.
std::string fresh_object_id(const Scene& scene, const std::string& category);

struct Instantiated {
  ActionInstance action;
  Scene preview;           // scene with the action's parameters tentatively applied
  SymbolicState preview_state;
};

struct InstantiateError {
  bool formal = true;  // false: geometric impossibility (no feasible placement, ...)
  std::string message;
};

using InstantiateResult = std::variant<Instantiated, InstantiateError>;

// Grounds `args` against the scene, applies the geometric semantics to a
// copy, and assembles the full <pre, add, del>. `base_state` must be
// evaluate_state(scene, tol, opts). `avoid` skips previously proposed spots
// when the schema places implicitly (place_on, place_relative, add_object).
InstantiateResult instantiate(const Scene& scene, const SymbolicState& base_state,
                              const Tolerances& tol, const EvalOptions& opts, ActionName name,
                              const std::vector<Term>& args,
                              const std::set<std::array<int, 3>>* avoid = nullptr);

// The geometric semantics shared by instantiation previews and the executor.
// Throws Error when the action cannot be realized (unknown object, no
// feasible placement, non-positive scale, ...).
Scene apply_action_geometry(const Scene& scene, const Tolerances& tol, ActionName name,
                            const std::vector<Term>& args,
                            const std::set<std::array<int, 3>>* avoid = nullptr,
                            Vec3* chosen_out = nullptr);

// Object ids this action moves, creates or deletes (includes group members).
std::vector<std::string> touched_objects(const Scene& scene, ActionName name,
                                         const std::vector<Term>& args);

// For each functional atom in `add` (on, at, has_style, has_scale, and the
// exists/removed pair), the conflicting sibling atoms currently in `state`.
std::set<GroundAtom> mutex_closure(const SymbolicState& state, const std::set<GroundAtom>& add);

// STRIPS transition: s' = (s \ del*) ∪ add with del* = del extended by mutex
// closure. Throws PreconditionUnsatisfied listing the missing atoms.
SymbolicState apply(const SymbolicState& state, const ActionInstance& action);

}  // namespace editlang
