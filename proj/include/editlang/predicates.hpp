#pragma once

#include <set>

#include "editlang/atoms.hpp"
#include "editlang/scene.hpp"

namespace editlang {

// Extra context for evaluation: goal-declared near() radii beyond the
// default. Pair predicates are only emitted for objects within this cutoff
// so the ground set stays small.
struct EvalOptions {
  std::set<double> extra_taus;
  double pair_cutoff = 10.0;
};

// Evaluates every predicate on the scene under the closed-world assumption.
// Deterministic: identical scenes and tolerances give bit-identical states.
SymbolicState evaluate_state(const Scene& scene, const Tolerances& tol,
                             const EvalOptions& opts = {});

// Set membership with quantized comparison. Throws MalformedAtom on
// ill-formed atoms.
bool holds(const SymbolicState& state, const GroundAtom& atom);

StateDiff diff_states(const SymbolicState& before, const SymbolicState& after);

// The geometric support of `o`: the id of the surface whose top carries its
// base (best ratio >= tol.support_ratio), else "floor" when within
// tol.floor_contact of the floor, else nullopt.
std::optional<std::string> geometric_support(const Scene& scene, const SceneObject& o,
                                             const Tolerances& tol);

}  // namespace editlang
