#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "editlang/geometry.hpp"

namespace editlang {

enum class Pred {
  Exists,
  Removed,
  At,
  On,
  Supported,
  Contact,
  Clear,
  Stable,
  Colliding,
  Near,
  IsFacing,
  LeftOf,
  RightOf,
  InFrontOf,
  Behind,
  Between,
  AlignedWith,
  GroupedWith,
  Locked,
  Visible,
  Accessible,
  HasStyle,
  MatchesStyle,
  HasScale,
};

enum class TermKind { Ident, Number, Position, Text };

// A ground term. All payloads are stored quantized so that equality and
// ordering are exact: positions at 1cm, scalars at 1e-4, style text
// normalized (lowercase, collapsed whitespace).
struct Term {
  TermKind kind = TermKind::Ident;
  std::string s;                     // Ident name or normalized Text
  std::int64_t q = 0;                // Number: round(value * 1e4)
  std::array<int, 3> cm{0, 0, 0};    // Position: centimeters

  static Term ident(std::string name);
  static Term number(double value);
  static Term position(const Vec3& p);
  static Term text(const std::string& raw);

  double num() const { return static_cast<double>(q) / 1e4; }
  Vec3 pos() const { return {cm[0] / 100.0, cm[1] / 100.0, cm[2] / 100.0}; }

  auto operator<=>(const Term&) const = default;
  std::string to_string() const;
};

std::string normalize_style_text(const std::string& raw);
std::string format_number(double value);  // canonical, <= 4 decimals

struct GroundAtom {
  Pred pred;
  std::vector<Term> args;

  auto operator<=>(const GroundAtom&) const = default;
  std::string to_string() const;
};

// Slot classes for signature checking. Object/Axis/View/Relation are all
// Ident terms; Axis and Relation additionally restrict the keyword.
enum class SlotKind { Object, Position, Scalar, Text, Axis, View, Relation };

struct PredSignature {
  Pred pred;
  const char* name;
  std::vector<SlotKind> slots;
  int optional_from = -1;  // args from this index may be omitted on input
};

const PredSignature& pred_signature(Pred p);
std::optional<Pred> pred_from_name(const std::string& name);

// Throws MalformedAtom when arity or term kinds do not match the signature.
void check_well_formed(const GroundAtom& atom);

// Closed-world state: absent means false.
struct SymbolicState {
  std::set<GroundAtom> atoms;

  bool contains(const GroundAtom& a) const { return atoms.count(a) > 0; }
  std::size_t size() const { return atoms.size(); }
  bool operator==(const SymbolicState&) const = default;
};

struct StateDiff {
  std::set<GroundAtom> added;
  std::set<GroundAtom> removed;
};

// Convenience constructors used throughout the planner and tests.
GroundAtom make_atom(Pred p, std::vector<Term> args);
GroundAtom atom1(Pred p, const std::string& a);
GroundAtom atom2(Pred p, const std::string& a, const std::string& b);

}  // namespace editlang
