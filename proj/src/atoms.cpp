#include "editlang/atoms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace editlang {

namespace {

const std::vector<PredSignature>& signature_table() {
  using SK = SlotKind;
  static const std::vector<PredSignature> table = {
      {Pred::Exists, "exists", {SK::Object}},
      {Pred::Removed, "removed", {SK::Object}},
      {Pred::At, "at", {SK::Object, SK::Position}},
      {Pred::On, "on", {SK::Object, SK::Object}},
      {Pred::Supported, "supported", {SK::Object, SK::Object}},
      {Pred::Contact, "contact", {SK::Object, SK::Object}},
      {Pred::Clear, "clear", {SK::Object}},
      {Pred::Stable, "stable", {SK::Object}},
      {Pred::Colliding, "colliding", {SK::Object, SK::Object}},
      {Pred::Near, "near", {SK::Object, SK::Object, SK::Scalar}, 2},
      {Pred::IsFacing, "is_facing", {SK::Object, SK::Object}},
      {Pred::LeftOf, "left_of", {SK::Object, SK::Object, SK::View}},
      {Pred::RightOf, "right_of", {SK::Object, SK::Object, SK::View}},
      {Pred::InFrontOf, "in_front_of", {SK::Object, SK::Object, SK::View}},
      {Pred::Behind, "behind", {SK::Object, SK::Object, SK::View}},
      {Pred::Between, "between", {SK::Object, SK::Object, SK::Object}},
      {Pred::AlignedWith, "aligned_with", {SK::Object, SK::Object, SK::Axis}},
      {Pred::GroupedWith, "grouped_with", {SK::Object, SK::Object}},
      {Pred::Locked, "locked", {SK::Object}},
      {Pred::Visible, "visible", {SK::Object, SK::View}},
      {Pred::Accessible, "accessible", {SK::Object}},
      {Pred::HasStyle, "has_style", {SK::Object, SK::Text}},
      {Pred::MatchesStyle, "matches_style", {SK::Object, SK::Object}},
      {Pred::HasScale, "has_scale", {SK::Object, SK::Scalar, SK::Scalar, SK::Scalar}},
  };
  return table;
}

const std::map<std::string, Pred>& name_index() {
  static const std::map<std::string, Pred> index = [] {
    std::map<std::string, Pred> m;
    for (const auto& sig : signature_table()) m[sig.name] = sig.pred;
    return m;
  }();
  return index;
}

bool slot_accepts(SlotKind slot, const Term& t) {
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
      return t.kind == TermKind::Text;
  }
  return false;
}

}  // namespace

Term Term::ident(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  Term t;
  t.kind = TermKind::Ident;
  t.s = std::move(name);
  return t;
}

Term Term::number(double value) {
  Term t;
  t.kind = TermKind::Number;
  t.q = static_cast<std::int64_t>(std::llround(value * 1e4));
  return t;
}

Term Term::position(const Vec3& p) {
  Term t;
  t.kind = TermKind::Position;
  t.cm = {static_cast<int>(std::lround(p.x * 100.0)), static_cast<int>(std::lround(p.y * 100.0)),
          static_cast<int>(std::lround(p.z * 100.0))};
  return t;
}

Term Term::text(const std::string& raw) {
  Term t;
  t.kind = TermKind::Text;
  t.s = normalize_style_text(raw);
  return t;
}

std::string normalize_style_text(const std::string& raw) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string format_number(double value) {
  // Canonical form: at most 4 decimals, trailing zeros trimmed.
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(4);
  ss << value;
  std::string s = ss.str();
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string Term::to_string() const {
  switch (kind) {
    case TermKind::Ident:
      return s;
    case TermKind::Number:
      return format_number(num());
    case TermKind::Position: {
      const Vec3 p = pos();
      return "[" + format_number(p.x) + ", " + format_number(p.y) + ", " + format_number(p.z) +
             "]";
    }
    case TermKind::Text: {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }
  }
  return "";
}

std::string GroundAtom::to_string() const {
  std::string out = pred_signature(pred).name;
  out += "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].to_string();
  }
  out += ")";
  return out;
}

const PredSignature& pred_signature(Pred p) {
  for (const auto& sig : signature_table()) {
    if (sig.pred == p) return sig;
  }
  throw Error("unknown predicate enum value");
}

std::optional<Pred> pred_from_name(const std::string& name) {
  auto it = name_index().find(name);
  if (it == name_index().end()) return std::nullopt;
  return it->second;
}

void check_well_formed(const GroundAtom& atom) {
  const auto& sig = pred_signature(atom.pred);
  const std::size_t min_arity =
      sig.optional_from >= 0 ? static_cast<std::size_t>(sig.optional_from) : sig.slots.size();
  if (atom.args.size() < min_arity || atom.args.size() > sig.slots.size()) {
    throw MalformedAtom(std::string(sig.name) + ": expected " +
                        std::to_string(sig.slots.size()) + " arguments, got " +
                        std::to_string(atom.args.size()));
  }
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (!slot_accepts(sig.slots[i], atom.args[i])) {
      throw MalformedAtom(std::string(sig.name) + ": argument " + std::to_string(i + 1) +
                          " has the wrong kind");
    }
  }
}

GroundAtom make_atom(Pred p, std::vector<Term> args) {
  GroundAtom a{p, std::move(args)};
  check_well_formed(a);
  return a;
}

GroundAtom atom1(Pred p, const std::string& a) { return make_atom(p, {Term::ident(a)}); }

GroundAtom atom2(Pred p, const std::string& a, const std::string& b) {
  return make_atom(p, {Term::ident(a), Term::ident(b)});
}

}  // namespace editlang
