#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "poctl/possibility.hpp"

namespace poctl {

/// Rational-bounded comparison set for possibility bounds. Nonempty by
/// construction: a point interval must be closed on both ends.
class Interval {
 public:
  Interval(Possibility lower, Possibility upper, bool lower_closed, bool upper_closed)
      : lower_(lower), upper_(upper), lower_closed_(lower_closed), upper_closed_(upper_closed) {
    if (lower_ > upper_) throw std::invalid_argument("interval with lower bound above upper");
    if (lower_ == upper_ && !(lower_closed_ && upper_closed_))
      throw std::invalid_argument("empty possibility bound");
  }

  static Interval exactly(Possibility p) { return {p, p, true, true}; }
  static Interval at_least(Possibility p) { return {p, Possibility::one(), true, true}; }
  static Interval greater_than(Possibility p) { return {p, Possibility::one(), false, true}; }
  static Interval at_most(Possibility p) { return {Possibility::zero(), p, true, true}; }
  static Interval less_than(Possibility p) { return {Possibility::zero(), p, true, false}; }

  const Possibility& lower() const { return lower_; }
  const Possibility& upper() const { return upper_; }
  bool lower_closed() const { return lower_closed_; }
  bool upper_closed() const { return upper_closed_; }

  bool contains(const Possibility& x) const {
    if (lower_closed_ ? x < lower_ : x <= lower_) return false;
    if (upper_closed_ ? x > upper_ : x >= upper_) return false;
    return true;
  }

  /// Complement within [0,1], when that is itself a nonempty interval
  /// (i.e. when this interval touches 0 or 1).
  std::optional<Interval> complement() const {
    const bool from_zero = lower_.is_zero() && lower_closed_;
    const bool to_one = upper_.is_one() && upper_closed_;
    if (from_zero && to_one) return std::nullopt;  // full interval, complement empty
    if (to_one) return Interval{Possibility::zero(), lower_, true, !lower_closed_};
    if (from_zero) return Interval{upper_, Possibility::one(), !upper_closed_, true};
    return std::nullopt;
  }

  /// Canonical comparator spelling: "=p", ">=p", ">p", "<=p", "<p", or the
  /// bracket form "in [p,q]".
  std::string comparator_str() const {
    if (lower_ == upper_) return "=" + lower_.str();
    if (upper_.is_one() && upper_closed_)
      return (lower_closed_ ? ">=" : ">") + lower_.str();
    if (lower_.is_zero() && lower_closed_)
      return (upper_closed_ ? "<=" : "<") + upper_.str();
    return std::string("in ") + (lower_closed_ ? "[" : "(") + lower_.str() + "," + upper_.str() +
           (upper_closed_ ? "]" : ")");
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Possibility lower_;
  Possibility upper_;
  bool lower_closed_;
  bool upper_closed_;
};

struct StateFormula;
struct PathFormula;
using StateFormulaPtr = std::shared_ptr<const StateFormula>;
using PathFormulaPtr = std::shared_ptr<const PathFormula>;

enum class PathKind { Next, Until, BoundedUntil, Always };

struct PathFormula {
  PathKind kind;
  StateFormulaPtr left;   // Next/Always operand, Until left operand
  StateFormulaPtr right;  // Until right operand
  std::uint32_t bound = 0;
};

enum class StateKind { True, Atom, Not, And, Po, Exists, Forall };

/// State formula node. Sugar (false, |, ->, F) is desugared at construction
/// time, so trees contain only the constructors listed here.
struct StateFormula {
  StateKind kind;
  std::string atom;                // Atom
  StateFormulaPtr left, right;     // Not (left), And
  std::optional<Interval> bound;   // Po
  PathFormulaPtr path;             // Po/Exists/Forall
};

inline StateFormulaPtr make_true() {
  return std::make_shared<StateFormula>(StateFormula{StateKind::True, {}, {}, {}, {}, {}});
}
inline StateFormulaPtr make_atom(std::string name) {
  return std::make_shared<StateFormula>(
      StateFormula{StateKind::Atom, std::move(name), {}, {}, {}, {}});
}
inline StateFormulaPtr make_not(StateFormulaPtr f) {
  return std::make_shared<StateFormula>(
      StateFormula{StateKind::Not, {}, std::move(f), {}, {}, {}});
}
inline StateFormulaPtr make_and(StateFormulaPtr l, StateFormulaPtr r) {
  return std::make_shared<StateFormula>(
      StateFormula{StateKind::And, {}, std::move(l), std::move(r), {}, {}});
}
inline StateFormulaPtr make_false() { return make_not(make_true()); }
inline StateFormulaPtr make_or(StateFormulaPtr l, StateFormulaPtr r) {
  return make_not(make_and(make_not(std::move(l)), make_not(std::move(r))));
}
inline StateFormulaPtr make_implies(StateFormulaPtr l, StateFormulaPtr r) {
  return make_not(make_and(std::move(l), make_not(std::move(r))));
}
inline StateFormulaPtr make_po(Interval bound, PathFormulaPtr path) {
  return std::make_shared<StateFormula>(
      StateFormula{StateKind::Po, {}, {}, {}, std::move(bound), std::move(path)});
}
inline StateFormulaPtr make_exists(PathFormulaPtr path) {
  return std::make_shared<StateFormula>(
      StateFormula{StateKind::Exists, {}, {}, {}, {}, std::move(path)});
}
inline StateFormulaPtr make_forall(PathFormulaPtr path) {
  return std::make_shared<StateFormula>(
      StateFormula{StateKind::Forall, {}, {}, {}, {}, std::move(path)});
}

inline PathFormulaPtr make_next(StateFormulaPtr f) {
  return std::make_shared<PathFormula>(PathFormula{PathKind::Next, std::move(f), {}, 0});
}
inline PathFormulaPtr make_until(StateFormulaPtr l, StateFormulaPtr r) {
  return std::make_shared<PathFormula>(
      PathFormula{PathKind::Until, std::move(l), std::move(r), 0});
}
inline PathFormulaPtr make_bounded_until(StateFormulaPtr l, StateFormulaPtr r,
                                         std::uint32_t bound) {
  return std::make_shared<PathFormula>(
      PathFormula{PathKind::BoundedUntil, std::move(l), std::move(r), bound});
}
inline PathFormulaPtr make_always(StateFormulaPtr f) {
  return std::make_shared<PathFormula>(PathFormula{PathKind::Always, std::move(f), {}, 0});
}
inline PathFormulaPtr make_eventually(StateFormulaPtr f) {
  return make_until(make_true(), std::move(f));
}

// Structural equality.
inline bool equal(const StateFormulaPtr& a, const StateFormulaPtr& b);

inline bool equal(const PathFormulaPtr& a, const PathFormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->bound != b->bound) return false;
  return equal(a->left, b->left) && equal(a->right, b->right);
}

inline bool equal(const StateFormulaPtr& a, const StateFormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->atom != b->atom || a->bound != b->bound) return false;
  return equal(a->left, b->left) && equal(a->right, b->right) && equal(a->path, b->path);
}

// ---------------------------------------------------------------------------
// Printing. Precedence: primaries > ! > &. The output reparses to an
// identical tree.
// ---------------------------------------------------------------------------

inline std::string to_string(const StateFormulaPtr& f);

namespace detail {

inline std::string print_state(const StateFormulaPtr& f, int min_prec);

inline std::string print_path(const PathFormulaPtr& p) {
  switch (p->kind) {
    case PathKind::Next:
      return "X " + print_state(p->left, 0);
    case PathKind::Until:
      return print_state(p->left, 0) + " U " + print_state(p->right, 0);
    case PathKind::BoundedUntil:
      return print_state(p->left, 0) + " U<=" + std::to_string(p->bound) + " " +
             print_state(p->right, 0);
    case PathKind::Always:
      return "G " + print_state(p->left, 0);
  }
  return {};
}

inline std::string print_state(const StateFormulaPtr& f, int min_prec) {
  int prec = 4;
  std::string out;
  switch (f->kind) {
    case StateKind::True:
      out = "true";
      break;
    case StateKind::Atom:
      out = "\"" + f->atom + "\"";
      break;
    case StateKind::Not:
      prec = 3;
      out = "!" + print_state(f->left, 3);
      break;
    case StateKind::And:
      prec = 2;
      out = print_state(f->left, 2) + " & " + print_state(f->right, 3);
      break;
    case StateKind::Po: {
      const std::string bound = f->bound->comparator_str();
      out = (bound[0] == 'i' ? "Po " + bound : "Po" + bound) + " [ " + print_path(f->path) + " ]";
      break;
    }
    case StateKind::Exists:
      out = "E [ " + print_path(f->path) + " ]";
      break;
    case StateKind::Forall:
      out = "A [ " + print_path(f->path) + " ]";
      break;
  }
  return prec < min_prec ? "(" + out + ")" : out;
}

}  // namespace detail

inline std::string to_string(const StateFormulaPtr& f) { return detail::print_state(f, 0); }
inline std::string to_string(const PathFormulaPtr& p) { return detail::print_path(p); }

/// Number of subformula nodes; every state and path node counts once.
inline std::size_t formula_size(const StateFormulaPtr& f);

inline std::size_t formula_size(const PathFormulaPtr& p) {
  std::size_t n = 1 + formula_size(p->left);
  if (p->right) n += formula_size(p->right);
  return n;
}

inline std::size_t formula_size(const StateFormulaPtr& f) {
  std::size_t n = 1;
  if (f->left) n += formula_size(f->left);
  if (f->right) n += formula_size(f->right);
  if (f->path) n += formula_size(f->path);
  return n;
}

// ---------------------------------------------------------------------------
// Well-formedness classes. A formula is either plain PoCTL (no path
// quantifiers) or plain CTL (no possibility bounds, no bounded until);
// mixed trees belong to neither.
// ---------------------------------------------------------------------------

namespace detail {

inline bool any_node(const StateFormulaPtr& f, bool (*state_pred)(const StateFormula&),
                     bool (*path_pred)(const PathFormula&)) {
  if (!f) return false;
  if (state_pred(*f)) return true;
  if (f->path) {
    if (path_pred(*f->path)) return true;
    if (any_node(f->path->left, state_pred, path_pred)) return true;
    if (any_node(f->path->right, state_pred, path_pred)) return true;
  }
  return any_node(f->left, state_pred, path_pred) || any_node(f->right, state_pred, path_pred);
}

}  // namespace detail

inline bool is_poctl_formula(const StateFormulaPtr& f) {
  return !detail::any_node(
      f, [](const StateFormula& s) { return s.kind == StateKind::Exists || s.kind == StateKind::Forall; },
      [](const PathFormula&) { return false; });
}

inline bool is_ctl_formula(const StateFormulaPtr& f) {
  return !detail::any_node(
      f, [](const StateFormula& s) { return s.kind == StateKind::Po; },
      [](const PathFormula& p) { return p.kind == PathKind::BoundedUntil; });
}

}  // namespace poctl
