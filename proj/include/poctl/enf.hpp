#pragma once

#include <stdexcept>

#include "poctl/formula.hpp"

namespace poctl {
namespace detail {

inline StateFormulaPtr smart_not(StateFormulaPtr f) {
  if (f->kind == StateKind::Not) return f->left;
  return make_not(std::move(f));
}

inline StateFormulaPtr enf_state(const StateFormulaPtr& f);

inline PathFormulaPtr enf_path(const PathFormulaPtr& p) {
  switch (p->kind) {
    case PathKind::Next:
      return make_next(enf_state(p->left));
    case PathKind::Until:
      return make_until(enf_state(p->left), enf_state(p->right));
    case PathKind::Always:
      return make_always(enf_state(p->left));
    case PathKind::BoundedUntil:
      break;
  }
  throw std::invalid_argument("bounded until has no CTL normal form");
}

inline StateFormulaPtr enf_state(const StateFormulaPtr& f) {
  switch (f->kind) {
    case StateKind::True:
    case StateKind::Atom:
      return f;
    case StateKind::Not:
      return smart_not(enf_state(f->left));
    case StateKind::And:
      return make_and(enf_state(f->left), enf_state(f->right));
    case StateKind::Exists:
      return make_exists(enf_path(f->path));
    case StateKind::Forall: {
      switch (f->path->kind) {
        case PathKind::Next:
          // A[X p]  ==  !E[X !p]
          return make_not(make_exists(make_next(smart_not(enf_state(f->path->left)))));
        case PathKind::Always:
          // A[G p]  ==  !E[true U !p]
          return make_not(
              make_exists(make_until(make_true(), smart_not(enf_state(f->path->left)))));
        case PathKind::Until: {
          const auto a = enf_state(f->path->left);
          const auto b = enf_state(f->path->right);
          const auto not_b = smart_not(b);
          // A[p U q]  ==  !E[!q U (!p & !q)] & !E[G !q]; the first conjunct
          // vanishes when p is 'true' (no path can reach !p & !q).
          const auto persists = make_not(make_exists(make_always(not_b)));
          if (a->kind == StateKind::True) return persists;
          const auto evades =
              make_not(make_exists(make_until(not_b, make_and(smart_not(a), not_b))));
          return make_and(evades, persists);
        }
        case PathKind::BoundedUntil:
          break;
      }
      throw std::invalid_argument("bounded until has no CTL normal form");
    }
    case StateKind::Po:
      break;
  }
  throw std::invalid_argument("possibility bound in a CTL formula");
}

inline StateFormulaPtr embed_state(const StateFormulaPtr& f, const Interval& exists_bound);

inline PathFormulaPtr embed_path(const PathFormulaPtr& p, const Interval& exists_bound) {
  switch (p->kind) {
    case PathKind::Next:
      return make_next(embed_state(p->left, exists_bound));
    case PathKind::Until:
      return make_until(embed_state(p->left, exists_bound),
                        embed_state(p->right, exists_bound));
    case PathKind::Always:
      return make_always(embed_state(p->left, exists_bound));
    case PathKind::BoundedUntil:
      break;
  }
  throw std::invalid_argument("bounded until cannot appear in an embedded CTL formula");
}

// Rewrites an ENF tree by replacing every E[phi] with Po<bound>[phi]. A
// negated possibility bound folds into the complementary bound, so e.g.
// !Po>0[...] prints as Po=0[...].
inline StateFormulaPtr embed_state(const StateFormulaPtr& f, const Interval& exists_bound) {
  switch (f->kind) {
    case StateKind::True:
    case StateKind::Atom:
      return f;
    case StateKind::And:
      return make_and(embed_state(f->left, exists_bound), embed_state(f->right, exists_bound));
    case StateKind::Not: {
      auto inner = embed_state(f->left, exists_bound);
      if (inner->kind == StateKind::Po)
        if (const auto flipped = inner->bound->complement())
          return make_po(*flipped, inner->path);
      return make_not(std::move(inner));
    }
    case StateKind::Exists:
      return make_po(exists_bound, embed_path(f->path, exists_bound));
    case StateKind::Forall:
    case StateKind::Po:
      break;
  }
  throw std::invalid_argument("embedding expects an ENF formula");
}

}  // namespace detail

/// Rewrites a CTL formula into existential normal form: only true, atoms,
/// conjunction, negation, E[X .], E[. U .] and E[G .] remain.
inline StateFormulaPtr to_enf(const StateFormulaPtr& f) {
  if (!is_ctl_formula(f)) throw std::invalid_argument("to_enf: not a CTL state formula");
  return detail::enf_state(f);
}

/// Equivalent qualitative PoCTL formula: normalize to ENF, then replace every
/// existential quantifier with the bound "possibility greater than zero".
inline StateFormulaPtr embed_ctl(const StateFormulaPtr& f) {
  return detail::embed_state(to_enf(f), Interval::greater_than(Possibility::zero()));
}

/// Alpha-equivalent PoCTL formula: as embed_ctl but with the bound
/// "possibility at least alpha", alpha in (0,1].
inline StateFormulaPtr embed_ctl_alpha(const StateFormulaPtr& f, const Possibility& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("alpha embedding requires alpha in (0,1]");
  return detail::embed_state(to_enf(f), Interval::at_least(alpha));
}

}  // namespace poctl
