#pragma once

#include <map>
#include <string>
#include <vector>

#include "poctl/enf.hpp"
#include "poctl/formula.hpp"
#include "poctl/kripke.hpp"

namespace poctl {

inline StateSet full_set(std::size_t n) { return StateSet(n, true); }
inline StateSet empty_set(std::size_t n) { return StateSet(n, false); }

inline StateSet set_complement(const StateSet& s) {
  StateSet out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = !s[i];
  return out;
}

inline StateSet set_intersect(const StateSet& a, const StateSet& b) {
  StateSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

inline StateSet set_union(const StateSet& a, const StateSet& b) {
  StateSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

inline std::size_t set_count(const StateSet& s) {
  std::size_t n = 0;
  for (const bool b : s) n += b;
  return n;
}

inline PossibilityVector characteristic_vector(const StateSet& s) {
  PossibilityVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) v[i] = Possibility::one();
  return v;
}

/// Restriction of a matrix to rows and columns inside `keep`; everything
/// else is zeroed.
inline FuzzyMatrix restrict_matrix(const FuzzyMatrix& m, const StateSet& keep) {
  FuzzyMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (keep[j]) out.at(i, j) = m.at(i, j);
  }
  return out;
}

/// Partition of the state space for until computations: states whose until
/// possibility is known to be 1, known to be 0, and the rest.
struct UntilPartition {
  StateSet eq_one;
  StateSet eq_zero;
  StateSet unknown;
};

/// The canonical legal partition for "C until B": exactly B is 1, everything
/// outside C and B is 0, and C minus B remains open.
inline UntilPartition default_partition(const PossibilisticKripkeStructure& m, const StateSet& c,
                                        const StateSet& b) {
  const std::size_t n = m.state_count();
  UntilPartition part{b, empty_set(n), empty_set(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i]) continue;
    if (c[i])
      part.unknown[i] = true;
    else
      part.eq_zero[i] = true;
  }
  return part;
}

/// Per-state possibility of "some successor in B next": the transition
/// matrix applied to the characteristic vector of B.
inline PossibilityVector po_next(const PossibilisticKripkeStructure& m, const StateSet& b) {
  return apply(m.transitions, characteristic_vector(b));
}

namespace detail {

// Shared tail of the until computations. For open states the value is
//   max over t of closure(s,t) ^ max over u in target of P(t,u),
// where the closure ranges over paths confined to the open block: a best
// witness leaves the open block exactly once, into the target.
inline PossibilityVector until_from_closure(const PossibilisticKripkeStructure& m,
                                            const UntilPartition& part,
                                            const FuzzyMatrix& open_closure,
                                            const StateSet& target) {
  const std::size_t n = m.state_count();
  const PossibilityVector entry = apply(m.transitions, characteristic_vector(target));
  const PossibilityVector open_values = apply(open_closure, entry);
  PossibilityVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (part.eq_one[i])
      out[i] = Possibility::one();
    else if (part.unknown[i])
      out[i] = open_values[i];
  }
  return out;
}

}  // namespace detail

/// Per-state possibility of "C until B" under an explicit partition. The
/// open block uses the reflexive transitive closure of the transition matrix
/// restricted to that block, then one step into the eq-one region.
inline PossibilityVector po_until(const PossibilisticKripkeStructure& m, const UntilPartition& part) {
  const FuzzyMatrix open = restrict_matrix(m.transitions, part.unknown);
  return detail::until_from_closure(m, part, reflexive_transitive_closure(open), part.eq_one);
}

/// Per-state possibility of "C until B" with the default partition.
inline PossibilityVector po_until(const PossibilisticKripkeStructure& m, const StateSet& c,
                                  const StateSet& b) {
  return po_until(m, default_partition(m, c, b));
}

/// Per-state possibility of "C until B within n steps". A state of the open
/// block needs a first hit of B at position 1..n, i.e. up to n-1 steps inside
/// the open block followed by one step into B; n = 0 satisfies exactly B.
inline PossibilityVector po_bounded_until(const PossibilisticKripkeStructure& m, const StateSet& c,
                                          const StateSet& b, std::size_t n) {
  const UntilPartition part = default_partition(m, c, b);
  if (n == 0) return characteristic_vector(b);
  const FuzzyMatrix open = restrict_matrix(m.transitions, part.unknown);
  return detail::until_from_closure(m, part, bounded_closure(open, n - 1), b);
}

/// Per-state possibility of "always B". Restricted to B, the best witness is
/// a lasso: a path inside B to some anchor state followed by a cycle inside B
/// through that anchor, so the value at s is
///   max over t in B of  closure(s,t) ^ cycle(t)
/// with closure the reflexive transitive closure of P restricted to B and
/// cycle(t) the diagonal of its transitive closure. States outside B get 0.
inline PossibilityVector po_always(const PossibilisticKripkeStructure& m, const StateSet& b) {
  const std::size_t n = m.state_count();
  const FuzzyMatrix inside = restrict_matrix(m.transitions, b);
  const FuzzyMatrix reach = reflexive_transitive_closure(inside);
  const FuzzyMatrix cycles = compose(inside, reach);
  PossibilityVector best_cycle(n);
  for (std::size_t i = 0; i < n; ++i)
    if (b[i]) best_cycle[i] = cycles.at(i, i);
  PossibilityVector out = apply(reach, best_cycle);
  for (std::size_t i = 0; i < n; ++i)
    if (!b[i]) out[i] = Possibility::zero();
  return out;
}

/// States whose value lies in the comparison set.
inline StateSet check_bound(const PossibilityVector& v, const Interval& bound) {
  StateSet out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = bound.contains(v[i]);
  return out;
}

/// Result of a satisfaction check: the satisfaction set of the root formula
/// plus, for every possibility-bounded subformula (keyed by its printed
/// form), the full per-state possibility vector it was filtered from.
struct CheckResult {
  StateSet sat;
  std::map<std::string, PossibilityVector> po_values;
};

namespace detail {

class SatEvaluator {
 public:
  explicit SatEvaluator(const PossibilisticKripkeStructure& m) : m_(m) {}

  StateSet eval(const StateFormulaPtr& f) {
    const std::string key = poctl::to_string(f);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    StateSet out;
    switch (f->kind) {
      case StateKind::True:
        out = full_set(m_.state_count());
        break;
      case StateKind::Atom: {
        if (!m_.atomic_props.count(f->atom))
          throw std::invalid_argument("atomic proposition '" + f->atom +
                                      "' is not declared by the model");
        out = empty_set(m_.state_count());
        for (std::size_t i = 0; i < m_.state_count(); ++i)
          out[i] = m_.labels[i].count(f->atom) > 0;
        break;
      }
      case StateKind::Not:
        out = set_complement(eval(f->left));
        break;
      case StateKind::And:
        out = set_intersect(eval(f->left), eval(f->right));
        break;
      case StateKind::Po: {
        const PossibilityVector v = eval_path(f->path);
        out = check_bound(v, *f->bound);
        po_values.emplace(key, v);
        break;
      }
      case StateKind::Exists:
      case StateKind::Forall:
        throw std::invalid_argument("CTL path quantifier in a PoCTL formula");
    }
    memo_.emplace(key, out);
    return out;
  }

  std::map<std::string, PossibilityVector> po_values;

 private:
  PossibilityVector eval_path(const PathFormulaPtr& p) {
    switch (p->kind) {
      case PathKind::Next:
        return po_next(m_, eval(p->left));
      case PathKind::Until:
        return po_until(m_, eval(p->left), eval(p->right));
      case PathKind::BoundedUntil:
        return po_bounded_until(m_, eval(p->left), eval(p->right), p->bound);
      case PathKind::Always:
        return po_always(m_, eval(p->left));
    }
    throw std::logic_error("unreachable path kind");
  }

  const PossibilisticKripkeStructure& m_;
  std::map<std::string, StateSet> memo_;
};

}  // namespace detail

/// Satisfaction set of a PoCTL state formula, by bottom-up traversal of the
/// parse tree with memoization of duplicate subformulae.
inline CheckResult sat(const PossibilisticKripkeStructure& m, const StateFormulaPtr& f) {
  detail::SatEvaluator ev(m);
  CheckResult result;
  result.sat = ev.eval(f);
  result.po_values = std::move(ev.po_values);
  return result;
}

namespace detail {

// Classical CTL fixpoint evaluation over a transition system whose path
// semantics ranges over infinite paths only. `live` is the set of states
// with at least one infinite path; on systems without terminal states it is
// everything, on alpha cuts it prunes dead ends.
class CtlEvaluator {
 public:
  explicit CtlEvaluator(const TransitionSystem& ts) : ts_(ts), live_(greatest_live_set(ts)) {}

  StateSet eval(const StateFormulaPtr& f) {
    const std::size_t n = ts_.state_count();
    switch (f->kind) {
      case StateKind::True:
        return full_set(n);
      case StateKind::Atom: {
        if (!ts_.atomic_props.count(f->atom))
          throw std::invalid_argument("atomic proposition '" + f->atom +
                                      "' is not declared by the model");
        StateSet out = empty_set(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = ts_.labels[i].count(f->atom) > 0;
        return out;
      }
      case StateKind::Not:
        return set_complement(eval(f->left));
      case StateKind::And:
        return set_intersect(eval(f->left), eval(f->right));
      case StateKind::Exists:
        switch (f->path->kind) {
          case PathKind::Next:
            return exists_next(set_intersect(eval(f->path->left), live_));
          case PathKind::Until:
            return exists_until(eval(f->path->left), eval(f->path->right));
          case PathKind::Always:
            return exists_always(eval(f->path->left));
          case PathKind::BoundedUntil:
            break;
        }
        throw std::invalid_argument("bounded until in a CTL formula");
      case StateKind::Forall:
      case StateKind::Po:
        break;
    }
    throw std::invalid_argument("CTL evaluation expects an ENF formula");
  }

 private:
  static StateSet greatest_live_set(const TransitionSystem& ts) {
    StateSet live = full_set(ts.state_count());
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < ts.state_count(); ++i) {
        if (!live[i]) continue;
        bool keeps = false;
        for (const std::size_t j : ts.successors[i]) keeps = keeps || live[j];
        if (!keeps) {
          live[i] = false;
          changed = true;
        }
      }
    }
    return live;
  }

  StateSet exists_next(const StateSet& target) const {
    StateSet out = empty_set(ts_.state_count());
    for (std::size_t i = 0; i < ts_.state_count(); ++i)
      for (const std::size_t j : ts_.successors[i])
        if (target[j]) {
          out[i] = true;
          break;
        }
    return out;
  }

  // Least fixed point: start from B restricted to live states, add C-states
  // with a successor already inside.
  StateSet exists_until(const StateSet& c, const StateSet& b) const {
    StateSet reach = set_intersect(b, live_);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < ts_.state_count(); ++i) {
        if (reach[i] || !c[i]) continue;
        for (const std::size_t j : ts_.successors[i])
          if (reach[j]) {
            reach[i] = true;
            changed = true;
            break;
          }
      }
    }
    return reach;
  }

  // Greatest fixed point: keep B-states with a successor still kept.
  StateSet exists_always(const StateSet& b) const {
    StateSet keep = b;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < ts_.state_count(); ++i) {
        if (!keep[i]) continue;
        bool ok = false;
        for (const std::size_t j : ts_.successors[i]) ok = ok || keep[j];
        if (!ok) {
          keep[i] = false;
          changed = true;
        }
      }
    }
    return keep;
  }

  const TransitionSystem& ts_;
  StateSet live_;
};

}  // namespace detail

/// Satisfaction set of a CTL state formula over a transition system,
/// computed by fixpoint iteration on the existential normal form. Path
/// quantifiers range over infinite paths, so terminal-only states satisfy
/// no existential path formula.
inline StateSet ctl_sat(const TransitionSystem& ts, const StateFormulaPtr& f) {
  detail::CtlEvaluator ev(ts);
  return ev.eval(to_enf(f));
}

}  // namespace poctl
