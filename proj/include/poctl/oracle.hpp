#pragma once

#include <functional>
#include <vector>

#include "poctl/formula.hpp"
#include "poctl/kripke.hpp"

namespace poctl {

/// Enumeration depth limits. Zero means "use the state count", which is
/// always enough for exact answers: a best until witness is loop-free in its
/// open segment, and a best infinite witness is a lasso with loop-free stem
/// and simple cycle.
struct OracleBudget {
  std::size_t max_stem = 0;
  std::size_t max_cycle = 0;
  std::size_t max_prefix = 0;
};

/// A possibility value plus whether the enumeration provably covered every
/// witness. With budgets below the exactness threshold the value is only a
/// lower bound.
struct OracleValue {
  Possibility value;
  bool exact = true;
};

/// Resolves state subformulae of a path formula to their satisfaction sets.
using StateResolver = std::function<StateSet(const StateFormulaPtr&)>;

enum class RepetitionMode { RepeatedReachability, Persistence };

namespace detail {

// Enumerates witnesses of "C until B" from s: positions 0..hit-1 lie in
// C minus B (distinct, since cutting a loop never lowers a min), position
// hit lies in B, hit <= max_pos. The witness value is the min over its
// transitions; the initial degree is 1 because the measure is taken in the
// structure rebased to s.
class UntilSearch {
 public:
  UntilSearch(const PossibilisticKripkeStructure& m, const StateSet& open, const StateSet& target,
              std::size_t max_pos)
      : m_(m), open_(open), target_(target), max_pos_(max_pos), on_path_(m.state_count(), false) {}

  Possibility run(std::size_t s) {
    if (target_[s]) return Possibility::one();
    if (!open_[s] || max_pos_ == 0) return Possibility::zero();
    on_path_[s] = true;
    walk(s, Possibility::one(), 0);
    return best_;
  }

 private:
  void walk(std::size_t u, Possibility cur, std::size_t pos) {
    for (std::size_t t = 0; t < m_.state_count(); ++t) {
      const Possibility& p = m_.transitions.at(u, t);
      if (p.is_zero()) continue;
      const Possibility v = std::min(cur, p);
      if (v <= best_) continue;  // extending can only lower the min
      if (target_[t]) best_ = v;
      if (open_[t] && !on_path_[t] && pos + 1 < max_pos_) {
        on_path_[t] = true;
        walk(t, v, pos + 1);
        on_path_[t] = false;
      }
    }
  }

  const PossibilisticKripkeStructure& m_;
  const StateSet& open_;
  const StateSet& target_;
  std::size_t max_pos_;
  std::vector<bool> on_path_;
  Possibility best_;
};

// Enumerates lassos from s whose stem and cycle opening form a simple path:
// every lasso value is matched by one of this shape (truncate the stem at
// its first meeting with the cycle and rotate the cycle there). The stem is
// confined to `stem_domain`; a closing edge is accepted when `cycle_ok`
// approves the cycle states.
class LassoSearch {
 public:
  template <typename CycleOk>
  static OracleValue run(const PossibilisticKripkeStructure& m, std::size_t s,
                         const StateSet& stem_domain, std::size_t max_stem, std::size_t max_cycle,
                         CycleOk cycle_ok) {
    LassoSearch search(m, stem_domain, max_stem, max_cycle);
    if (!stem_domain[s]) return {Possibility::zero(), true};
    search.stack_.push_back(s);
    search.pos_of_[s] = 0;
    search.walk(s, Possibility::one(), cycle_ok);
    return {search.best_, !search.truncated_};
  }

 private:
  LassoSearch(const PossibilisticKripkeStructure& m, const StateSet& domain, std::size_t max_stem,
              std::size_t max_cycle)
      : m_(m),
        domain_(domain),
        max_stem_(max_stem),
        max_cycle_(max_cycle),
        pos_of_(m.state_count(), npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  template <typename CycleOk>
  void walk(std::size_t u, Possibility cur, CycleOk cycle_ok) {
    for (std::size_t t = 0; t < m_.state_count(); ++t) {
      const Possibility& p = m_.transitions.at(u, t);
      if (p.is_zero() || !domain_[t]) continue;
      const Possibility v = std::min(cur, p);
      if (v <= best_) continue;
      if (pos_of_[t] != npos) {
        const std::size_t head = pos_of_[t];
        const std::size_t cycle_len = stack_.size() - head;
        if (head > max_stem_ || cycle_len > max_cycle_) {
          truncated_ = true;
          continue;
        }
        if (cycle_ok(stack_, head)) best_ = v;
      } else if (stack_.size() < max_stem_ + max_cycle_) {
        pos_of_[t] = stack_.size();
        stack_.push_back(t);
        walk(t, v, cycle_ok);
        stack_.pop_back();
        pos_of_[t] = npos;
      } else {
        truncated_ = true;
      }
    }
  }

  const PossibilisticKripkeStructure& m_;
  const StateSet& domain_;
  std::size_t max_stem_;
  std::size_t max_cycle_;
  std::vector<std::size_t> stack_;
  std::vector<std::size_t> pos_of_;
  Possibility best_;
  bool truncated_ = false;
};

inline std::size_t budget_or(std::size_t requested, std::size_t fallback) {
  return requested == 0 ? fallback : requested;
}

}  // namespace detail

/// Brute-force possibility of a path formula at a state, by enumeration of
/// prefix witnesses (until) or lasso witnesses (always). State subformulae
/// are resolved through the supplied resolver, keeping the enumeration
/// independent of the matrix-based checker.
inline OracleValue oracle_po(const PossibilisticKripkeStructure& m, std::size_t s,
                             const PathFormulaPtr& phi, const StateResolver& resolve,
                             OracleBudget budget = {}) {
  const std::size_t n = m.state_count();
  switch (phi->kind) {
    case PathKind::Next: {
      const StateSet target = resolve(phi->left);
      Possibility best;
      for (std::size_t t = 0; t < n; ++t)
        if (target[t]) best = std::max(best, m.transitions.at(s, t));
      return {best, true};
    }
    case PathKind::Until:
    case PathKind::BoundedUntil: {
      const StateSet c = resolve(phi->left);
      const StateSet b = resolve(phi->right);
      StateSet open(n);
      std::size_t open_count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        open[i] = c[i] && !b[i];
        open_count += open[i];
      }
      std::size_t max_pos = detail::budget_or(budget.max_prefix, n);
      std::size_t needed = open_count;  // a loop-free witness hits B by |open|
      if (phi->kind == PathKind::BoundedUntil) {
        max_pos = std::min<std::size_t>(max_pos, phi->bound);
        needed = std::min<std::size_t>(needed, phi->bound);
      }
      detail::UntilSearch search(m, open, b, max_pos);
      return {search.run(s), max_pos >= needed};
    }
    case PathKind::Always: {
      const StateSet b = resolve(phi->left);
      return detail::LassoSearch::run(
          m, s, b, detail::budget_or(budget.max_stem, n), detail::budget_or(budget.max_cycle, n),
          [](const std::vector<std::size_t>&, std::size_t) { return true; });
    }
  }
  throw std::logic_error("unreachable path kind");
}

/// Brute-force possibility of the repeated-reachability event (some B-state
/// recurs forever) or the persistence event (eventually only B-states):
/// the best lasso whose cycle intersects B, respectively lies inside B.
inline OracleValue oracle_repeated(const PossibilisticKripkeStructure& m, std::size_t s,
                                   const StateSet& b, RepetitionMode mode,
                                   OracleBudget budget = {}) {
  const std::size_t n = m.state_count();
  const StateSet everywhere(n, true);
  return detail::LassoSearch::run(
      m, s, everywhere, detail::budget_or(budget.max_stem, n),
      detail::budget_or(budget.max_cycle, n),
      [&](const std::vector<std::size_t>& stack, std::size_t head) {
        if (mode == RepetitionMode::RepeatedReachability) {
          for (std::size_t i = head; i < stack.size(); ++i)
            if (b[stack[i]]) return true;
          return false;
        }
        for (std::size_t i = head; i < stack.size(); ++i)
          if (!b[stack[i]]) return false;
        return true;
      });
}

/// Satisfaction set computed entirely by enumeration: possibility-bounded
/// subformulae are resolved state by state through oracle_po.
inline StateSet oracle_sat(const PossibilisticKripkeStructure& m, const StateFormulaPtr& f,
                           OracleBudget budget = {}) {
  const std::size_t n = m.state_count();
  switch (f->kind) {
    case StateKind::True:
      return StateSet(n, true);
    case StateKind::Atom: {
      if (!m.atomic_props.count(f->atom))
        throw std::invalid_argument("atomic proposition '" + f->atom +
                                    "' is not declared by the model");
      StateSet out(n, false);
      for (std::size_t i = 0; i < n; ++i) out[i] = m.labels[i].count(f->atom) > 0;
      return out;
    }
    case StateKind::Not: {
      StateSet out = oracle_sat(m, f->left, budget);
      out.flip();
      return out;
    }
    case StateKind::And: {
      StateSet l = oracle_sat(m, f->left, budget);
      const StateSet r = oracle_sat(m, f->right, budget);
      for (std::size_t i = 0; i < n; ++i) l[i] = l[i] && r[i];
      return l;
    }
    case StateKind::Po: {
      const StateResolver resolve = [&](const StateFormulaPtr& sub) {
        return oracle_sat(m, sub, budget);
      };
      StateSet out(n, false);
      for (std::size_t s = 0; s < n; ++s)
        out[s] = f->bound->contains(oracle_po(m, s, f->path, resolve, budget).value);
      return out;
    }
    case StateKind::Exists:
    case StateKind::Forall:
      throw std::invalid_argument("CTL path quantifier in a PoCTL formula");
  }
  throw std::logic_error("unreachable state kind");
}

}  // namespace poctl
