#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "poctl/errors.hpp"
#include "poctl/fuzzy.hpp"

namespace poctl {

/// Subset of states, indexed in declaration order.
using StateSet = std::vector<bool>;

/// A possibilistic Kripke structure: finitely many named states, a fuzzy
/// transition matrix, a fuzzy initial distribution, and a crisp labeling.
/// Validity (normal rows, normal initial distribution, labels drawn from
/// the declared propositions) is checked by validate(), not enforced here.
struct PossibilisticKripkeStructure {
  std::vector<std::string> states;
  FuzzyMatrix transitions;
  PossibilityVector initial;
  std::set<std::string> atomic_props;
  std::vector<std::set<std::string>> labels;

  std::size_t state_count() const { return states.size(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return i;
    return std::nullopt;
  }

  std::size_t state_index(std::string_view name) const {
    if (const auto i = index_of(name)) return *i;
    throw std::invalid_argument("unknown state '" + std::string(name) + "'");
  }
};

/// Crisp transition system; derived from a possibilistic structure by
/// thresholding. May contain terminal states when derived from an alpha cut.
struct TransitionSystem {
  std::vector<std::string> states;
  std::vector<std::vector<std::size_t>> successors;  // sorted per state
  StateSet initial;
  std::set<std::string> atomic_props;
  std::vector<std::set<std::string>> labels;

  std::size_t state_count() const { return states.size(); }

  bool has_edge(std::size_t from, std::size_t to) const {
    return std::binary_search(successors[from].begin(), successors[from].end(), to);
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : successors) n += s.size();
    return n;
  }

  std::vector<std::size_t> terminal_states() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < successors.size(); ++i)
      if (successors[i].empty()) out.push_back(i);
    return out;
  }
};

/// Ultimately periodic path: the states of `stem` followed by the states of
/// `cycle` repeated forever. The cycle must be nonempty; the stem may be
/// empty, in which case the path starts at the head of the cycle.
struct Lasso {
  std::vector<std::string> stem;
  std::vector<std::string> cycle;
};

/// Checks the two normality conditions and the labeling closure; returns one
/// message per violation (empty list means the structure is valid).
inline std::vector<std::string> validate(const PossibilisticKripkeStructure& m) {
  std::vector<std::string> violations;
  const std::size_t n = m.state_count();
  if (n == 0) {
    violations.push_back("no states declared");
    return violations;
  }
  if (m.transitions.dim() != n)
    violations.push_back("transition matrix dimension " + std::to_string(m.transitions.dim()) +
                         " does not match state count " + std::to_string(n));
  if (m.initial.dim() != n)
    violations.push_back("initial distribution dimension " + std::to_string(m.initial.dim()) +
                         " does not match state count " + std::to_string(n));
  if (m.labels.size() != n)
    violations.push_back("labeling has " + std::to_string(m.labels.size()) + " entries for " +
                         std::to_string(n) + " states");
  if (!violations.empty()) return violations;

  for (std::size_t i = 0; i < n; ++i) {
    Possibility row_max;
    for (std::size_t j = 0; j < n; ++j) row_max = std::max(row_max, m.transitions.at(i, j));
    if (!row_max.is_one())
      violations.push_back("row normality at state " + m.states[i] + " (max " + row_max.str() +
                           ")");
  }
  Possibility init_max;
  for (std::size_t i = 0; i < n; ++i) init_max = std::max(init_max, m.initial[i]);
  if (!init_max.is_one())
    violations.push_back("initial normality (max " + init_max.str() + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& a : m.labels[i])
      if (!m.atomic_props.count(a))
        violations.push_back("label '" + a + "' at state " + m.states[i] +
                             " is not a declared atomic proposition");
  return violations;
}

/// Same structure with `s` as the unique initial state.
inline PossibilisticKripkeStructure rebase_initial(const PossibilisticKripkeStructure& m,
                                                   std::string_view s) {
  const std::size_t idx = m.state_index(s);
  PossibilisticKripkeStructure out = m;
  out.initial = PossibilityVector(m.state_count());
  out.initial[idx] = Possibility::one();
  return out;
}

/// Same structure with the transition matrix replaced by its transitive
/// closure.
inline PossibilisticKripkeStructure plus_structure(const PossibilisticKripkeStructure& m) {
  PossibilisticKripkeStructure out = m;
  out.transitions = transitive_closure(m.transitions);
  return out;
}

namespace detail {

inline TransitionSystem cut_ts(const PossibilisticKripkeStructure& m,
                               const Possibility& threshold) {
  TransitionSystem ts;
  ts.states = m.states;
  ts.atomic_props = m.atomic_props;
  ts.labels = m.labels;
  const std::size_t n = m.state_count();
  ts.successors.resize(n);
  ts.initial.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (m.transitions.at(i, j) >= threshold) ts.successors[i].push_back(j);
    if (m.initial[i] >= threshold) ts.initial[i] = true;
  }
  return ts;
}

}  // namespace detail

/// Underlying transition system: an edge wherever the transition possibility
/// is positive, an initial state wherever the initial degree is positive.
inline TransitionSystem underlying_ts(const PossibilisticKripkeStructure& m) {
  // Row normality gives every state a positive successor, so the underlying
  // system of a valid structure has no terminal state.
  TransitionSystem ts;
  ts.states = m.states;
  ts.atomic_props = m.atomic_props;
  ts.labels = m.labels;
  const std::size_t n = m.state_count();
  ts.successors.resize(n);
  ts.initial.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (!m.transitions.at(i, j).is_zero()) ts.successors[i].push_back(j);
    if (!m.initial[i].is_zero()) ts.initial[i] = true;
  }
  return ts;
}

/// Alpha-cut transition system: keeps transitions with possibility >= alpha
/// and initial states with initial degree >= alpha. The cut may contain
/// terminal states; CTL evaluation over cuts therefore ranges over infinite
/// paths only.
inline TransitionSystem alpha_cut_ts(const PossibilisticKripkeStructure& m,
                                     const Possibility& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("alpha cut requires alpha in (0,1]");
  return detail::cut_ts(m, alpha);
}

/// Possibility of the cylinder set of a finite path fragment: the initial
/// degree of its first state min-ed with every step possibility.
inline Possibility cylinder_possibility(const PossibilisticKripkeStructure& m,
                                        const std::vector<std::string>& path) {
  if (path.empty()) throw std::invalid_argument("cylinder of an empty path fragment");
  std::vector<std::size_t> idx;
  idx.reserve(path.size());
  for (const auto& s : path) idx.push_back(m.state_index(s));
  Possibility value = m.initial[idx.front()];
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    value = std::min(value, m.transitions.at(idx[i], idx[i + 1]));
  return value;
}

/// Possibility of the infinite path denoted by a lasso. The infinite min
/// ranges over finitely many distinct transitions: the stem steps, the cycle
/// steps, and the wrap-around step.
inline Possibility lasso_possibility(const PossibilisticKripkeStructure& m, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw std::invalid_argument("lasso with empty cycle");
  std::vector<std::size_t> idx;
  for (const auto& s : lasso.stem) idx.push_back(m.state_index(s));
  for (const auto& s : lasso.cycle) idx.push_back(m.state_index(s));
  const std::size_t cycle_head = lasso.stem.size();
  Possibility value = m.initial[idx.front()];
  auto step = [&](std::size_t from, std::size_t to) {
    const Possibility& p = m.transitions.at(from, to);
    if (p.is_zero())
      throw std::invalid_argument("lasso uses zero-possibility transition " + m.states[from] +
                                  " -> " + m.states[to]);
    value = std::min(value, p);
  };
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) step(idx[i], idx[i + 1]);
  step(idx.back(), idx[cycle_head]);
  return value;
}

/// Constructive witness that a valid structure has a possibility-1 path:
/// start at the lexicographically smallest state with initial degree 1 and
/// greedily follow the lexicographically smallest possibility-1 successor
/// until a state repeats.
inline Lasso possibility_one_lasso(const PossibilisticKripkeStructure& m) {
  const std::size_t n = m.state_count();
  std::optional<std::size_t> start;
  for (std::size_t i = 0; i < n; ++i)
    if (m.initial[i].is_one() && (!start || m.states[i] < m.states[*start])) start = i;
  if (!start) throw std::invalid_argument("no state with initial possibility 1");

  std::vector<std::size_t> walk{*start};
  std::vector<std::optional<std::size_t>> seen_at(n);
  seen_at[*start] = 0;
  for (;;) {
    const std::size_t cur = walk.back();
    std::optional<std::size_t> next;
    for (std::size_t j = 0; j < n; ++j)
      if (m.transitions.at(cur, j).is_one() && (!next || m.states[j] < m.states[*next])) next = j;
    if (!next) throw std::invalid_argument("row without possibility-1 successor at state " +
                                           m.states[cur]);
    if (seen_at[*next]) {
      const std::size_t head = *seen_at[*next];
      Lasso lasso;
      for (std::size_t i = 0; i < head; ++i) lasso.stem.push_back(m.states[walk[i]]);
      for (std::size_t i = head; i < walk.size(); ++i) lasso.cycle.push_back(m.states[walk[i]]);
      return lasso;
    }
    seen_at[*next] = walk.size();
    walk.push_back(*next);
  }
}

// ---------------------------------------------------------------------------
// Model file format (line oriented, '#' starts a comment):
//
//   states: s1 s2 ... sN
//   init: s=value ...
//   label: s = {a, b}
//   trans: s -> t = value
//
// Omitted initial entries and transition pairs are 0; omitted label lines are
// empty sets. Values are decimal literals with up to nine fractional digits.
// ---------------------------------------------------------------------------

namespace detail {

struct LineToken {
  std::string text;
  std::size_t column;
  bool is_symbol;
};

inline std::vector<LineToken> lex_model_line(const std::string& line, std::size_t lineno) {
  std::vector<LineToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (c == '=' || c == '{' || c == '}' || c == ',' || c == ':') {
      out.push_back({std::string(1, c), col, true});
      ++i;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", col, true});
      i += 2;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) ||
                                 line[j] == '_' || line[j] == '.'))
        ++j;
      out.push_back({line.substr(i, j - i), col, false});
      i = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in model file", lineno, col);
    }
  }
  return out;
}

class ModelLineReader {
 public:
  ModelLineReader(std::vector<LineToken> tokens, std::size_t lineno)
      : tokens_(std::move(tokens)), lineno_(lineno) {}

  bool done() const { return pos_ >= tokens_.size(); }

  const LineToken& take(const char* what) {
    if (done()) throw ParseError(std::string("expected ") + what, lineno_, 0);
    return tokens_[pos_++];
  }

  std::string take_name(const char* what) {
    const auto& t = take(what);
    if (t.is_symbol) throw ParseError(std::string("expected ") + what, lineno_, t.column);
    return t.text;
  }

  void take_symbol(const char* sym) {
    const auto& t = take(sym);
    if (!t.is_symbol || t.text != sym)
      throw ParseError(std::string("expected '") + sym + "'", lineno_, t.column);
  }

  bool peek_symbol(const char* sym) const {
    return pos_ < tokens_.size() && tokens_[pos_].is_symbol && tokens_[pos_].text == sym;
  }

  Possibility take_value() {
    const auto& t = take("value");
    try {
      return Possibility::parse(t.text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno_, t.column);
    }
  }

  void expect_end() {
    if (!done())
      throw ParseError("trailing tokens after directive", lineno_, tokens_[pos_].column);
  }

  std::size_t lineno() const { return lineno_; }

 private:
  std::vector<LineToken> tokens_;
  std::size_t lineno_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the model file format above. Throws ParseError on malformed input;
/// normality is not checked here (see validate()).
inline PossibilisticKripkeStructure parse_model(std::string_view text) {
  PossibilisticKripkeStructure m;
  std::map<std::string, std::size_t> index;
  std::vector<bool> labeled;
  std::vector<std::vector<bool>> trans_seen;
  bool have_states = false;
  bool have_init = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tokens = detail::lex_model_line(raw, lineno);
    if (tokens.empty()) continue;
    detail::ModelLineReader r(std::move(tokens), lineno);
    const std::string directive = r.take_name("directive");
    r.take_symbol(":");

    if (directive == "states") {
      if (have_states) throw ParseError("duplicate states line", lineno, 0);
      have_states = true;
      while (!r.done()) {
        const std::string name = r.take_name("state name");
        if (index.count(name)) throw ParseError("duplicate state '" + name + "'", lineno, 0);
        index[name] = m.states.size();
        m.states.push_back(name);
      }
      if (m.states.empty()) throw ParseError("states line declares no states", lineno, 0);
      const std::size_t n = m.states.size();
      m.transitions = FuzzyMatrix(n);
      m.initial = PossibilityVector(n);
      m.labels.assign(n, {});
      labeled.assign(n, false);
      trans_seen.assign(n, std::vector<bool>(n, false));
      continue;
    }

    if (!have_states)
      throw ParseError("'" + directive + "' before the states line", lineno, 0);
    auto lookup = [&](const std::string& name) -> std::size_t {
      const auto it = index.find(name);
      if (it == index.end()) throw ParseError("unknown state '" + name + "'", lineno, 0);
      return it->second;
    };

    if (directive == "init") {
      if (have_init) throw ParseError("duplicate init line", lineno, 0);
      have_init = true;
      while (!r.done()) {
        const std::size_t s = lookup(r.take_name("state name"));
        r.take_symbol("=");
        m.initial[s] = r.take_value();
      }
    } else if (directive == "label") {
      const std::size_t s = lookup(r.take_name("state name"));
      if (labeled[s])
        throw ParseError("duplicate label line for state '" + m.states[s] + "'", lineno, 0);
      labeled[s] = true;
      r.take_symbol("=");
      r.take_symbol("{");
      if (!r.peek_symbol("}")) {
        for (;;) {
          const std::string a = r.take_name("atomic proposition");
          m.labels[s].insert(a);
          m.atomic_props.insert(a);
          if (r.peek_symbol(",")) {
            r.take_symbol(",");
            continue;
          }
          break;
        }
      }
      r.take_symbol("}");
      r.expect_end();
    } else if (directive == "trans") {
      const std::size_t from = lookup(r.take_name("state name"));
      r.take_symbol("->");
      const std::size_t to = lookup(r.take_name("state name"));
      r.take_symbol("=");
      if (trans_seen[from][to])
        throw ParseError("duplicate transition " + m.states[from] + " -> " + m.states[to], lineno,
                         0);
      trans_seen[from][to] = true;
      m.transitions.at(from, to) = r.take_value();
      r.expect_end();
    } else {
      throw ParseError("unknown directive '" + directive + "'", lineno, 0);
    }
  }
  if (!have_states) throw ParseError("missing states line", lineno ? lineno : 1, 0);
  if (!have_init) throw ParseError("missing init line", lineno, 0);
  return m;
}

/// Loads and parses a model file from disk.
inline PossibilisticKripkeStructure load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace poctl
