#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "poctl/possibility.hpp"

namespace poctl {

/// State-indexed vector of possibility degrees.
class PossibilityVector {
 public:
  PossibilityVector() = default;
  explicit PossibilityVector(std::size_t dim) : entries_(dim) {}
  explicit PossibilityVector(std::vector<Possibility> entries) : entries_(std::move(entries)) {}

  std::size_t dim() const { return entries_.size(); }
  Possibility& operator[](std::size_t i) { return entries_[i]; }
  const Possibility& operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const PossibilityVector&, const PossibilityVector&) = default;

 private:
  std::vector<Possibility> entries_;
};

/// Square fuzzy matrix over possibility degrees, row-major.
class FuzzyMatrix {
 public:
  FuzzyMatrix() = default;
  explicit FuzzyMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

  static FuzzyMatrix identity(std::size_t dim) {
    FuzzyMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = Possibility::one();
    return m;
  }

  std::size_t dim() const { return dim_; }
  Possibility& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Possibility& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  const std::vector<Possibility>& entries() const { return entries_; }

  friend bool operator==(const FuzzyMatrix&, const FuzzyMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Possibility> entries_;
};

namespace detail {

// Compositions and closures run on integer ranks instead of fractions.
// Min, max and comparison only depend on the ordering, and the value set is
// closed under them, so mapping the finitely many distinct values to their
// sorted positions is exact and keeps the O(n^3) kernels integer-only.

inline std::vector<Possibility> value_scale(std::initializer_list<const FuzzyMatrix*> mats) {
  std::vector<Possibility> scale{Possibility::zero(), Possibility::one()};
  for (const auto* m : mats)
    scale.insert(scale.end(), m->entries().begin(), m->entries().end());
  std::sort(scale.begin(), scale.end());
  scale.erase(std::unique(scale.begin(), scale.end()), scale.end());
  return scale;
}

inline std::int32_t rank_of(const Possibility& v, const std::vector<Possibility>& scale) {
  return static_cast<std::int32_t>(std::lower_bound(scale.begin(), scale.end(), v) - scale.begin());
}

inline std::vector<std::int32_t> to_ranks(const FuzzyMatrix& m,
                                          const std::vector<Possibility>& scale) {
  std::vector<std::int32_t> out(m.dim() * m.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rank_of(m.entries()[i], scale);
  return out;
}

inline FuzzyMatrix from_ranks(const std::vector<std::int32_t>& ranks,
                              const std::vector<Possibility>& scale, std::size_t n) {
  FuzzyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = scale[ranks[i * n + j]];
  return m;
}

// c = a o b with c zero-initialized; rank 0 is the value 0.
inline void compose_ranks(const std::int32_t* a, const std::int32_t* b, std::int32_t* c,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t* arow = a + i * n;
    std::int32_t* crow = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const std::int32_t av = arow[k];
      if (av == 0) continue;
      const std::int32_t* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) {
        const std::int32_t m = std::min(av, brow[j]);
        if (m > crow[j]) crow[j] = m;
      }
    }
  }
}

inline std::vector<std::int32_t> compose_ranks(const std::vector<std::int32_t>& a,
                                               const std::vector<std::int32_t>& b, std::size_t n) {
  std::vector<std::int32_t> c(n * n, 0);
  compose_ranks(a.data(), b.data(), c.data(), n);
  return c;
}

}  // namespace detail

inline void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b)
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
}

/// Max-min composition: result(i,j) = max_k min(a(i,k), b(k,j)).
inline FuzzyMatrix compose(const FuzzyMatrix& a, const FuzzyMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "compose");
  const std::size_t n = a.dim();
  const auto scale = detail::value_scale({&a, &b});
  const auto rc = detail::compose_ranks(detail::to_ranks(a, scale), detail::to_ranks(b, scale), n);
  return detail::from_ranks(rc, scale, n);
}

/// Max-min matrix-vector product: result(i) = max_k min(a(i,k), v(k)).
inline PossibilityVector apply(const FuzzyMatrix& a, const PossibilityVector& v) {
  require_same_dim(a.dim(), v.dim(), "apply");
  const std::size_t n = a.dim();
  PossibilityVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Possibility acc;
    for (std::size_t k = 0; k < n; ++k) acc = std::max(acc, std::min(a.at(i, k), v[k]));
    out[i] = acc;
  }
  return out;
}

/// Entrywise maximum.
inline FuzzyMatrix join(const FuzzyMatrix& a, const FuzzyMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "join");
  const std::size_t n = a.dim();
  FuzzyMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = std::max(a.at(i, j), b.at(i, j));
  return out;
}

/// Reflexive and transitive closure I v A v A^2 v ..., the least fixed point
/// of X = I v A v (A o X). Computed by repeatedly squaring I v A; powers of a
/// fuzzy matrix stabilize by the dimension, so squaring stops early once a
/// fixed point is reached.
inline FuzzyMatrix reflexive_transitive_closure(const FuzzyMatrix& a) {
  const std::size_t n = a.dim();
  const FuzzyMatrix seed = join(FuzzyMatrix::identity(n), a);
  const auto scale = detail::value_scale({&seed});
  auto r = detail::to_ranks(seed, scale);
  for (std::size_t reach = 1; reach < n; reach *= 2) {
    auto sq = detail::compose_ranks(r, r, n);
    if (sq == r) break;
    r = std::move(sq);
  }
  return detail::from_ranks(r, scale, n);
}

/// Transitive closure A v A^2 v ... v A^n (n = dimension), the least fixed
/// point of X = A v (A o X). Equals A composed with the reflexive closure.
inline FuzzyMatrix transitive_closure(const FuzzyMatrix& a) {
  return compose(a, reflexive_transitive_closure(a));
}

/// Bounded closure I v A v ... v A^steps. Equals the reflexive transitive
/// closure once steps reaches the dimension.
inline FuzzyMatrix bounded_closure(const FuzzyMatrix& a, std::size_t steps) {
  const std::size_t n = a.dim();
  if (steps >= n) return reflexive_transitive_closure(a);
  // (I v A)^steps by binary exponentiation; exponents add because compose
  // distributes over join.
  FuzzyMatrix base = join(FuzzyMatrix::identity(n), a);
  FuzzyMatrix result = FuzzyMatrix::identity(n);
  for (std::size_t e = steps; e != 0; e >>= 1) {
    if (e & 1) result = compose(result, base);
    if (e > 1) base = compose(base, base);
  }
  return result;
}

}  // namespace poctl
