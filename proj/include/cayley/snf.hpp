#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cayley/core.hpp"

namespace cayley {

using Int = long;
using IntMat = std::vector<std::vector<Int>>;  // row major, rectangular

namespace detail {

struct OverflowSignal {};

template <class T>
T checked_add(const T& a, const T& b) {
  return a + b;
}
template <class T>
T checked_mul(const T& a, const T& b) {
  return a * b;
}
template <>
inline Int checked_add<Int>(const Int& a, const Int& b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowSignal{};
  return r;
}
template <>
inline Int checked_mul<Int>(const Int& a, const Int& b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowSignal{};
  return r;
}

template <class T>
struct SnfWorker {
  int rows, cols;
  std::vector<std::vector<T>> a, u, v;

  explicit SnfWorker(const IntMat& m) {
    rows = (int)m.size();
    cols = rows ? (int)m[0].size() : 0;
    a.assign(rows, std::vector<T>(cols, T(0)));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a[i][j] = T((long)m[i][j]);
    u.assign(rows, std::vector<T>(rows, T(0)));
    v.assign(cols, std::vector<T>(cols, T(0)));
    for (int i = 0; i < rows; ++i) u[i][i] = T(1);
    for (int j = 0; j < cols; ++j) v[j][j] = T(1);
  }

  static T tabs(const T& x) { return x < T(0) ? T(-x) : x; }

  static void extgcd_raw(const T& x, const T& y, T& g, T& p, T& q) {
    if (y == T(0)) {
      g = x;
      p = T(1);
      q = T(0);
      return;
    }
    T g2, p2, q2;
    extgcd_raw(y, T(x % y), g2, p2, q2);
    g = g2;
    p = q2;
    q = checked_add(p2, checked_mul(T(-1), checked_mul(T(x / y), q2)));
  }
  // canonical: g > 0, and a pure shear whenever the pivot x already divides
  // y, so the pivot row or column is never swapped away (that can cycle)
  static void extgcd(const T& x, const T& y, T& g, T& p, T& q) {
    if (x != T(0) && y % x == T(0)) {
      g = x;
      p = T(1);
      q = T(0);
    } else {
      extgcd_raw(x, y, g, p, q);
    }
    if (g < T(0)) {
      g = checked_mul(T(-1), g);
      p = checked_mul(T(-1), p);
      q = checked_mul(T(-1), q);
    }
  }

  // unimodular 2x2 transform on rows k (pivot) and i, zeroing a[i][t]
  void clear_row_pair(int t, int k, int i) {
    T g, p, q;
    extgcd(a[k][t], a[i][t], g, p, q);
    T ak = a[k][t] / g, ai = a[i][t] / g;
    for (int j = 0; j < cols; ++j) {
      T nk = checked_add(checked_mul(p, a[k][j]), checked_mul(q, a[i][j]));
      T ni = checked_add(checked_mul(ak, a[i][j]), checked_mul(T(-1), checked_mul(ai, a[k][j])));
      a[k][j] = nk;
      a[i][j] = ni;
    }
    for (int j = 0; j < rows; ++j) {
      T nk = checked_add(checked_mul(p, u[k][j]), checked_mul(q, u[i][j]));
      T ni = checked_add(checked_mul(ak, u[i][j]), checked_mul(T(-1), checked_mul(ai, u[k][j])));
      u[k][j] = nk;
      u[i][j] = ni;
    }
  }
  // the transposed version on columns k (pivot) and j, zeroing a[t][j]
  void clear_col_pair(int t, int k, int j) {
    T g, p, q;
    extgcd(a[t][k], a[t][j], g, p, q);
    T ak = a[t][k] / g, aj = a[t][j] / g;
    for (int i = 0; i < rows; ++i) {
      T nk = checked_add(checked_mul(p, a[i][k]), checked_mul(q, a[i][j]));
      T nj = checked_add(checked_mul(ak, a[i][j]), checked_mul(T(-1), checked_mul(aj, a[i][k])));
      a[i][k] = nk;
      a[i][j] = nj;
    }
    for (int i = 0; i < cols; ++i) {
      T nk = checked_add(checked_mul(p, v[i][k]), checked_mul(q, v[i][j]));
      T nj = checked_add(checked_mul(ak, v[i][j]), checked_mul(T(-1), checked_mul(aj, v[i][k])));
      v[i][k] = nk;
      v[i][j] = nj;
    }
  }
  void swap_rows(int i, int k) {
    std::swap(a[i], a[k]);
    std::swap(u[i], u[k]);
  }
  void swap_cols(int j, int k) {
    for (int i = 0; i < rows; ++i) std::swap(a[i][j], a[i][k]);
    for (int i = 0; i < cols; ++i) std::swap(v[i][j], v[i][k]);
  }
  void negate_row(int i) {
    for (int j = 0; j < cols; ++j) a[i][j] = checked_mul(T(-1), a[i][j]);
    for (int j = 0; j < rows; ++j) u[i][j] = checked_mul(T(-1), u[i][j]);
  }

  void run() {
    int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
      // diagonalize position t: move the smallest entry up, clear its row
      // and column with gcd transforms until both stay clear
      while (true) {
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
          for (int j = t; j < cols; ++j)
            if (a[i][j] != T(0) && (pi < 0 || tabs(a[i][j]) < tabs(a[pi][pj]))) {
              pi = i;
              pj = j;
            }
        if (pi < 0) {
          diagonal_divisibility(t);
          return;
        }
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);
        for (int i = t + 1; i < rows; ++i)
          if (a[i][t] != T(0)) clear_row_pair(t, t, i);
        bool row_clear = true;
        for (int j = t + 1; j < cols; ++j)
          if (a[t][j] != T(0)) {
            clear_col_pair(t, t, j);
            row_clear = false;
          }
        if (row_clear) break;  // column ops may have dirtied the column again
        bool col_clear = true;
        for (int i = t + 1; i < rows; ++i)
          if (a[i][t] != T(0)) col_clear = false;
        if (col_clear) break;
      }
    }
    diagonal_divisibility(steps);
  }

  void diagonal_divisibility(int rank_bound) {
    for (int i = 0; i < rank_bound; ++i)
      if (a[i][i] < T(0)) negate_row(i);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i + 1 < rank_bound; ++i) {
        if (a[i][i] == T(0) && a[i + 1][i + 1] != T(0)) {
          swap_rows(i, i + 1);
          swap_cols(i, i + 1);
          changed = true;
          continue;
        }
        if (a[i][i] == T(0) || a[i + 1][i + 1] % a[i][i] == T(0)) continue;
        // fold the next diagonal entry into row i, then re-clear the 2x2
        // block; the pair becomes (gcd, lcm)
        for (int j = 0; j < cols; ++j)
          a[i][j] = checked_add(a[i][j], a[i + 1][j]);
        for (int j = 0; j < rows; ++j)
          u[i][j] = checked_add(u[i][j], u[i + 1][j]);
        clear_col_pair(i, i, i + 1);
        if (a[i + 1][i] != T(0)) {
          // exact by construction: the new pivot is the gcd
          T q = a[i + 1][i] / a[i][i];
          for (int j = 0; j < cols; ++j)
            a[i + 1][j] =
                checked_add(a[i + 1][j], checked_mul(T(-1), checked_mul(q, a[i][j])));
          for (int j = 0; j < rows; ++j)
            u[i + 1][j] =
                checked_add(u[i + 1][j], checked_mul(T(-1), checked_mul(q, u[i][j])));
        }
        if (a[i][i] < T(0)) negate_row(i);
        if (a[i + 1][i + 1] < T(0)) negate_row(i + 1);
        changed = true;
      }
    }
  }
};

inline Int to_int_checked(const mpz_class& x) {
  if (!x.fits_slong_p()) throw Overflow("integer entry exceeds 64 bits");
  return (Int)x.get_si();
}

}  // namespace detail

// Unimodular transforms may need more bits than the input, so the result is
// delivered in arbitrary precision; the diagonal itself stays small.
using BigMat = std::vector<std::vector<mpz_class>>;

struct SmithResult {
  BigMat u, s, v;  // u * input * v = s, diagonal with a divisibility chain

  Int diag(int i) const { return detail::to_int_checked(s[i][i]); }
};

// Exact Smith normal form: fixed-width arithmetic with overflow checks,
// escalating to arbitrary precision on demand.
inline SmithResult smith_normal_form(const IntMat& m) {
  for (auto& row : m)
    if (row.size() != (m.empty() ? 0 : m[0].size()))
      throw Error("matrix is not rectangular");
  auto pack = [](auto& w) {
    SmithResult r;
    r.s.assign(w.rows, std::vector<mpz_class>(w.cols));
    r.u.assign(w.rows, std::vector<mpz_class>(w.rows));
    r.v.assign(w.cols, std::vector<mpz_class>(w.cols));
    for (int i = 0; i < w.rows; ++i)
      for (int j = 0; j < w.cols; ++j) r.s[i][j] = w.a[i][j];
    for (int i = 0; i < w.rows; ++i)
      for (int j = 0; j < w.rows; ++j) r.u[i][j] = w.u[i][j];
    for (int i = 0; i < w.cols; ++i)
      for (int j = 0; j < w.cols; ++j) r.v[i][j] = w.v[i][j];
    return r;
  };
  try {
    detail::SnfWorker<Int> w(m);
    w.run();
    return pack(w);
  } catch (const detail::OverflowSignal&) {
    detail::SnfWorker<mpz_class> w(m);
    w.run();
    return pack(w);
  }
}

// Basis of a sublattice of Z^arity kept in row-style Hermite normal form, so
// equal lattices have equal rows.  Insertion reduces the new vector against
// the pivots and re-normalizes.
class LatticeBasis {
public:
  explicit LatticeBasis(int arity) : arity_(arity) {}

  int arity() const { return arity_; }
  const std::vector<std::vector<Int>>& rows() const { return rows_; }

  bool insert(std::vector<Int> vec) {
    if ((int)vec.size() != arity_) throw Error("lattice vector arity mismatch");
    if (contains(vec)) return false;
    rows_.push_back(std::move(vec));
    echelonize();
    return true;
  }

  bool contains(const std::vector<Int>& vec) const {
    std::vector<Int> v = vec;
    for (auto& row : rows_) {
      int p = pivot_col(row);
      if (v[p] == 0) continue;
      if (v[p] % row[p] != 0) return false;
      Int q = v[p] / row[p];
      for (int j = 0; j < arity_; ++j)
        v[j] = detail::checked_add(v[j], detail::checked_mul(-q, row[j]));
    }
    for (Int x : v)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;

private:
  static int pivot_col(const std::vector<Int>& row) {
    for (size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) return (int)j;
    return (int)row.size();
  }
  void echelonize() {
    std::vector<std::vector<Int>> work = std::move(rows_);
    rows_.clear();
    for (int c = 0; c < arity_ && !work.empty(); ++c) {
      while (true) {
        size_t best = work.size();
        for (size_t i = 0; i < work.size(); ++i)
          if (work[i][c] != 0 &&
              (best == work.size() || std::abs(work[i][c]) < std::abs(work[best][c])))
            best = i;
        if (best == work.size()) break;  // column clear
        bool clean = true;
        for (size_t i = 0; i < work.size(); ++i) {
          if (i == best || work[i][c] == 0) continue;
          Int q = work[i][c] / work[best][c];
          for (int j = 0; j < arity_; ++j)
            work[i][j] = detail::checked_add(work[i][j],
                                             detail::checked_mul(-q, work[best][j]));
          if (work[i][c] != 0) clean = false;
        }
        if (clean) {
          rows_.push_back(std::move(work[best]));
          work.erase(work.begin() + best);
          break;
        }
      }
    }
    for (auto& row : rows_)
      if (row[pivot_col(row)] < 0)
        for (Int& x : row) x = -x;
    // reduce entries above each pivot (floor division keeps them in [0, pivot))
    for (size_t i = rows_.size(); i-- > 0;) {
      int p = pivot_col(rows_[i]);
      for (size_t k = 0; k < i; ++k) {
        Int q = rows_[k][p] / rows_[i][p];
        if (rows_[k][p] % rows_[i][p] < 0) q -= 1;
        if (q == 0) continue;
        for (int j = 0; j < arity_; ++j)
          rows_[k][j] = detail::checked_add(rows_[k][j],
                                            detail::checked_mul(-q, rows_[i][j]));
      }
    }
  }

  int arity_;
  std::vector<std::vector<Int>> rows_;
};

}  // namespace cayley
