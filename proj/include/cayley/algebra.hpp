#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayley/poset.hpp"

namespace cayley {

// Multiplication table of a finite magma; associativity is checked on
// demand and cached.
struct OpTable {
  int n = 0;
  std::vector<int> t;  // t[a*n+b] = a.b

  OpTable() = default;
  OpTable(int n_, std::vector<int> t_) : n(n_), t(std::move(t_)) {
    if ((int)t.size() != n * n) throw Error("op table size mismatch");
    for (int v : t)
      if (v < 0 || v >= n) throw Error("op table entry out of range");
  }
  int at(int a, int b) const { return t[a * n + b]; }

  friend bool operator==(const OpTable&, const OpTable&) = default;

private:
  friend bool is_associative(const OpTable&);
  mutable signed char assoc_cache_ = -1;  // -1 unknown, else 0/1
};

// Exact triple loop with early exit; n stays small enough here that nothing
// fancier pays off.
inline bool is_associative(const OpTable& op) {
  if (op.assoc_cache_ >= 0) return op.assoc_cache_ == 1;
  bool ok = true;
  for (int a = 0; a < op.n && ok; ++a)
    for (int b = 0; b < op.n && ok; ++b)
      for (int c = 0; c < op.n && ok; ++c)
        if (op.at(op.at(a, b), c) != op.at(a, op.at(b, c))) ok = false;
  op.assoc_cache_ = ok ? 1 : 0;
  return ok;
}

// Right act of a semigroup S on a set X, both given by tables.  Validated on
// construction: S associative and action compatible with the operation.
struct SemigroupAct {
  int x_count = 0;
  OpTable sg;
  std::vector<int> action;  // action[x*sg.n+s] in 0..x_count-1

  int act(int x, int s) const { return action[x * sg.n + s]; }
};

inline SemigroupAct make_act(int x_count, OpTable sg, std::vector<int> action) {
  if (x_count <= 0 || sg.n <= 0) throw IncompatibleAct("empty act");
  if ((int)action.size() != x_count * sg.n)
    throw IncompatibleAct("action table size mismatch");
  for (int v : action)
    if (v < 0 || v >= x_count) throw IncompatibleAct("action entry out of range");
  if (!is_associative(sg)) throw IncompatibleAct("operation is not associative");
  SemigroupAct a{x_count, std::move(sg), std::move(action)};
  for (int x = 0; x < a.x_count; ++x)
    for (int s = 0; s < a.sg.n; ++s)
      for (int s2 = 0; s2 < a.sg.n; ++s2)
        if (a.act(a.act(x, s), s2) != a.act(x, a.sg.at(s, s2)))
          throw IncompatibleAct("(xs)s' != x(ss')");
  return a;
}

struct ActFlags {
  bool s_unital = false;
  bool acyclic = false;
};

// s-unital gives reflexivity of the reachability relation, acyclic gives
// antisymmetry; together they make it a partial order.
inline ActFlags check_act(const SemigroupAct& a) {
  ActFlags f{true, true};
  for (int x = 0; x < a.x_count && f.s_unital; ++x) {
    bool fixed = false;
    for (int s = 0; s < a.sg.n && !fixed; ++s) fixed = a.act(x, s) == x;
    f.s_unital = fixed;
  }
  for (int x = 0; x < a.x_count && f.acyclic; ++x)
    for (int s = 0; s < a.sg.n && f.acyclic; ++s)
      for (int s2 = 0; s2 < a.sg.n && f.acyclic; ++s2)
        if (a.act(a.act(x, s), s2) == x && a.act(x, s) != x) f.acyclic = false;
  return f;
}

// Poset on X with x <= y iff some s sends x to y.
inline Poset cayley_poset(const SemigroupAct& a) {
  ActFlags f = check_act(a);
  if (!f.s_unital || !f.acyclic)
    throw NotAPartialOrder(std::string("act is not ") +
                           (f.s_unital ? "acyclic" : "s-unital"));
  int n = a.x_count;
  std::vector<char> leq(n * n, 0);
  for (int x = 0; x < n; ++x) {
    leq[x * n + x] = 1;
    for (int s = 0; s < a.sg.n; ++s) leq[x * n + a.act(x, s)] = 1;
  }
  // transitivity holds by compatibility; Poset::from_relation re-checks
  return Poset::from_relation(n, leq);
}

// X = ground set of T acting on itself by right multiplication restricted to
// the subsemigroup S.
inline SemigroupAct pair_act(const OpTable& t, const Mask& s_subset) {
  if (s_subset.size() != t.n) throw Error("subset size mismatch");
  if (s_subset.none()) throw NotClosed("S must be nonempty");
  if (!is_associative(t)) throw IncompatibleAct("operation is not associative");
  std::vector<int> elems = s_subset.to_vector();
  for (int a : elems)
    for (int b : elems)
      if (!s_subset.test(t.at(a, b)))
        throw NotClosed("S not closed: " + std::to_string(a) + "*" + std::to_string(b));
  int m = (int)elems.size();
  std::vector<int> sub(m * m), action(t.n * m);
  std::vector<int> pos(t.n, -1);
  for (int i = 0; i < m; ++i) pos[elems[i]] = i;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub[i * m + j] = pos[t.at(elems[i], elems[j])];
  for (int x = 0; x < t.n; ++x)
    for (int j = 0; j < m; ++j) action[x * m + j] = t.at(x, elems[j]);
  return make_act(t.n, OpTable(m, std::move(sub)), std::move(action));
}

// The monoid of all inflationary maps (x <= f(x)) acting by evaluation, with
// composition read left to right: (f.g)(x) = g(f(x)).  Its Cayley poset is
// the input poset on the nose.
inline SemigroupAct inflationary_act(const Poset& p, long long size_cap = 1 << 12) {
  long long total = 1;
  for (int x = 0; x < p.n(); ++x) {
    total *= p.up(x).count();
    if (total > size_cap)
      throw SizeLimit("inflationary monoid larger than cap");
  }
  // enumerate maps in lexicographic order of their tables
  std::vector<std::vector<int>> ups(p.n());
  for (int x = 0; x < p.n(); ++x) ups[x] = p.up(x).to_vector();
  std::vector<std::vector<int>> maps;
  std::vector<int> cur(p.n(), 0);
  std::function<void(int)> gen = [&](int x) {
    if (x == p.n()) {
      std::vector<int> m(p.n());
      for (int i = 0; i < p.n(); ++i) m[i] = ups[i][cur[i]];
      maps.push_back(std::move(m));
      return;
    }
    for (cur[x] = 0; cur[x] < (int)ups[x].size(); ++cur[x]) gen(x + 1);
  };
  gen(0);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < (int)maps.size(); ++i) index[maps[i]] = i;
  int m = (int)maps.size();
  std::vector<int> op(m * m), action(p.n() * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<int> comp(p.n());
      for (int x = 0; x < p.n(); ++x) comp[x] = maps[j][maps[i][x]];
      op[i * m + j] = index.at(comp);
    }
  for (int x = 0; x < p.n(); ++x)
    for (int i = 0; i < m; ++i) action[x * m + i] = maps[i][x];
  return make_act(p.n(), OpTable(m, std::move(op)), std::move(action));
}

enum class CertKind { semigroup, monoid, full, full_monoid };

inline bool kind_is_full(CertKind k) {
  return k == CertKind::full || k == CertKind::full_monoid;
}
inline bool kind_has_identity(CertKind k) {
  return k == CertKind::monoid || k == CertKind::full_monoid;
}
inline CertKind make_kind(bool has_identity, bool full) {
  if (has_identity) return full ? CertKind::full_monoid : CertKind::monoid;
  return full ? CertKind::full : CertKind::semigroup;
}
// meet along the inclusion diagram: both flags must survive
inline CertKind kind_meet(CertKind a, CertKind b) {
  return make_kind(kind_has_identity(a) && kind_has_identity(b),
                   kind_is_full(a) && kind_is_full(b));
}
inline std::string kind_name(CertKind k) {
  switch (k) {
    case CertKind::semigroup: return "semigroup";
    case CertKind::monoid: return "monoid";
    case CertKind::full: return "full";
    case CertKind::full_monoid: return "full_monoid";
  }
  return "?";
}

// Witness that a poset belongs to one of the Cayley classes: a
// multiplication table on the ground set together with the subsemigroup
// whose right action realizes the order.
struct Certificate {
  OpTable table;
  Mask s_subset;
  CertKind kind = CertKind::semigroup;
  std::optional<int> identity;
};

// Left multiplications x -> t.x of a certified table, each an order
// endomorphism of the poset by the embedding lemma.
std::vector<Endomorphism> left_mult_endomorphisms(const Poset& p,
                                                  const Certificate& cert);

// Partially decided multiplication table; -1 marks undecided cells.
struct PartialTable {
  int n = 0;
  std::vector<int> t;
  static PartialTable empty(int n) { return {n, std::vector<int>(n * n, -1)}; }
  int at(int a, int b) const { return t[a * n + b]; }
  void set(int a, int b, int v) { t[a * n + b] = v; }
};

struct PropagationResult {
  bool contradiction = false;
  PartialTable table;          // propagated copy (valid when !contradiction)
  std::pair<int, int> conflict{-1, -1};
};

// Consequence of m = m.m in any certified table: m.x = x for every x above
// m.  Runs to fixpoint; a forced cell that is already decided differently is
// a contradiction.
inline PropagationResult idempotent_consequences(const PartialTable& partial,
                                                 const Poset& p) {
  if (partial.n != p.n()) throw Error("partial table size mismatch");
  PropagationResult r{false, partial, {-1, -1}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int m = 0; m < p.n(); ++m) {
      if (r.table.at(m, m) != m) continue;
      for (int x = p.up(m).next(0); x >= 0; x = p.up(m).next(x + 1)) {
        int cur = r.table.at(m, x);
        if (cur == -1) {
          r.table.set(m, x, x);
          changed = true;
        } else if (cur != x) {
          r.contradiction = true;
          r.conflict = {m, x};
          return r;
        }
      }
    }
  }
  return r;
}

}  // namespace cayley
