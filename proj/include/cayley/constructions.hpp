#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cayley/recognizer.hpp"

namespace cayley {

// A poset together with a verified membership certificate.  Every
// construction below re-verifies its output before returning it.
struct CertifiedPoset {
  Poset poset;
  Certificate cert;
};

inline CertifiedPoset make_certified(Poset p, Certificate c) {
  VerifyResult vr = verify_certificate(p, c);
  if (!vr)
    throw CertificateInvalid("construction output failed verification: " +
                             failure_name(vr.reason) + " (" + vr.detail + ")");
  return CertifiedPoset{std::move(p), std::move(c)};
}

inline CertifiedPoset singleton_cert() {
  return make_certified(Poset::from_relation(1, {1}),
                        Certificate{OpTable(1, {0}), Mask::full(1), CertKind::full_monoid, 0});
}

enum class Extremum { min, max };

// Adding a minimum to a full poset adjoins a neutral element (giving a full
// monoid); adding a maximum adjoins an absorbing element to S.  The new
// element gets index n.
inline CertifiedPoset adjoin_extremum(const CertifiedPoset& cp, Extremum which) {
  const int n = cp.poset.n();
  const int m = n + 1;
  if (which == Extremum::min && !kind_is_full(cp.cert.kind))
    throw KindMismatch("adding a minimum needs a full certificate");
  if (which == Extremum::max && cp.cert.kind == CertKind::monoid)
    throw KindMismatch("adding a maximum needs a semigroup or full certificate");
  std::vector<char> leq(m * m, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) leq[x * m + y] = cp.poset.leq(x, y) ? 1 : 0;
  leq[n * m + n] = 1;
  for (int x = 0; x < n; ++x) {
    if (which == Extremum::min) leq[n * m + x] = 1;
    else leq[x * m + n] = 1;
  }
  std::vector<int> t(m * m);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x * m + y] = cp.cert.table.at(x, y);
  for (int x = 0; x < m; ++x) {
    if (which == Extremum::min) {
      t[n * m + x] = x;  // neutral element
      t[x * m + n] = x;
    } else {
      t[n * m + x] = n;  // absorbing element
      t[x * m + n] = n;
    }
  }
  Mask s(m);
  cp.cert.s_subset.for_each([&](int x) { s.set(x); });
  s.set(n);
  CertKind kind = which == Extremum::min ? CertKind::full_monoid : cp.cert.kind;
  std::optional<int> id;
  if (which == Extremum::min) id = n;
  else if (kind_has_identity(kind)) id = cp.cert.identity;
  return make_certified(Poset::from_relation(m, leq), Certificate{OpTable(m, t), s, kind, id});
}

// Componentwise product; element (i,j) gets index i*|Q|+j.  The kind is the
// meet of the input kinds.
inline CertifiedPoset product_cert(const CertifiedPoset& a, const CertifiedPoset& b) {
  const int na = a.poset.n(), nb = b.poset.n();
  const int n = na * nb;
  auto idx = [&](int i, int j) { return i * nb + j; };
  std::vector<char> leq(n * n, 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l)
          if (a.poset.leq(i, k) && b.poset.leq(j, l)) leq[idx(i, j) * n + idx(k, l)] = 1;
  std::vector<int> t(n * n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l)
          t[idx(i, j) * n + idx(k, l)] = idx(a.cert.table.at(i, k), b.cert.table.at(j, l));
  Mask s(n);
  a.cert.s_subset.for_each([&](int i) {
    b.cert.s_subset.for_each([&](int j) { s.set(idx(i, j)); });
  });
  CertKind kind = kind_meet(a.cert.kind, b.cert.kind);
  std::optional<int> id;
  if (kind_has_identity(kind)) id = idx(*a.cert.identity, *b.cert.identity);
  return make_certified(Poset::from_relation(n, leq), Certificate{OpTable(n, t), s, kind, id});
}

// A retract is a semigroup endomorphism onto S fixing S pointwise; twisting
// the operation by it turns any certificate into a full one on the same
// poset.
inline CertifiedPoset retract_to_full(const CertifiedPoset& cp, const std::vector<int>& sigma) {
  const int n = cp.poset.n();
  if ((int)sigma.size() != n) throw NotARetract("retract has wrong size");
  Mask image(n);
  for (int x = 0; x < n; ++x) {
    if (sigma[x] < 0 || sigma[x] >= n) throw NotARetract("retract image out of range");
    image.set(sigma[x]);
  }
  if (!(image == cp.cert.s_subset)) throw NotARetract("image of the retract is not S");
  for (int s = cp.cert.s_subset.next(0); s >= 0; s = cp.cert.s_subset.next(s + 1))
    if (sigma[s] != s) throw NotARetract("retract does not fix S");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (sigma[cp.cert.table.at(x, y)] != cp.cert.table.at(sigma[x], sigma[y]))
        throw NotARetract("retract is not multiplicative");
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x * n + y] = cp.cert.table.at(x, sigma[y]);
  return make_certified(cp.poset, Certificate{OpTable(n, t), Mask::full(n), CertKind::full, {}});
}

// Bounded search for a retract onto S; useful when only existence matters.
inline std::optional<std::vector<int>> find_retract(const CertifiedPoset& cp) {
  const int n = cp.poset.n();
  std::vector<int> elems;  // elements outside S, to be mapped
  for (int x = 0; x < n; ++x)
    if (!cp.cert.s_subset.test(x)) elems.push_back(x);
  std::vector<int> targets = cp.cert.s_subset.to_vector();
  std::vector<int> sigma(n);
  for (int s : targets) sigma[s] = s;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == elems.size()) {
      Mask image(n);
      for (int x = 0; x < n; ++x) image.set(sigma[x]);
      if (!(image == cp.cert.s_subset)) return false;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (sigma[cp.cert.table.at(x, y)] != cp.cert.table.at(sigma[x], sigma[y]))
            return false;
      return true;
    }
    for (int v : targets) {
      sigma[elems[i]] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  if (rec(0)) return sigma;
  return std::nullopt;
}

struct ElementTraits {
  bool irreducible = false;    // x = ab implies x in {a,b}
  bool self_centered = false;  // yx = x iff xy = x
};

inline ElementTraits irreducible_self_centered(const CertifiedPoset& cp, int x) {
  const int n = cp.poset.n();
  if (x < 0 || x >= n) throw Error("element out of range");
  ElementTraits tr{true, true};
  for (int a = 0; a < n && tr.irreducible; ++a)
    for (int b = 0; b < n && tr.irreducible; ++b)
      if (cp.cert.table.at(a, b) == x && a != x && b != x) tr.irreducible = false;
  for (int y = 0; y < n && tr.self_centered; ++y)
    if ((cp.cert.table.at(y, x) == x) != (cp.cert.table.at(x, y) == x))
      tr.self_centered = false;
  return tr;
}

// Blowup P_xQ: x is replaced by a copy of Q.  P-part elements keep their
// relative order (indices above x shift down by one); the Q-part is appended.
// Beyond the irreducible/self-centered/minimal-or-full hypotheses, x must lie
// in S: both realization directions of the composed operation multiply
// through x, and x in S is what keeps those products inside the order.
inline CertifiedPoset blowup_cert(const CertifiedPoset& cp, int x, const CertifiedPoset& cq) {
  const int np = cp.poset.n(), nq = cq.poset.n();
  if (x < 0 || x >= np) throw Error("element out of range");
  ElementTraits tr = irreducible_self_centered(cp, x);
  if (!tr.irreducible) throw PreconditionFailed("blowup element is not irreducible");
  if (!tr.self_centered) throw PreconditionFailed("blowup element is not self-centered");
  bool x_minimal = cp.poset.down(x).count() == 1;
  if (!x_minimal && !kind_is_full(cq.cert.kind))
    throw PreconditionFailed("blowup element is not minimal and Q is not full");
  if (!cp.cert.s_subset.test(x)) throw PreconditionFailed("blowup element is not in S");

  const int n = np - 1 + nq;
  auto pidx = [&](int t) { return t < x ? t : t - 1; };  // P-part, t != x
  auto qidx = [&](int v) { return np - 1 + v; };
  std::vector<char> leq(n * n, 0);
  for (int s = 0; s < np; ++s)
    for (int t = 0; t < np; ++t) {
      if (s == x || t == x) continue;
      leq[pidx(s) * n + pidx(t)] = cp.poset.leq(s, t) ? 1 : 0;
    }
  for (int v = 0; v < nq; ++v)
    for (int w = 0; w < nq; ++w) leq[qidx(v) * n + qidx(w)] = cq.poset.leq(v, w) ? 1 : 0;
  for (int t = 0; t < np; ++t) {
    if (t == x) continue;
    for (int v = 0; v < nq; ++v) {
      if (cp.poset.leq(t, x)) leq[pidx(t) * n + qidx(v)] = 1;
      if (cp.poset.leq(x, t)) leq[qidx(v) * n + pidx(t)] = 1;
    }
  }

  auto& tp = cp.cert.table;
  auto& tq = cq.cert.table;
  std::vector<int> t(n * n);
  for (int s = 0; s < np; ++s)
    for (int u = 0; u < np; ++u)
      if (s != x && u != x) t[pidx(s) * n + pidx(u)] = pidx(tp.at(s, u));
  // inside the P-part a product can hit x only if one factor is x
  // (irreducibility), which is excluded above
  for (int v = 0; v < nq; ++v)
    for (int w = 0; w < nq; ++w) t[qidx(v) * n + qidx(w)] = qidx(tq.at(v, w));
  for (int s = 0; s < np; ++s) {
    if (s == x) continue;
    for (int v = 0; v < nq; ++v) {
      int xs = tp.at(x, s), sx = tp.at(s, x);
      t[qidx(v) * n + pidx(s)] = xs == x ? qidx(v) : pidx(xs);
      t[pidx(s) * n + qidx(v)] = sx == x ? qidx(v) : pidx(sx);
    }
  }

  Mask s_new(n);
  cp.cert.s_subset.for_each([&](int e) {
    if (e != x) s_new.set(pidx(e));
  });
  cq.cert.s_subset.for_each([&](int e) { s_new.set(qidx(e)); });

  bool full = kind_is_full(cp.cert.kind) && kind_is_full(cq.cert.kind);
  bool monoid = false;
  std::optional<int> id;
  if (kind_has_identity(cp.cert.kind) && *cp.cert.identity != x) {
    monoid = true;
    id = pidx(*cp.cert.identity);
  } else if (kind_has_identity(cp.cert.kind) && kind_has_identity(cq.cert.kind)) {
    monoid = true;  // x was the neutral element; Q's takes over
    id = qidx(*cq.cert.identity);
  }
  return make_certified(Poset::from_relation(n, leq),
                        Certificate{OpTable(n, t), s_new, make_kind(monoid, full), id});
}

// Join table of a finite join-semilattice, as a full certificate.
inline CertifiedPoset join_semilattice_cert(const Poset& p) {
  const int n = p.n();
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Mask ub = p.up(x) & p.up(y);
      int join = -1;
      for (int m = ub.next(0); m >= 0; m = ub.next(m + 1))
        if (ub.subset_of(p.up(m))) join = m;
      if (join < 0)
        throw NotASemilattice("no least upper bound for " + std::to_string(x) + "," +
                              std::to_string(y));
      t[x * n + y] = join;
    }
  return make_certified(p, Certificate{OpTable(n, t), Mask::full(n), CertKind::full, {}});
}

inline CertifiedPoset antichain_cert(int k) {
  // left-zero operation: every row is constant, so each upset is {x}
  std::vector<int> t(k * k);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) t[x * k + y] = x;
  return make_certified(weak_order({k}),
                        Certificate{OpTable(k, t), Mask::full(k), CertKind::full, {}});
}

// Replace join-irreducible elements of a join-semilattice by antichains.
// Replacements are applied from the highest index down so earlier targets
// keep their positions.
inline CertifiedPoset antichain_blowup_semilattice(const Poset& semilattice,
                                                   const std::map<int, int>& replacements) {
  CertifiedPoset acc = join_semilattice_cert(semilattice);
  for (auto it = replacements.rbegin(); it != replacements.rend(); ++it) {
    auto [x, size] = *it;
    if (size <= 0) throw Error("antichain size must be positive");
    ElementTraits tr = irreducible_self_centered(acc, x);
    if (!tr.irreducible)
      throw NotJoinIrreducible("element " + std::to_string(x) + " is join-reducible");
    acc = blowup_cert(acc, x, antichain_cert(size));
  }
  return acc;
}

enum class Composition { series, parallel };

// element l in S with l.z = l for every z; cross products of a parallel
// composition factor through it
inline std::optional<int> find_left_zero(const Certificate& c) {
  for (int l = c.s_subset.next(0); l >= 0; l = c.s_subset.next(l + 1)) {
    bool zero = true;
    for (int z = 0; z < c.table.n && zero; ++z)
      if (c.table.at(l, z) != l) zero = false;
    if (zero) return l;
  }
  return std::nullopt;
}

// Bounded search for a monoid homomorphism N -> N' with sigma(M) = M'.
inline std::optional<std::vector<int>> find_parallel_sigma(const CertifiedPoset& a,
                                                           const CertifiedPoset& b,
                                                           long long cap = 1 << 22) {
  if (!kind_has_identity(a.cert.kind) || !kind_has_identity(b.cert.kind)) return std::nullopt;
  const int na = a.poset.n(), nb = b.poset.n();
  long long total = 1;
  for (int i = 0; i < na; ++i) {
    total *= nb;
    if (total > cap) return std::nullopt;
  }
  std::vector<int> sigma(na, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == na) {
      if (sigma[*a.cert.identity] != *b.cert.identity) return false;
      for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
          if (sigma[a.cert.table.at(x, y)] != b.cert.table.at(sigma[x], sigma[y])) return false;
      Mask img(nb);
      a.cert.s_subset.for_each([&](int s) { img.set(sigma[s]); });
      return img == b.cert.s_subset;
    }
    for (int v = 0; v < nb; ++v) {
      sigma[i] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  if (rec(0)) return sigma;
  return std::nullopt;
}

// Series composition stacks a below b and needs b full; parallel composition
// is the disjoint union.  A parallel composition of monoid certificates can
// keep a neutral element when a monoid homomorphism sigma: N -> N' with
// sigma(M) = M' is supplied; S then shrinks to the first part's submonoid.
inline CertifiedPoset compose_cert(const CertifiedPoset& a, const CertifiedPoset& b,
                                   Composition kind,
                                   const std::optional<std::vector<int>>& sigma = {}) {
  const int na = a.poset.n(), nb = b.poset.n();
  const int n = na + nb;
  auto bidx = [&](int v) { return na + v; };
  std::vector<char> leq(n * n, 0);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) leq[x * n + y] = a.poset.leq(x, y) ? 1 : 0;
  for (int x = 0; x < nb; ++x)
    for (int y = 0; y < nb; ++y) leq[bidx(x) * n + bidx(y)] = b.poset.leq(x, y) ? 1 : 0;
  if (kind == Composition::series)
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < nb; ++y) leq[x * n + bidx(y)] = 1;
  Poset poset = Poset::from_relation(n, leq);

  std::vector<int> t(n * n);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) t[x * n + y] = a.cert.table.at(x, y);
  for (int x = 0; x < nb; ++x)
    for (int y = 0; y < nb; ++y) t[bidx(x) * n + bidx(y)] = bidx(b.cert.table.at(x, y));

  if (kind == Composition::series) {
    if (!kind_is_full(b.cert.kind))
      throw KindMismatch("series composition needs a full certificate on top");
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < nb; ++y) {
        t[x * n + bidx(y)] = bidx(y);  // the upper element absorbs
        t[bidx(y) * n + x] = bidx(y);
      }
    Mask s(n);
    a.cert.s_subset.for_each([&](int x) { s.set(x); });
    for (int y = 0; y < nb; ++y) s.set(bidx(y));
    bool full = kind_is_full(a.cert.kind);
    bool monoid = kind_has_identity(a.cert.kind);
    std::optional<int> id;
    if (monoid) id = *a.cert.identity;
    return make_certified(std::move(poset),
                          Certificate{OpTable(n, t), s, make_kind(monoid, full), id});
  }

  if (sigma) {
    if (!kind_has_identity(a.cert.kind) || !kind_has_identity(b.cert.kind))
      throw KindMismatch("parallel monoid composition needs monoid certificates");
    const std::vector<int>& sg = *sigma;
    if ((int)sg.size() != na) throw NotAHomomorphism("sigma has wrong size");
    for (int v : sg)
      if (v < 0 || v >= nb) throw NotAHomomorphism("sigma image out of range");
    if (sg[*a.cert.identity] != *b.cert.identity)
      throw NotAHomomorphism("sigma does not preserve the identity");
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < na; ++y)
        if (sg[a.cert.table.at(x, y)] != b.cert.table.at(sg[x], sg[y]))
          throw NotAHomomorphism("sigma is not multiplicative");
    Mask img(nb);
    a.cert.s_subset.for_each([&](int s) { img.set(sg[s]); });
    if (!(img == b.cert.s_subset)) throw NotAHomomorphism("sigma(M) differs from M'");
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < nb; ++y) {
        t[x * n + bidx(y)] = bidx(b.cert.table.at(sg[x], y));
        t[bidx(y) * n + x] = bidx(b.cert.table.at(y, sg[x]));
      }
    Mask s(n);
    a.cert.s_subset.for_each([&](int x) { s.set(x); });
    return make_certified(std::move(poset), Certificate{OpTable(n, t), s, CertKind::monoid,
                                                        *a.cert.identity});
  }

  // cross products keep the left part but multiply through one of its left
  // zeros, which is what makes the mixed triples associate
  std::optional<int> la = find_left_zero(a.cert), lb = find_left_zero(b.cert);
  if (!la || !lb)
    throw PreconditionFailed("parallel composition needs a left zero inside each S");
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      t[x * n + bidx(y)] = a.cert.table.at(x, *la);
      t[bidx(y) * n + x] = bidx(b.cert.table.at(y, *lb));
    }
  Mask s(n);
  a.cert.s_subset.for_each([&](int x) { s.set(x); });
  b.cert.s_subset.for_each([&](int y) { s.set(bidx(y)); });
  bool full = kind_is_full(a.cert.kind) && kind_is_full(b.cert.kind);
  return make_certified(std::move(poset),
                        Certificate{OpTable(n, t), s, make_kind(false, full), {}});
}

// Structural recursion: parallel parts compose freely, series parts stack
// onto a recursively full upper operand, so the result is always full.
inline CertifiedPoset series_parallel_cert(const SPExpression& e) {
  if (e.node == SPExpression::Node::leaf) return singleton_cert();
  CertifiedPoset acc = series_parallel_cert(e.children[0]);
  for (size_t i = 1; i < e.children.size(); ++i) {
    CertifiedPoset next = series_parallel_cert(e.children[i]);
    acc = compose_cert(acc, next,
                       e.node == SPExpression::Node::series ? Composition::series
                                                            : Composition::parallel);
  }
  return acc;
}

// kP: every element becomes an antichain of k copies.  Needs nm = n  =>
// m = e on the certificate; the copies then stay incomparable because only
// the identity can fix an element.
inline CertifiedPoset k_blowup_monoid(const CertifiedPoset& cp, int k) {
  if (k <= 0) throw Error("k must be positive");
  if (!kind_has_identity(cp.cert.kind))
    throw KindMismatch("kP needs a monoid certificate");
  const int np = cp.poset.n();
  const int e = *cp.cert.identity;
  for (int x = 0; x < np; ++x)
    for (int m = cp.cert.s_subset.next(0); m >= 0; m = cp.cert.s_subset.next(m + 1))
      if (cp.cert.table.at(x, m) == x && m != e)
        throw HypothesisFailed("nm = n with m != e at (" + std::to_string(x) + "," +
                               std::to_string(m) + ")");
  if (k == 1) return cp;
  const int n = np * k;
  auto idx = [&](int x, int i) { return x * k + i; };
  std::vector<char> leq(n * n, 0);
  for (int x = 0; x < np; ++x)
    for (int i = 0; i < k; ++i)
      for (int y = 0; y < np; ++y)
        for (int j = 0; j < k; ++j)
          if ((x == y && i == j) || (x != y && cp.poset.leq(x, y)))
            leq[idx(x, i) * n + idx(y, j)] = 1;
  std::vector<int> t(n * n);
  for (int x = 0; x < np; ++x)
    for (int i = 0; i < k; ++i)
      for (int y = 0; y < np; ++y)
        for (int j = 0; j < k; ++j)
          t[idx(x, i) * n + idx(y, j)] = idx(cp.cert.table.at(x, y), (i + j) % k);
  Mask s(n);
  cp.cert.s_subset.for_each([&](int m) {
    if (m != e)
      for (int j = 0; j < k; ++j) s.set(idx(m, j));
  });
  s.set(idx(e, 0));
  return make_certified(Poset::from_relation(n, leq),
                        Certificate{OpTable(n, t), s, CertKind::monoid, idx(e, 0)});
}

// Full certificate for a weak order: the product of (i,j) and (k,l) is the
// leftmost operand of the higher level (ties keep the left operand, so each
// row's image is exactly its upset).  A singleton bottom level upgrades the
// certificate to a full monoid.
inline CertifiedPoset weak_order_cert(const std::vector<int>& levels) {
  Poset p = weak_order(levels);
  const int n = p.n();
  std::vector<int> level_of(n), pos_of(n);
  std::vector<int> offset(levels.size(), 0);
  {
    int i = 0;
    for (size_t l = 0; l < levels.size(); ++l) {
      offset[l] = i;
      for (int j = 0; j < levels[l]; ++j, ++i) {
        level_of[i] = (int)l;
        pos_of[i] = j;
      }
    }
  }
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int i = level_of[x], k = level_of[y];
      t[x * n + y] = offset[std::max(i, k)] + (i >= k ? pos_of[x] : pos_of[y]);
    }
  bool has_min = levels[0] == 1;
  return make_certified(std::move(p),
                        Certificate{OpTable(n, t), Mask::full(n),
                                    has_min ? CertKind::full_monoid : CertKind::full,
                                    has_min ? std::optional<int>(0) : std::nullopt});
}

// When all levels have the same size k, the weak order is also a monoid
// poset: the bottom level carries the group Z_k, every other product is the
// leftmost operand of the higher level, and S is everything above level zero
// plus the neutral element (0,0).
inline std::optional<CertifiedPoset> weak_order_monoid_cert(const std::vector<int>& levels) {
  if (levels.empty()) throw Error("weak_order: empty level list");
  const int k = levels[0];
  for (int s : levels)
    if (s != k) return std::nullopt;
  const int L = (int)levels.size();
  Poset p = weak_order(levels);
  const int n = p.n();
  auto idx = [&](int lvl, int j) { return lvl * k + j; };
  std::vector<int> t(n * n);
  for (int i = 0; i < L; ++i)
    for (int a = 0; a < k; ++a)
      for (int j = 0; j < L; ++j)
        for (int b = 0; b < k; ++b) {
          int v;
          if (i == 0 && j == 0) v = idx(0, (a + b) % k);
          else if (i >= j) v = idx(i, a);
          else v = idx(j, b);
          t[idx(i, a) * n + idx(j, b)] = v;
        }
  Mask s(n);
  for (int j = 1; j < L; ++j)
    for (int b = 0; b < k; ++b) s.set(idx(j, b));
  s.set(0);
  CertKind kind = s.count() == n ? CertKind::full_monoid : CertKind::monoid;
  return make_certified(std::move(p), Certificate{OpTable(n, t), s, kind, 0});
}

}  // namespace cayley
