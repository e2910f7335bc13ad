#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cayley/poset.hpp"
#include "cayley/snf.hpp"

namespace cayley {

using Vec = std::vector<Int>;  // free coordinates, then torsion coordinates

enum class Pointedness { pointed, not_pointed, undetermined };

struct PointednessReport {
  Pointedness status = Pointedness::undetermined;
  Vec witness;  // nonneg coefficients with sum c_i g_i = 0, when not_pointed
};

// Finitely generated submonoid of Z^m + Z/d1 + ... + Z/dr, given by its
// generators.  The pointedness status is computed at construction.
struct MonoidPresentation {
  int free_rank = 0;
  std::vector<Int> torsion;            // moduli, each >= 2
  std::vector<Vec> generators;         // arity = free_rank + torsion.size()
  PointednessReport pointedness;

  int arity() const { return free_rank + (int)torsion.size(); }
};

namespace detail {

inline Vec reduce_torsion(const MonoidPresentation& p, Vec v) {
  for (size_t i = 0; i < p.torsion.size(); ++i) {
    Int d = p.torsion[i];
    Int& x = v[p.free_rank + (int)i];
    x %= d;
    if (x < 0) x += d;
  }
  return v;
}

inline Vec vec_add(const MonoidPresentation& p, const Vec& a, const Vec& b) {
  Vec r(p.arity());
  for (int i = 0; i < p.arity(); ++i) r[i] = a[i] + b[i];
  return reduce_torsion(p, std::move(r));
}

inline Vec vec_sub(const MonoidPresentation& p, const Vec& a, const Vec& b) {
  Vec r(p.arity());
  for (int i = 0; i < p.arity(); ++i) r[i] = a[i] - b[i];
  return reduce_torsion(p, std::move(r));
}

inline bool is_zero(const Vec& v) {
  for (Int x : v)
    if (x) return false;
  return true;
}

// order of the torsion part of v in Z/d1 + ... + Z/dr
inline Int torsion_order(const MonoidPresentation& p, const Vec& v) {
  Int ord = 1;
  for (size_t i = 0; i < p.torsion.size(); ++i) {
    Int d = p.torsion[i], x = v[p.free_rank + (int)i] % d;
    if (x < 0) x += d;
    Int o = d / std::gcd(d, x == 0 ? d : x);
    ord = std::lcm(ord, o);
  }
  return ord;
}

// Exact kernel of an m x t rational matrix (columns are free parts of the
// chosen generators).  Returns a primitive integer basis vector when the
// kernel is one-dimensional, nothing otherwise.
inline std::optional<Vec> kernel_dim1(const std::vector<Vec>& cols, int m) {
  int t = (int)cols.size();
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(t, 0));
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < m; ++i) a[i][j] = cols[j][i];
  std::vector<int> pivot_of_col(t, -1);
  int rank = 0;
  for (int c = 0; c < t && rank < m; ++c) {
    int pr = -1;
    for (int r = rank; r < m; ++r)
      if (a[r][c] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[rank], a[pr]);
    mpq_class inv = a[rank][c];
    for (int j = 0; j < t; ++j) a[rank][j] /= inv;
    for (int r = 0; r < m; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (int j = 0; j < t; ++j) a[r][j] -= f * a[rank][j];
    }
    pivot_of_col[c] = rank;
    ++rank;
  }
  if (t - rank != 1) return std::nullopt;
  int free_col = -1;
  for (int c = 0; c < t; ++c)
    if (pivot_of_col[c] < 0) free_col = c;
  std::vector<mpq_class> k(t, 0);
  k[free_col] = 1;
  for (int c = 0; c < t; ++c)
    if (pivot_of_col[c] >= 0) k[c] = -a[pivot_of_col[c]][free_col];
  mpz_class lcm_den = 1;
  for (auto& q : k) lcm_den = lcm(lcm_den, q.get_den());
  Vec out(t);
  for (int c = 0; c < t; ++c) {
    mpz_class z = k[c].get_num() * (lcm_den / k[c].get_den());
    if (!z.fits_slong_p()) throw Overflow("kernel coefficients exceed 64 bits");
    out[c] = (Int)z.get_si();
  }
  return out;
}

}  // namespace detail

// Decides whether the monoid has no invertible element besides 0.  A
// nontrivial nonnegative dependency of the free parts (or a pure-torsion
// generator) lifts to an invertibility witness once scaled by the torsion
// order; conversely any invertible element yields such a dependency with
// minimal support, which the subset sweep below finds exactly.
inline PointednessReport is_pointed(const MonoidPresentation& p, int subset_cap = 14) {
  int k = (int)p.generators.size();
  int m = p.free_rank;
  PointednessReport rep;
  if (k == 0) {
    rep.status = Pointedness::pointed;
    return rep;
  }
  if (k > subset_cap) {
    rep.status = Pointedness::undetermined;
    return rep;
  }
  auto free_part_zero = [&](const Vec& g) {
    for (int i = 0; i < m; ++i)
      if (g[i]) return false;
    return true;
  };
  auto finish_witness = [&](Vec coeffs) {
    // coefficients kill the free parts; scale by the order of the leftover
    // torsion so the whole sum vanishes
    Vec sum(p.arity(), 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < p.arity(); ++j) sum[j] += coeffs[i] * p.generators[i][j];
    sum = detail::reduce_torsion(p, std::move(sum));
    Int ord = detail::torsion_order(p, sum);
    for (Int& c : coeffs) c *= ord;
    rep.status = Pointedness::not_pointed;
    rep.witness = std::move(coeffs);
    return rep;
  };
  for (int i = 0; i < k; ++i)
    if (free_part_zero(p.generators[i])) {
      Vec c(k, 0);
      c[i] = 1;
      return finish_witness(std::move(c));
    }
  // minimal-support dependencies have at most m+1 generators and a
  // one-dimensional kernel on their support
  std::vector<int> subset;
  std::function<bool(int)> sweep = [&](int from) -> bool {
    if ((int)subset.size() >= 2) {
      std::vector<Vec> cols;
      for (int i : subset) {
        Vec f(p.generators[i].begin(), p.generators[i].begin() + m);
        cols.push_back(std::move(f));
      }
      if (auto kv = detail::kernel_dim1(cols, m)) {
        bool pos = true, neg = true;
        for (Int x : *kv) {
          pos &= x > 0;
          neg &= x < 0;
        }
        if (pos || neg) {
          Vec c(k, 0);
          for (size_t j = 0; j < subset.size(); ++j)
            c[subset[j]] = std::abs((*kv)[j]);
          finish_witness(std::move(c));
          return true;
        }
      }
    }
    if ((int)subset.size() == m + 1) return false;
    for (int i = from; i < k; ++i) {
      subset.push_back(i);
      if (sweep(i + 1)) return true;
      subset.pop_back();
    }
    return false;
  };
  if (sweep(0)) return rep;
  rep.status = Pointedness::pointed;
  return rep;
}

inline MonoidPresentation make_presentation(int free_rank, std::vector<Int> torsion,
                                            std::vector<Vec> generators) {
  if (free_rank < 0) throw Error("free rank must be nonnegative");
  for (Int d : torsion)
    if (d < 2) throw Error("torsion moduli must be at least 2");
  MonoidPresentation p;
  p.free_rank = free_rank;
  p.torsion = std::move(torsion);
  int arity = free_rank + (int)p.torsion.size();
  for (auto& g : generators) {
    if ((int)g.size() != arity)
      throw ArityMismatch("generator arity " + std::to_string(g.size()) + ", expected " +
                          std::to_string(arity));
    g = detail::reduce_torsion(p, std::move(g));
    if (detail::is_zero(g)) throw Error("generators must be nonzero");
  }
  p.generators = std::move(generators);
  p.pointedness = is_pointed(p);
  return p;
}

namespace detail {

// Linear functional strictly positive on every generator's free part; its
// value can only grow along factorizations, which bounds all enumerations.
inline Vec positive_functional(const MonoidPresentation& p) {
  int m = p.free_rank;
  if (m == 0) return {};
  if (m > 5) throw SizeLimit("free rank capped at 5 for truncation machinery");
  for (Int bound : {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64}) {
    Vec w(m, -bound);
    while (true) {
      bool ok = true;
      for (const Vec& g : p.generators) {
        Int dot = 0;
        for (int i = 0; i < m; ++i) dot += w[i] * g[i];
        if (dot <= 0) {
          ok = false;
          break;
        }
      }
      if (ok) return w;
      int i = 0;
      while (i < m && w[i] == bound) w[i++] = -bound;
      if (i == m) break;
      ++w[i];
    }
  }
  throw Error("no strictly positive functional found for the generator cone");
}

struct MemberIndex {
  // reachable monoid elements with functional value <= cap, each with one
  // recorded factorization over the generators
  std::map<Vec, std::vector<int>> factorization;
  Vec functional;
  Int cap = 0;
};

inline Int functional_value(const MemberIndex& ix, const MonoidPresentation& p, const Vec& v) {
  Int dot = 0;
  for (int i = 0; i < p.free_rank; ++i) dot += ix.functional[i] * v[i];
  return dot;
}

inline MemberIndex enumerate_members_with(const MonoidPresentation& p, Vec functional,
                                          Int cap) {
  MemberIndex ix;
  ix.functional = std::move(functional);
  ix.cap = cap;
  Vec zero(p.arity(), 0);
  ix.factorization[zero] = {};
  std::vector<Vec> frontier = {zero};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const Vec& v : frontier)
      for (size_t gi = 0; gi < p.generators.size(); ++gi) {
        Vec w = vec_add(p, v, p.generators[gi]);
        if (functional_value(ix, p, w) > cap) continue;
        if (ix.factorization.count(w)) continue;
        auto f = ix.factorization.at(v);
        f.push_back((int)gi);
        ix.factorization[w] = std::move(f);
        next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return ix;
}

inline MemberIndex enumerate_members(const MonoidPresentation& p, Int cap) {
  return enumerate_members_with(p, positive_functional(p), cap);
}

inline bool is_member(const MemberIndex& ix, const MonoidPresentation& p, const Vec& v) {
  Int f = functional_value(ix, p, v);
  if (f < 0 || f > ix.cap) return false;  // outside the indexed region
  return ix.factorization.count(v) > 0;
}

inline std::string vec_label(const MonoidPresentation& p, const Vec& v) {
  std::string s;
  if (p.free_rank == 1 && p.torsion.empty()) return std::to_string(v[0]);
  s = "(";
  for (int i = 0; i < p.free_rank; ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  if (!p.torsion.empty()) {
    s += "|";
    for (size_t i = 0; i < p.torsion.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[p.free_rank + i]);
    }
  }
  s += ")";
  return s;
}

}  // namespace detail

// Members of the monoid inside a componentwise window on the free
// coordinates (torsion unbounded), ordered by x <= y iff y - x is a member.
struct TruncatedPoset {
  MonoidPresentation presentation;
  std::vector<Int> window;   // bound per free coordinate
  std::vector<Vec> elements; // sorted
  Poset poset;
};

inline TruncatedPoset truncated_cayley(const MonoidPresentation& p,
                                       const std::vector<Int>& window) {
  if (p.pointedness.status == Pointedness::not_pointed)
    throw NotPointed("the membership relation is not antisymmetric");
  if (p.pointedness.status == Pointedness::undetermined)
    throw NotPointed("pointedness undetermined within bounds");
  if ((int)window.size() != p.free_rank) throw Error("window arity mismatch");
  for (Int b : window)
    if (b < 0) throw Error("window bounds must be nonnegative");

  Vec w = detail::positive_functional(p);
  Int cap = 0;
  for (int i = 0; i < p.free_rank; ++i) cap += std::abs(w[i]) * window[i];
  detail::MemberIndex ix = detail::enumerate_members_with(p, std::move(w), cap);

  TruncatedPoset t;
  t.presentation = p;
  t.window = window;
  for (auto& [v, f] : ix.factorization) {
    bool in_window = true;
    for (int i = 0; i < p.free_rank; ++i)
      if (std::abs(v[i]) > window[i]) in_window = false;
    if (in_window) t.elements.push_back(v);
  }
  std::sort(t.elements.begin(), t.elements.end());
  int n = (int)t.elements.size();
  std::vector<char> leq(n * n, 0);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = detail::vec_label(p, t.elements[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        leq[i * n + j] = 1;
        continue;
      }
      Vec d = detail::vec_sub(p, t.elements[j], t.elements[i]);
      leq[i * n + j] = detail::is_member(ix, p, d) ? 1 : 0;
    }
  t.poset = Poset::from_relation(n, leq, std::move(labels));
  return t;
}

// Window-bounded verification that the translations x -> s + x behave like
// the commuting order isomorphisms of an auto-equivalent poset.  All checks
// run against the *stored* relation, so hand-built posets that merely carry
// vectors get caught.
struct AutoEquivReport {
  bool order_preserving = true;
  bool commuting = true;
  bool injective = true;
  bool into_upset = true;
  bool order_reflecting = true;
  // the two totality aspects of the definition, only satisfiable when the
  // stored elements form the *whole* poset rather than a truncation window
  bool total = true;        // s + x never leaves the element set
  bool onto_upsets = true;  // every z >= s is s + (some element)
  std::vector<int> atoms;   // element indices
  std::vector<std::string> violations;

  // window consistency: what a truncation of an auto-equivalent poset must
  // satisfy on the part that is visible
  bool ok() const {
    return order_preserving && commuting && injective && into_upset && order_reflecting;
  }
  // the auto-equivalence definition verified exactly; no finite poset with
  // more than one element can pass this
  bool complete() const { return ok() && total && onto_upsets; }
};

inline AutoEquivReport check_auto_equivalent(const TruncatedPoset& t) {
  const Poset& p = t.poset;
  Extremes ext = extremes(p);
  if (!ext.global_min) throw Error("auto-equivalence needs a global minimum");
  const MonoidPresentation& pres = t.presentation;
  int n = p.n();
  std::map<Vec, int> index;
  for (int i = 0; i < n; ++i) index[t.elements[i]] = i;
  auto translate = [&](int s, int x) -> int {
    Vec v = detail::vec_add(pres, t.elements[s], t.elements[x]);
    auto it = index.find(v);
    return it == index.end() ? -1 : it->second;
  };
  AutoEquivReport rep;
  auto note = [&](std::string msg) {
    if (rep.violations.size() < 16) rep.violations.push_back(std::move(msg));
  };
  for (int s = 0; s < n; ++s) {
    for (int z = 0; z < n; ++z)
      if (p.leq(s, z) && index.find(detail::vec_sub(pres, t.elements[z], t.elements[s])) ==
                             index.end())
        rep.onto_upsets = false;
    for (int x = 0; x < n; ++x) {
      int sx = translate(s, x);
      if (sx < 0) {
        rep.total = false;
        continue;
      }
      if (translate(x, s) != sx) {
        rep.commuting = false;
        note("translations by " + p.label(s) + " and " + p.label(x) + " disagree");
      }
      if (!p.leq(s, sx)) {
        rep.into_upset = false;
        note("image of " + p.label(x) + " under +" + p.label(s) + " leaves the upset");
      }
      for (int y = x + 1; y < n; ++y) {
        int sy = translate(s, y);
        if (sy < 0) continue;
        if (sx == sy) {
          rep.injective = false;
          note("+" + p.label(s) + " identifies " + p.label(x) + " and " + p.label(y));
        }
        if (p.leq(x, y) && !p.leq(sx, sy)) {
          rep.order_preserving = false;
          note("+" + p.label(s) + " breaks " + p.label(x) + " <= " + p.label(y));
        }
        if (p.leq(y, x) && !p.leq(sy, sx)) {
          rep.order_preserving = false;
          note("+" + p.label(s) + " breaks " + p.label(y) + " <= " + p.label(x));
        }
        if (p.leq(sx, sy) && !p.leq(x, y)) {
          rep.order_reflecting = false;
          note("+" + p.label(s) + " creates " + p.label(x) + " <= " + p.label(y));
        }
        if (p.leq(sy, sx) && !p.leq(y, x)) {
          rep.order_reflecting = false;
          note("+" + p.label(s) + " creates " + p.label(y) + " <= " + p.label(x));
        }
      }
    }
  }
  if (ext.atoms) ext.atoms->for_each([&](int a) { rep.atoms.push_back(a); });
  return rep;
}

// Generators that no nonnegative combination of the others reaches; for a
// pointed finitely generated monoid this is the unique minimal generating
// set, i.e. the atoms.  The functional bound makes the check exact: any
// factorization of g stays below g's functional value.
inline std::vector<Vec> minimal_generators(const MonoidPresentation& p) {
  std::vector<Vec> gens = p.generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  Vec w = detail::positive_functional(p);
  for (size_t i = 0; i < gens.size();) {
    bool redundant = false;
    if (gens.size() > 1) {
      std::vector<Vec> others;
      for (size_t j = 0; j < gens.size(); ++j)
        if (j != i) others.push_back(gens[j]);
      MonoidPresentation sub = p;
      sub.generators = std::move(others);
      Int cap = 0;
      for (int c = 0; c < p.free_rank; ++c) cap += w[c] * gens[i][c];
      detail::MemberIndex ix = detail::enumerate_members_with(sub, w, cap);
      redundant = detail::is_member(ix, sub, gens[i]);
    }
    if (redundant) gens.erase(gens.begin() + i);
    else ++i;
  }
  return gens;
}

// L_P: differences of factorization exponent vectors with equal value,
// collected breadth-first by total degree and reduced incrementally.
inline LatticeBasis collision_lattice(const MonoidPresentation& p, Int degree_bound) {
  if (p.pointedness.status != Pointedness::pointed)
    throw NotPointed("collision lattice needs a pointed presentation");
  std::vector<Vec> atoms = minimal_generators(p);
  int a = (int)atoms.size();
  LatticeBasis basis(a);
  std::map<Vec, Vec> seen;  // value -> exponent vector
  Vec expo(a, 0);
  std::function<void(int, int, const Vec&)> rec = [&](int from, int remaining,
                                                      const Vec& value) {
    auto it = seen.find(value);
    if (it == seen.end()) {
      seen.emplace(value, expo);
    } else if (it->second != expo) {
      Vec diff(a);
      for (int i = 0; i < a; ++i) diff[i] = expo[i] - it->second[i];
      basis.insert(std::move(diff));
    }
    if (remaining == 0) return;
    for (int i = from; i < a; ++i) {
      ++expo[i];
      rec(i, remaining - 1, detail::vec_add(p, value, atoms[i]));
      --expo[i];
    }
  };
  rec(0, (int)degree_bound, Vec(p.arity(), 0));
  return basis;
}

struct QuotientStructure {
  int free_rank = 0;
  std::vector<Int> torsion;
  std::vector<Vec> atom_images;  // free coordinates then torsion coordinates
};

// Z^A / L as Z^m + torsion via the Smith normal form of the basis rows; the
// atom images are the rows of V read in the new coordinates, with free
// coordinates sign-normalized (a diagonal +-1 unimodular change).
inline QuotientStructure quotient_structure(const LatticeBasis& l, int atom_count) {
  QuotientStructure q;
  if (!l.rows().empty() && l.arity() != atom_count)
    throw Error("lattice arity differs from atom count");
  IntMat r(l.rows().begin(), l.rows().end());
  if (r.empty()) {
    q.free_rank = atom_count;
    q.atom_images.assign(atom_count, Vec(atom_count, 0));
    for (int i = 0; i < atom_count; ++i) q.atom_images[i][i] = 1;
    return q;
  }
  SmithResult snf = smith_normal_form(r);
  int rank = 0;
  std::vector<Int> diag;
  for (int i = 0; i < (int)snf.s.size() && i < atom_count; ++i)
    if (snf.s[i][i] != 0) {
      diag.push_back(snf.diag(i));
      ++rank;
    }
  q.free_rank = atom_count - rank;
  std::vector<int> torsion_cols;
  for (int i = 0; i < rank; ++i)
    if (diag[i] > 1) {
      q.torsion.push_back(diag[i]);
      torsion_cols.push_back(i);
    }
  for (int a = 0; a < atom_count; ++a) {
    Vec img(q.free_rank + (int)q.torsion.size());
    for (int j = 0; j < q.free_rank; ++j)
      img[j] = detail::to_int_checked(snf.v[a][rank + j]);
    for (size_t j = 0; j < torsion_cols.size(); ++j) {
      Int d = q.torsion[j];
      Int x = detail::to_int_checked(snf.v[a][torsion_cols[j]] % d);
      if (x < 0) x += d;
      img[q.free_rank + (int)j] = x;
    }
    q.atom_images.push_back(std::move(img));
  }
  // sign normalization per free coordinate
  for (int j = 0; j < q.free_rank; ++j) {
    bool any_neg = false, any_pos = false;
    for (auto& img : q.atom_images) {
      any_neg |= img[j] < 0;
      any_pos |= img[j] > 0;
    }
    if (any_neg && !any_pos)
      for (auto& img : q.atom_images) img[j] = -img[j];
  }
  return q;
}

// Truncate, collect collisions, rebuild the quotient presentation, and check
// that mapping each window element through its factorization is an order
// isomorphism onto its image in the rebuilt monoid.
inline bool roundtrip_check(const MonoidPresentation& p, Int bound) {
  std::vector<Vec> atoms = minimal_generators(p);
  LatticeBasis l = collision_lattice(p, bound);
  QuotientStructure q = quotient_structure(l, (int)atoms.size());
  MonoidPresentation rebuilt = make_presentation(q.free_rank, q.torsion, q.atom_images);
  if (rebuilt.pointedness.status != Pointedness::pointed) return false;

  MonoidPresentation atom_pres = p;
  atom_pres.generators = atoms;
  detail::MemberIndex ix = detail::enumerate_members(atom_pres, bound);

  std::map<Vec, Vec> image;  // original member -> rebuilt member
  for (auto& [v, fact] : ix.factorization) {
    Vec img(rebuilt.arity(), 0);
    for (int gi : fact)
      for (int j = 0; j < rebuilt.arity(); ++j) img[j] += rebuilt.generators[gi][j];
    image[v] = detail::reduce_torsion(rebuilt, std::move(img));
  }
  Vec rw = detail::positive_functional(rebuilt);
  Int rcap = 0;
  for (auto& [v, img] : image) {
    Int f = 0;
    for (int c = 0; c < rebuilt.free_rank; ++c) f += rw[c] * img[c];
    rcap = std::max(rcap, f);
  }
  detail::MemberIndex rix = detail::enumerate_members_with(rebuilt, rw, rcap);

  // injective
  std::map<Vec, Vec> inverse;
  for (auto& [v, img] : image)
    if (!inverse.emplace(img, v).second) return false;
  // order preserving and reflecting via membership of differences
  for (auto& [v, img] : image)
    for (auto& [w, wimg] : image) {
      bool orig = detail::is_member(ix, atom_pres, detail::vec_sub(atom_pres, w, v));
      bool reb = detail::is_member(rix, rebuilt, detail::vec_sub(rebuilt, wimg, img));
      if (orig != reb) return false;
    }
  return true;
}

// The lex-order counterexample: an abelian monoid realizing (N^2, <=_lex)
// whose translations pass every window check, yet which cannot be
// cancellative.  Everything is verified exhaustively on the window.
struct LexReport {
  bool associative = true;
  bool commutative = true;
  bool identity_ok = true;
  bool realizes_lex = true;
  bool translations_ok = true;
  bool cancellation_fails = false;
  std::array<std::pair<Int, Int>, 3> witness;  // a, b, c with a.b = a.c, b != c
};

inline LexReport lex_counterexample(Int w1, Int w2) {
  if (w1 < 1 || w2 < 1) throw Error("window bounds must be positive");
  using E = std::pair<Int, Int>;
  std::vector<E> elems;
  for (Int i = 0; i <= w1; ++i)
    for (Int j = 0; j <= w2; ++j) elems.push_back({i, j});
  auto mul = [](E a, E b) -> E {
    if (a.first > b.first) return a;
    if (a.first < b.first) return b;
    return {a.first, std::max(a.second, b.second)};
  };
  auto lex = [](E a, E b) {
    return a.first < b.first || (a.first == b.first && a.second <= b.second);
  };
  LexReport rep;
  for (E a : elems)
    for (E b : elems) {
      if (mul(a, b) != mul(b, a)) rep.commutative = false;
      for (E c : elems)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) rep.associative = false;
    }
  for (E a : elems) {
    if (mul({0, 0}, a) != a || mul(a, {0, 0}) != a) rep.identity_ok = false;
    for (E b : elems) {
      bool reach = false;
      for (E s : elems) reach |= mul(a, s) == b;
      if (reach != lex(a, b)) rep.realizes_lex = false;
    }
  }
  // translations x -> x + s restricted to the window
  auto add = [&](E a, E s) -> std::optional<E> {
    E r{a.first + s.first, a.second + s.second};
    if (r.first > w1 || r.second > w2) return std::nullopt;
    return r;
  };
  for (E s : elems)
    for (E x : elems) {
      auto sx = add(x, s);
      if (!sx) continue;
      if (!lex(s, *sx)) rep.translations_ok = false;
      for (E y : elems) {
        auto sy = add(y, s);
        if (!sy) continue;
        if (lex(x, y) != lex(*sx, *sy)) rep.translations_ok = false;
        if (x != y && *sx == *sy) rep.translations_ok = false;
      }
    }
  for (E a : elems)
    for (E b : elems) {
      if (rep.cancellation_fails) break;
      for (E c : elems)
        if (b < c && mul(a, b) == mul(a, c)) {
          rep.cancellation_fails = true;
          rep.witness = {a, b, c};
          break;
        }
    }
  return rep;
}

}  // namespace cayley
