#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cayley/algebra.hpp"
#include "cayley/canonical.hpp"
#include "cayley/poset.hpp"

namespace cayley {

enum class Verdict { yes, no, unknown };
enum class ClassQuery { semigroup, monoid, full, full_monoid, act };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}
inline std::string query_name(ClassQuery q) {
  switch (q) {
    case ClassQuery::semigroup: return "semigroup";
    case ClassQuery::monoid: return "monoid";
    case ClassQuery::full: return "full";
    case ClassQuery::full_monoid: return "full_monoid";
    case ClassQuery::act: return "act";
  }
  return "?";
}

struct SearchOptions {
  std::uint64_t budget = 100'000'000;  // search nodes
  bool deterministic = false;          // sequential units, lex-least certificate
  int threads = 1;
  // lemma-based pruning toggles; verdicts must not depend on them
  bool prune_idempotent = true;
  bool prune_monotone = true;
  bool prune_feasibility = true;
  bool assoc_forcing = true;  // off: associativity is only checked, never forced
};

// Exhaustion log: how many branches each constraint closed.
struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t closed_domain = 0;
  std::uint64_t closed_coverage = 0;
  std::uint64_t closed_assoc = 0;
  std::uint64_t closed_idempotent = 0;
  std::uint64_t closed_monotone = 0;
  std::uint64_t units = 0;  // (S, identity) candidates examined
  double wall_ms = 0;
  void add(const SearchStats& o) {
    nodes += o.nodes;
    closed_domain += o.closed_domain;
    closed_coverage += o.closed_coverage;
    closed_assoc += o.closed_assoc;
    closed_idempotent += o.closed_idempotent;
    closed_monotone += o.closed_monotone;
    units += o.units;
  }
};

struct Recognition {
  Verdict verdict = Verdict::unknown;
  std::optional<Certificate> cert;
  SearchStats stats;
};

enum class CertFailure {
  none,
  size_mismatch,
  entry_range,
  not_associative,
  s_subset_empty,
  not_upset,
  not_closed,
  kind_mismatch,
  identity_violation,
  order_mismatch,
};

inline std::string failure_name(CertFailure f) {
  switch (f) {
    case CertFailure::none: return "none";
    case CertFailure::size_mismatch: return "size_mismatch";
    case CertFailure::entry_range: return "entry_range";
    case CertFailure::not_associative: return "associativity";
    case CertFailure::s_subset_empty: return "s_subset_empty";
    case CertFailure::not_upset: return "not_upset";
    case CertFailure::not_closed: return "not_closed";
    case CertFailure::kind_mismatch: return "kind_mismatch";
    case CertFailure::identity_violation: return "identity";
    case CertFailure::order_mismatch: return "order_mismatch";
  }
  return "?";
}

struct VerifyResult {
  bool ok = false;
  CertFailure reason = CertFailure::none;
  std::string detail;
  explicit operator bool() const { return ok; }
};

// Full validation of a certificate against its poset: associativity, the
// subsemigroup structure of S (an upset, closed), the kind-specific shape,
// and exact realization of the order in both directions.
inline VerifyResult verify_certificate(const Poset& p, const Certificate& cert) {
  const int n = p.n();
  auto fail = [](CertFailure r, std::string d) { return VerifyResult{false, r, std::move(d)}; };
  if (cert.table.n != n || cert.s_subset.size() != n)
    return fail(CertFailure::size_mismatch, "table or subset size differs from poset");
  for (int v : cert.table.t)
    if (v < 0 || v >= n) return fail(CertFailure::entry_range, "entry out of range");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (cert.table.at(cert.table.at(a, b), c) != cert.table.at(a, cert.table.at(b, c)))
          return fail(CertFailure::not_associative,
                      "triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                          std::to_string(c) + ")");
  if (cert.s_subset.none()) return fail(CertFailure::s_subset_empty, "S empty");
  for (int s = cert.s_subset.next(0); s >= 0; s = cert.s_subset.next(s + 1)) {
    if (!p.up(s).subset_of(cert.s_subset))
      return fail(CertFailure::not_upset, "element " + std::to_string(s));
    for (int s2 = cert.s_subset.next(0); s2 >= 0; s2 = cert.s_subset.next(s2 + 1))
      if (!cert.s_subset.test(cert.table.at(s, s2)))
        return fail(CertFailure::not_closed,
                    std::to_string(s) + "*" + std::to_string(s2) + " leaves S");
  }
  if (kind_is_full(cert.kind) && cert.s_subset.count() != n)
    return fail(CertFailure::kind_mismatch, "full certificate with proper S");
  if (kind_has_identity(cert.kind)) {
    if (!cert.identity) return fail(CertFailure::kind_mismatch, "missing identity");
    int e = *cert.identity;
    if (e < 0 || e >= n) return fail(CertFailure::kind_mismatch, "identity out of range");
    for (int x = 0; x < n; ++x)
      if (cert.table.at(e, x) != x || cert.table.at(x, e) != x)
        return fail(CertFailure::identity_violation, "at element " + std::to_string(x));
    if (cert.kind == CertKind::monoid && !(cert.s_subset == p.up(e)))
      return fail(CertFailure::kind_mismatch, "S is not the principal upset of the identity");
    if (cert.kind == CertKind::full_monoid && p.up(e).count() != n)
      return fail(CertFailure::kind_mismatch, "identity is not the global minimum");
  }
  for (int x = 0; x < n; ++x) {
    Mask image(n);
    for (int s = cert.s_subset.next(0); s >= 0; s = cert.s_subset.next(s + 1))
      image.set(cert.table.at(x, s));
    if (!(image == p.up(x)))
      return fail(CertFailure::order_mismatch, "row " + std::to_string(x));
  }
  return VerifyResult{true, CertFailure::none, ""};
}

inline std::vector<Endomorphism> left_mult_endomorphisms(const Poset& p,
                                                         const Certificate& cert) {
  VerifyResult vr = verify_certificate(p, cert);
  if (!vr) throw CertificateInvalid(failure_name(vr.reason) + ": " + vr.detail);
  std::vector<Endomorphism> out;
  out.reserve(p.n());
  for (int t = 0; t < p.n(); ++t) {
    std::vector<int> map(p.n());
    for (int x = 0; x < p.n(); ++x) map[x] = cert.table.at(t, x);
    out.push_back(make_endomorphism(p, std::move(map)));
  }
  return out;
}

namespace detail {

// ---- small induced-subposet homomorphism searches (monoid pruning) ----

inline bool injective_order_hom_exists(const Poset& p, const std::vector<int>& from,
                                       const std::vector<int>& to) {
  if (from.size() > to.size()) return false;
  std::vector<int> img(from.size(), -1);
  std::vector<char> used(to.size(), 0);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == from.size()) return true;
    for (size_t j = 0; j < to.size(); ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (size_t k = 0; k < i && ok; ++k) {
        if (p.leq(from[k], from[i]) && !p.leq(to[img[k]], to[j])) ok = false;
        if (p.leq(from[i], from[k]) && !p.leq(to[j], to[img[k]])) ok = false;
      }
      if (!ok) continue;
      img[i] = (int)j;
      used[j] = 1;
      if (rec(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return rec(0);
}

// surjective order homomorphism from `from` onto `to` with from[0]->to[0]
inline bool onto_order_hom_exists(const Poset& p, const std::vector<int>& from,
                                  const std::vector<int>& to) {
  if (from.size() < to.size()) return false;
  size_t m = to.size();
  std::vector<int> img(from.size(), -1);
  std::vector<int> hits(m, 0);
  size_t covered = 0;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == from.size()) return covered == m;
    if (m - covered > from.size() - i) return false;
    size_t lo = 0, hi = m;
    if (i == 0) hi = 1;  // pinned base point
    for (size_t j = lo; j < hi; ++j) {
      bool ok = true;
      for (size_t k = 0; k < i && ok; ++k) {
        if (p.leq(from[k], from[i]) && !p.leq(to[img[k]], to[j])) ok = false;
        if (p.leq(from[i], from[k]) && !p.leq(to[j], to[img[k]])) ok = false;
      }
      if (!ok) continue;
      img[i] = (int)j;
      if (hits[j]++ == 0) ++covered;
      if (rec(i + 1)) return true;
      if (--hits[j] == 0) --covered;
      img[i] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace detail

// Necessary conditions for a candidate identity, from the endomorphism
// characterization: every principal upset is the image of an onto order
// homomorphism from the upset of the identity, and elements below the
// identity inject their incomparability sets into the identity's.
inline bool monoid_feasibility_prune(const Poset& p, int e) {
  const int n = p.n();
  int ue = p.up(e).count();
  for (int x = 0; x < n; ++x)
    if (p.up(x).count() > ue) return false;
  for (int x = p.down(e).next(0); x >= 0; x = p.down(e).next(x + 1)) {
    if (x == e) continue;
    Mask ix = incomparables(p, x), ie = incomparables(p, e);
    if (ix.count() > ie.count()) return false;
    if (!detail::injective_order_hom_exists(p, ix.to_vector(), ie.to_vector()))
      return false;
  }
  for (int x = 0; x < n; ++x) {
    if (x == e) continue;
    std::vector<int> from = {e}, to = {x};
    p.up(e).for_each([&](int y) { if (y != e) from.push_back(y); });
    p.up(x).for_each([&](int y) { if (y != x) to.push_back(y); });
    if (!detail::onto_order_hom_exists(p, from, to)) return false;
  }
  return true;
}

namespace detail {

constexpr int kMaxSearchN = 16;

// Backtracking search for a multiplication table on the ground set of P
// realizing the order through the columns of S, with constraint propagation:
//   - cells in S-columns range over the row's upset, and each row must cover
//     its upset exactly (the definition of the order);
//   - incremental associativity with equality forcing between the two ways
//     of evaluating a triple;
//   - the idempotent consequence m=mm  =>  mx=x for x above m;
//   - monotonicity of left multiplication (rows are order endomorphisms).
// Variables are visited in (row, column) order with values ascending, so the
// first solution is the lexicographically least table for this S.
class TableSearch {
public:
  enum class Outcome { found, exhausted, aborted };

  TableSearch(const Poset& p, std::uint32_t scols, int identity,
              const SearchOptions& opt, SearchStats& stats,
              std::atomic<std::uint64_t>& node_pool, std::uint64_t budget,
              const std::atomic<bool>* stop)
      : n_(p.n()), scols_(scols), identity_(identity), opt_(opt), stats_(stats),
        node_pool_(node_pool), budget_(budget), stop_(stop) {
    for (int x = 0; x < n_; ++x) {
      up_[x] = down_[x] = 0;
      for (int y = 0; y < n_; ++y) {
        if (p.leq(x, y)) up_[x] |= 1u << y;
        if (p.leq(y, x)) down_[x] |= 1u << y;
      }
    }
    full_ = (n_ == 32) ? 0xffffffffu : ((1u << n_) - 1);
    for (int c = 0; c < n_ * n_; ++c) {
      dom_[c] = (scols_ >> (c % n_)) & 1 ? up_[c / n_] : full_;
      val_[c] = -1;
      if ((dom_[c] & (dom_[c] - 1)) == 0) queue_.push_back((std::uint16_t)c);
    }
    for (int r = 0; r < n_; ++r) rowhit_[r] = 0;
  }

  // extra pre-assignments (identity row/column, parallel split seeds)
  bool seed(int row, int col, int v) {
    return constrain(row * n_ + col, 1u << v, &SearchStats::closed_domain) && drain();
  }
  bool seed_identity() {
    if (identity_ < 0) return true;
    for (int x = 0; x < n_; ++x) {
      if (!constrain(identity_ * n_ + x, 1u << x, &SearchStats::closed_domain)) return false;
      if (!constrain(x * n_ + identity_, 1u << x, &SearchStats::closed_domain)) return false;
    }
    return drain();
  }

  Outcome run(std::vector<int>& out) {
    Outcome o = drain() ? dfs(0) : Outcome::exhausted;
    if (o == Outcome::found) {
      out.assign(n_ * n_, 0);
      for (int c = 0; c < n_ * n_; ++c) out[c] = val_[c];
    }
    stats_.nodes += local_nodes_;
    node_pool_.fetch_add(local_nodes_);
    local_nodes_ = 0;
    return o;
  }

  bool budget_hit = false;

private:
  using Cause = std::uint64_t SearchStats::*;

  bool leq_(int x, int y) const { return (up_[x] >> y) & 1; }

  bool constrain(int cell, std::uint32_t mask, Cause cause) {
    std::uint32_t nd = dom_[cell] & mask;
    if (nd == dom_[cell]) {
      if ((nd & (nd - 1)) == 0 && val_[cell] < 0) queue_.push_back((std::uint16_t)cell);
      return true;
    }
    if (!nd) {
      stats_.*cause += 1;
      return false;
    }
    trail_.push_back({(std::uint16_t)cell, dom_[cell]});
    dom_[cell] = nd;
    if ((nd & (nd - 1)) == 0 && val_[cell] < 0) queue_.push_back((std::uint16_t)cell);
    if ((scols_ >> (cell % n_)) & 1) {
      if (!row_coverage_ok(cell / n_)) {
        stats_.closed_coverage += 1;
        return false;
      }
    }
    return true;
  }

  bool row_coverage_ok(int r) const {
    std::uint32_t needed = up_[r] & ~rowhit_[r];
    if (!needed) return true;
    std::uint32_t avail = 0;
    int free_cells = 0;
    for (int c = 0; c < n_; ++c) {
      if (!((scols_ >> c) & 1)) continue;
      int cell = r * n_ + c;
      if (val_[cell] < 0) {
        avail |= dom_[cell];
        ++free_cells;
      }
    }
    if (needed & ~avail) return false;
    return __builtin_popcount(needed) <= free_cells;
  }

  bool process(int cell) {
    int v = __builtin_ctz(dom_[cell]);
    int r = cell / n_, c = cell % n_;
    assign_trail_.push_back({(std::uint16_t)cell, rowhit_[r]});
    val_[cell] = (std::int16_t)v;
    prod_[v].push_back((std::uint16_t)cell);
    if ((scols_ >> c) & 1) {
      rowhit_[r] |= 1u << v;
      if (!row_coverage_ok(r)) {
        stats_.closed_coverage += 1;
        return false;
      }
    }
    if (opt_.prune_idempotent && r == c && v == r) {
      std::uint32_t m = up_[r];
      while (m) {
        int x = __builtin_ctz(m);
        m &= m - 1;
        if (!constrain(r * n_ + x, 1u << x, &SearchStats::closed_idempotent)) return false;
      }
    }
    if (opt_.prune_monotone) {
      for (int c2 = 0; c2 < n_; ++c2) {
        if (c2 == c) continue;
        if (leq_(c, c2)) {
          if (!constrain(r * n_ + c2, up_[v], &SearchStats::closed_monotone)) return false;
        } else if (leq_(c2, c)) {
          if (!constrain(r * n_ + c2, down_[v], &SearchStats::closed_monotone)) return false;
        }
      }
    }
    // associativity triggers; the assigned cell plays each of the four roles
    // (x,y), (y,z), (xy,z), (x,yz) of a triple in turn
    for (int z = 0; z < n_; ++z) {  // (r,c,z) with (r,c) = xy-pair
      int w = val_[c * n_ + z];
      if (w >= 0 && !link(v * n_ + z, r * n_ + w)) return false;
    }
    for (int x = 0; x < n_; ++x) {  // (x,r,c) with (r,c) = yz-pair
      int u = val_[x * n_ + r];
      if (u >= 0 && !link(u * n_ + c, x * n_ + v)) return false;
    }
    for (size_t i = 0; i < prod_[r].size(); ++i) {  // (p,q,c) with pq = r
      int pq = prod_[r][i];
      int pp = pq / n_, qq = pq % n_;
      int w = val_[qq * n_ + c];
      if (w >= 0 && !link_value(pp * n_ + w, v)) return false;
    }
    for (size_t i = 0; i < prod_[c].size(); ++i) {  // (r,y,z) with yz = c
      int yz = prod_[c][i];
      int yy = yz / n_, zz = yz % n_;
      int u = val_[r * n_ + yy];
      if (u >= 0 && !link_value(u * n_ + zz, v)) return false;
    }
    return true;
  }

  bool link(int e1, int e2) {
    int v1 = val_[e1], v2 = val_[e2];
    if (v1 >= 0 && v2 >= 0) {
      if (v1 == v2) return true;
      stats_.closed_assoc += 1;
      return false;
    }
    if (!opt_.assoc_forcing) return true;  // checked once both sides decide
    if (v1 >= 0) return constrain(e2, 1u << v1, &SearchStats::closed_assoc);
    if (v2 >= 0) return constrain(e1, 1u << v2, &SearchStats::closed_assoc);
    return true;
  }
  bool link_value(int e, int v) {
    if (val_[e] >= 0) {
      if (val_[e] == v) return true;
      stats_.closed_assoc += 1;
      return false;
    }
    if (!opt_.assoc_forcing) return true;
    return constrain(e, 1u << v, &SearchStats::closed_assoc);
  }

  bool drain() {
    while (!queue_.empty()) {
      int cell = queue_.back();
      queue_.pop_back();
      if (val_[cell] >= 0) continue;
      if (!process(cell)) {
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  void undo(size_t tmark, size_t amark) {
    while (assign_trail_.size() > amark) {
      auto [cell, oldhit] = assign_trail_.back();
      assign_trail_.pop_back();
      int v = val_[cell];
      val_[cell] = -1;
      prod_[v].pop_back();
      rowhit_[cell / n_] = oldhit;
    }
    while (trail_.size() > tmark) {
      auto [cell, old] = trail_.back();
      trail_.pop_back();
      dom_[cell] = old;
    }
    queue_.clear();
  }

  Outcome dfs(int from) {
    while (from < n_ * n_ && val_[from] >= 0) ++from;
    if (from == n_ * n_) return final_check() ? Outcome::found : Outcome::exhausted;
    std::uint32_t cand = dom_[from];
    while (cand) {
      int v = __builtin_ctz(cand);
      cand &= cand - 1;
      if (++local_nodes_ >= 1024) {
        std::uint64_t used = node_pool_.fetch_add(local_nodes_) + local_nodes_;
        stats_.nodes += local_nodes_;
        local_nodes_ = 0;
        if (used > budget_) {
          budget_hit = true;
          return Outcome::aborted;
        }
        if (stop_ && stop_->load(std::memory_order_relaxed)) return Outcome::aborted;
      }
      size_t tmark = trail_.size(), amark = assign_trail_.size();
      if (constrain(from, 1u << v, &SearchStats::closed_domain) && drain()) {
        Outcome o = dfs(from + 1);
        if (o != Outcome::exhausted) return o;
      }
      undo(tmark, amark);
    }
    return Outcome::exhausted;
  }

  bool final_check() {
    for (int r = 0; r < n_; ++r)
      if (rowhit_[r] != up_[r]) return false;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (val_[val_[a * n_ + b] * n_ + c] != val_[a * n_ + val_[b * n_ + c]])
            return false;
    return true;
  }

  int n_;
  std::uint32_t scols_;
  int identity_;
  const SearchOptions& opt_;
  SearchStats& stats_;
  std::atomic<std::uint64_t>& node_pool_;
  std::uint64_t budget_;
  const std::atomic<bool>* stop_;

  std::uint32_t up_[kMaxSearchN], down_[kMaxSearchN], full_;
  std::uint32_t dom_[kMaxSearchN * kMaxSearchN];
  std::int16_t val_[kMaxSearchN * kMaxSearchN];
  std::uint32_t rowhit_[kMaxSearchN];
  std::vector<std::pair<std::uint16_t, std::uint32_t>> trail_;
  std::vector<std::pair<std::uint16_t, std::uint32_t>> assign_trail_;
  std::vector<std::uint16_t> prod_[kMaxSearchN];
  std::vector<std::uint16_t> queue_;
  std::uint64_t local_nodes_ = 0;
};

struct SearchUnit {
  std::uint32_t scols;
  int identity;  // -1 none
};

inline bool is_upset_mask(const Poset& p, std::uint32_t mask) {
  for (int x = 0; x < p.n(); ++x)
    if ((mask >> x) & 1)
      for (int y = 0; y < p.n(); ++y)
        if (p.leq(x, y) && !((mask >> y) & 1)) return false;
  return true;
}

// Candidate (S, identity) pairs for a query, in the deterministic order that
// makes the first hit the lexicographically least certificate.  With a
// global minimum every query collapses to the identity-constrained full
// search (full monoid posets = semigroup posets with minimum).
inline std::vector<SearchUnit> units_for(const Poset& p, ClassQuery q,
                                         const SearchOptions& opt) {
  Extremes ext = extremes(p);
  std::uint32_t all = (p.n() == 32) ? 0xffffffffu : ((1u << p.n()) - 1);
  if (ext.global_min) {
    if (q == ClassQuery::semigroup || q == ClassQuery::monoid || q == ClassQuery::full ||
        q == ClassQuery::full_monoid)
      return {{all, *ext.global_min}};
  }
  switch (q) {
    case ClassQuery::full_monoid:
      return {};  // no global minimum: impossible
    case ClassQuery::full:
      return {{all, -1}};
    case ClassQuery::monoid: {
      std::vector<std::pair<std::uint32_t, int>> cands;
      for (int e = 0; e < p.n(); ++e) {
        if (opt.prune_feasibility && !monoid_feasibility_prune(p, e)) continue;
        std::uint32_t m = 0;
        for (int y = 0; y < p.n(); ++y)
          if (p.leq(e, y)) m |= 1u << y;
        cands.push_back({m, e});
      }
      std::sort(cands.begin(), cands.end());
      std::vector<SearchUnit> units;
      for (auto& [m, e] : cands) units.push_back({m, e});
      return units;
    }
    case ClassQuery::semigroup: {
      std::vector<SearchUnit> units;
      for (std::uint32_t m = 1; m <= all; ++m)
        if (is_upset_mask(p, m)) units.push_back({m, -1});
      return units;
    }
    case ClassQuery::act:
      return {};
  }
  return {};
}

}  // namespace detail

// Certificate-producing recognition of one Cayley class by exhaustive pruned
// search.  `no` means the candidate space was exhausted; `unknown` means the
// node budget ran out first.
inline Recognition recognize(const Poset& p, ClassQuery q,
                             const SearchOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  Recognition rec;
  auto finish = [&](Recognition& r) -> Recognition& {
    r.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return r;
  };

  if (q == ClassQuery::act) {
    // every finite poset is the Cayley poset of its inflationary monoid act
    rec.verdict = Verdict::yes;
    return finish(rec);
  }
  if (p.n() > detail::kMaxSearchN) {
    rec.verdict = Verdict::unknown;
    return finish(rec);
  }

  std::vector<detail::SearchUnit> units = detail::units_for(p, q, opt);
  if (units.empty()) {
    rec.verdict = Verdict::no;
    return finish(rec);
  }

  std::atomic<std::uint64_t> node_pool{0};
  std::atomic<bool> stop{false};
  int threads = opt.deterministic ? 1 : std::max(1, opt.threads);

  struct UnitResult {
    detail::TableSearch::Outcome outcome;
    std::vector<int> table;
    SearchStats stats;
  };
  std::vector<UnitResult> results(units.size());

  auto run_unit = [&](size_t i) {
    UnitResult& ur = results[i];
    ur.stats.units = 1;
    detail::TableSearch ts(p, units[i].scols, units[i].identity, opt, ur.stats, node_pool,
                           opt.budget, threads > 1 ? &stop : nullptr);
    if (!ts.seed_identity()) {
      ur.outcome = detail::TableSearch::Outcome::exhausted;
      return;
    }
    ur.outcome = ts.run(ur.table);
    if (ts.budget_hit) ur.outcome = detail::TableSearch::Outcome::aborted;
    if (ur.outcome == detail::TableSearch::Outcome::found) stop.store(true);
  };

  if (threads <= 1) {
    for (size_t i = 0; i < units.size(); ++i) {
      run_unit(i);
      rec.stats.add(results[i].stats);
      if (results[i].outcome == detail::TableSearch::Outcome::found) break;
      if (results[i].outcome == detail::TableSearch::Outcome::aborted) break;
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= units.size()) return;
          if (stop.load(std::memory_order_relaxed)) {
            results[i].outcome = detail::TableSearch::Outcome::aborted;
            continue;
          }
          run_unit(i);
        }
      });
    for (auto& th : pool) th.join();
    for (auto& r : results) rec.stats.add(r.stats);
  }

  // aggregate: first found wins (lowest unit index for determinism)
  int found_at = -1;
  bool budget_hit = false;
  for (size_t i = 0; i < units.size(); ++i) {
    if (results[i].outcome == detail::TableSearch::Outcome::found) {
      found_at = (int)i;
      break;
    }
    if (results[i].outcome == detail::TableSearch::Outcome::aborted) budget_hit = true;
  }

  if (found_at >= 0) {
    const detail::SearchUnit& u = units[found_at];
    Mask s(p.n());
    for (int x = 0; x < p.n(); ++x)
      if ((u.scols >> x) & 1) s.set(x);
    CertKind kind = CertKind::semigroup;
    std::optional<int> identity;
    switch (q) {
      case ClassQuery::semigroup: kind = CertKind::semigroup; break;
      case ClassQuery::monoid: kind = CertKind::monoid; identity = u.identity; break;
      case ClassQuery::full: kind = CertKind::full; break;
      case ClassQuery::full_monoid: kind = CertKind::full_monoid; identity = u.identity; break;
      default: break;
    }
    rec.cert = Certificate{OpTable(p.n(), results[found_at].table), s, kind, identity};
    VerifyResult vr = verify_certificate(p, *rec.cert);
    if (!vr)
      throw CertificateInvalid("search produced an invalid certificate: " +
                               failure_name(vr.reason) + " (" + vr.detail + ")");
    rec.verdict = Verdict::yes;
    return finish(rec);
  }
  rec.verdict = budget_hit ? Verdict::unknown : Verdict::no;
  return finish(rec);
}

// Position of a poset in the class inclusion diagram.
struct ClassLabelSet {
  Recognition semigroup, monoid, full, full_monoid;
  bool act_yes = true;

  const Recognition& get(ClassQuery q) const {
    switch (q) {
      case ClassQuery::semigroup: return semigroup;
      case ClassQuery::monoid: return monoid;
      case ClassQuery::full: return full;
      default: return full_monoid;
    }
  }
  // inclusion diagram consistency
  bool consistent() const {
    auto yes = [](const Recognition& r) { return r.verdict == Verdict::yes; };
    if (yes(full_monoid) && !(yes(full) && yes(monoid))) return false;
    if ((yes(full) || yes(monoid)) && !yes(semigroup)) return false;
    return true;
  }
};

namespace detail {
inline Certificate with_kind(const Certificate& c, CertKind k, std::optional<int> id) {
  Certificate out = c;
  out.kind = k;
  out.identity = id;
  return out;
}
}  // namespace detail

// Runs all four class queries with shared work: with a global minimum a
// single identity-constrained search decides every class; otherwise the
// full-monoid answer is immediate and the semigroup search reuses the other
// verdicts before sweeping the remaining upsets.
inline ClassLabelSet classify(const Poset& p, const SearchOptions& opt = {}) {
  ClassLabelSet out;
  Extremes ext = extremes(p);
  if (ext.global_min && p.n() <= detail::kMaxSearchN) {
    Recognition base = recognize(p, ClassQuery::full_monoid, opt);
    out.full_monoid = base;
    out.semigroup = base;
    out.monoid = base;
    out.full = base;
    if (base.verdict == Verdict::yes) {
      int e = *ext.global_min;
      out.semigroup.cert = detail::with_kind(*base.cert, CertKind::semigroup, {});
      out.monoid.cert = detail::with_kind(*base.cert, CertKind::monoid, e);
      out.full.cert = detail::with_kind(*base.cert, CertKind::full, {});
    }
    return out;
  }
  out.full_monoid = recognize(p, ClassQuery::full_monoid, opt);  // no: no minimum
  out.full = recognize(p, ClassQuery::full, opt);
  out.monoid = recognize(p, ClassQuery::monoid, opt);
  if (out.full.verdict == Verdict::yes) {
    out.semigroup = out.full;
    out.semigroup.cert = detail::with_kind(*out.full.cert, CertKind::semigroup, {});
  } else if (out.monoid.verdict == Verdict::yes) {
    out.semigroup = out.monoid;
    out.semigroup.cert = detail::with_kind(*out.monoid.cert, CertKind::semigroup, {});
  } else {
    out.semigroup = recognize(p, ClassQuery::semigroup, opt);
  }
  return out;
}

// ---- census over isomorphism classes ----

struct CensusEntry {
  Poset poset;
  ClassLabelSet labels;
};

struct CensusCell {
  // key bits: semigroup, monoid, full, full_monoid
  int count = 0;
  std::optional<int> min_witness;  // index into entries
};

struct CensusReport {
  int n_max = 0;
  std::vector<CensusEntry> entries;
  // cell key -> aggregate; key = sg | mono<<1 | full<<2 | fm<<3, -1 collects unknowns
  std::map<int, CensusCell> cells;
  int unknown_count = 0;
};

inline CensusReport census(int n_max, const SearchOptions& opt = {}, int cap = 6) {
  if (n_max > cap) throw SizeLimit("census capped at " + std::to_string(cap) + " elements");
  CensusReport rep;
  rep.n_max = n_max;
  for (int n = 1; n <= n_max; ++n) {
    for_each_poset(n, [&](const Poset& p) {
      ClassLabelSet labels = classify(p, opt);
      int idx = (int)rep.entries.size();
      bool unknown = false;
      int key = 0;
      auto bit = [&](const Recognition& r, int b) {
        if (r.verdict == Verdict::unknown) unknown = true;
        if (r.verdict == Verdict::yes) key |= 1 << b;
      };
      bit(labels.semigroup, 0);
      bit(labels.monoid, 1);
      bit(labels.full, 2);
      bit(labels.full_monoid, 3);
      rep.entries.push_back({p, std::move(labels)});
      if (unknown) {
        ++rep.unknown_count;
      } else {
        CensusCell& cell = rep.cells[key];
        cell.count += 1;
        if (!cell.min_witness) cell.min_witness = idx;
      }
      return true;
    });
  }
  return rep;
}

}  // namespace cayley
