#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayley/core.hpp"

namespace cayley {

// Finite poset on indices 0..n-1.  The full reflexive <= relation is stored
// as one upset and one downset mask per element, so comparability tests and
// principal sets are O(1).  Immutable after construction.
class Poset {
public:
  Poset() = default;

  // `leq` is the full relation, leq[x*n+y] != 0 iff x <= y.  Validates
  // reflexivity, antisymmetry and transitivity.
  static Poset from_relation(int n, const std::vector<char>& leq,
                             std::vector<std::string> labels = {}) {
    if (n <= 0) throw Error("poset must have at least one element");
    if ((int)leq.size() != n * n) throw Error("relation size mismatch");
    Poset p;
    p.n_ = n;
    p.up_.assign(n, Mask(n));
    p.down_.assign(n, Mask(n));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (leq[x * n + y]) {
          p.up_[x].set(y);
          p.down_[y].set(x);
        }
    p.validate();
    if (!labels.empty()) {
      if ((int)labels.size() != n) throw Error("label count mismatch");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (labels[i] == labels[j]) throw Error("duplicate label: " + labels[i]);
      p.labels_ = std::move(labels);
    }
    return p;
  }

  int n() const { return n_; }
  bool leq(int x, int y) const { return up_[x].test(y); }
  bool lt(int x, int y) const { return x != y && leq(x, y); }
  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }

  const Mask& up(int x) const { return up_[x]; }
  const Mask& down(int x) const { return down_[x]; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int x) const {
    return labels_.empty() ? std::to_string(x) : labels_[x];
  }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.n_ == b.n_ && a.up_ == b.up_;
  }

private:
  void validate() const {
    for (int x = 0; x < n_; ++x) {
      if (!leq(x, x)) throw Error("relation not reflexive");
      for (int y = next_in(up_[x], 0); y >= 0; y = next_in(up_[x], y + 1)) {
        if (y != x && leq(y, x)) throw CycleError("antisymmetry violated");
        if (!up_[y].subset_of(up_[x]))
          throw Error("relation not transitive");
      }
    }
  }
  static int next_in(const Mask& m, int from) { return m.next(from); }

  int n_ = 0;
  std::vector<Mask> up_, down_;
  std::vector<std::string> labels_;
};

// Order-preserving self-map of a poset, stored as a function table.
struct Endomorphism {
  std::vector<int> map;
  int operator()(int x) const { return map[x]; }
  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;
};

inline bool is_order_endomorphism(const Poset& p, const std::vector<int>& map) {
  if ((int)map.size() != p.n()) return false;
  for (int x = 0; x < p.n(); ++x) {
    if (map[x] < 0 || map[x] >= p.n()) return false;
    for (int y = 0; y < p.n(); ++y)
      if (p.leq(x, y) && !p.leq(map[x], map[y])) return false;
  }
  return true;
}

inline Endomorphism make_endomorphism(const Poset& p, std::vector<int> map) {
  if (!is_order_endomorphism(p, map))
    throw Error("map is not an order endomorphism");
  return Endomorphism{std::move(map)};
}

// Builds the poset generated by `relations` (pairs meaning first < second)
// over a declared label set: reflexive-transitive closure, then the
// antisymmetry check.  Label order fixes the element indices.
inline Poset build_poset(const std::vector<std::string>& label_set,
                         const std::vector<std::pair<std::string, std::string>>& relations) {
  int n = (int)label_set.size();
  auto index_of = [&](const std::string& s) {
    for (int i = 0; i < n; ++i)
      if (label_set[i] == s) return i;
    throw UnknownLabel("unknown label: " + s);
  };
  std::vector<char> leq(n * n, 0);
  for (int i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (auto& [a, b] : relations) leq[index_of(a) * n + index_of(b)] = 1;
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      if (leq[x * n + k])
        for (int y = 0; y < n; ++y)
          if (leq[k * n + y]) leq[x * n + y] = 1;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (leq[x * n + y] && leq[y * n + x])
        throw CycleError("relations force " + label_set[x] + " = " + label_set[y]);
  return Poset::from_relation(n, leq, label_set);
}

// Index-pair variant used by file parsing and tests.
inline Poset build_poset_indices(int n, const std::vector<std::pair<int, int>>& relations,
                                 std::vector<std::string> labels = {}) {
  if (n <= 0) throw Error("poset must have at least one element");
  std::vector<char> leq(n * n, 0);
  for (int i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (auto& [a, b] : relations) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw Error("relation index out of range");
    leq[a * n + b] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      if (leq[x * n + k])
        for (int y = 0; y < n; ++y)
          if (leq[k * n + y]) leq[x * n + y] = 1;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (leq[x * n + y] && leq[y * n + x])
        throw CycleError("cycle through elements " + std::to_string(x) + " and " +
                         std::to_string(y));
  return Poset::from_relation(n, leq, std::move(labels));
}

// Cover pairs (x, y): x < y with nothing strictly between.  Their transitive
// closure recovers the poset.
inline std::vector<std::pair<int, int>> hasse(const Poset& p) {
  std::vector<std::pair<int, int>> covers;
  for (int x = 0; x < p.n(); ++x)
    for (int y = 0; y < p.n(); ++y) {
      if (!p.lt(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < p.n() && cover; ++z)
        if (z != x && z != y && p.lt(x, z) && p.lt(z, y)) cover = false;
      if (cover) covers.emplace_back(x, y);
    }
  return covers;
}

enum class Dir { up, down };

inline Mask principal_set(const Poset& p, int x, Dir dir) {
  return dir == Dir::up ? p.up(x) : p.down(x);
}

inline Mask incomparables(const Poset& p, int x) {
  Mask m = Mask::full(p.n()) - p.up(x);
  return m - p.down(x);
}

struct Extremes {
  Mask minima, maxima;
  std::optional<int> global_min, global_max;
  std::optional<Mask> atoms;  // minimal elements of P minus the global minimum
};

inline Extremes extremes(const Poset& p) {
  Extremes e{Mask(p.n()), Mask(p.n()), {}, {}, {}};
  for (int x = 0; x < p.n(); ++x) {
    if (p.down(x).count() == 1) e.minima.set(x);
    if (p.up(x).count() == 1) e.maxima.set(x);
    if (p.up(x).count() == p.n()) e.global_min = x;
    if (p.down(x).count() == p.n()) e.global_max = x;
  }
  if (e.global_min) {
    Mask atoms(p.n());
    for (int x = 0; x < p.n(); ++x) {
      if (x == *e.global_min) continue;
      if (p.down(x).count() == 2) atoms.set(x);  // only min below it
    }
    e.atoms = atoms;
  }
  return e;
}

// Emits every order-preserving self-map exactly once, in lexicographic order
// of the function table.  Callback may return false to stop.
template <class F>
void for_each_order_endomorphism(const Poset& p, F visit) {
  int n = p.n();
  std::vector<int> map(n, -1);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return visit(Endomorphism{map});
    for (int v = 0; v < n; ++v) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (p.leq(j, i) && !p.leq(map[j], v)) ok = false;
        if (p.leq(i, j) && !p.leq(v, map[j])) ok = false;
      }
      if (!ok) continue;
      map[i] = v;
      if (!rec(i + 1)) return false;
    }
    map[i] = -1;
    return true;
  };
  rec(0);
}

inline std::vector<Endomorphism> order_endomorphisms(const Poset& p,
                                                     std::size_t max_count = 1u << 20) {
  if (p.n() > 12) throw SizeLimit("endomorphism enumeration capped at 12 elements");
  std::vector<Endomorphism> out;
  bool hit_cap = false;
  for_each_order_endomorphism(p, [&](const Endomorphism& e) {
    if (out.size() >= max_count) {
      hit_cap = true;
      return false;
    }
    out.push_back(e);
    return true;
  });
  if (hit_cap) throw SizeLimit("endomorphism count exceeds cap");
  return out;
}

// Weak order with the given level sizes, level 0 at the bottom.
// Elements are indexed level by level.
inline Poset weak_order(const std::vector<int>& levels) {
  if (levels.empty()) throw Error("weak_order: empty level list");
  int n = 0;
  for (int s : levels) {
    if (s <= 0) throw Error("weak_order: level sizes must be positive");
    n += s;
  }
  std::vector<int> level_of(n);
  {
    int i = 0;
    for (size_t l = 0; l < levels.size(); ++l)
      for (int j = 0; j < levels[l]; ++j) level_of[i++] = (int)l;
  }
  std::vector<char> leq(n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x == y || level_of[x] < level_of[y]) leq[x * n + y] = 1;
  return Poset::from_relation(n, leq);
}

// Series-parallel expression tree.  Leaves are singletons; internal nodes
// compose two or more children.
struct SPExpression {
  enum class Node { leaf, series, parallel };
  Node node = Node::leaf;
  std::vector<SPExpression> children;

  static SPExpression leaf() { return {}; }
  static SPExpression series(std::vector<SPExpression> cs) {
    if (cs.size() < 2) throw Error("series node needs at least 2 children");
    return {Node::series, std::move(cs)};
  }
  static SPExpression parallel(std::vector<SPExpression> cs) {
    if (cs.size() < 2) throw Error("parallel node needs at least 2 children");
    return {Node::parallel, std::move(cs)};
  }
  int leaf_count() const {
    if (node == Node::leaf) return 1;
    int c = 0;
    for (auto& ch : children) c += ch.leaf_count();
    return c;
  }
};

// Series: every element of an earlier child lies below every element of a
// later child.  Parallel: disjoint union.  Child blocks keep their index
// order inside the result.
inline Poset eval_sp(const SPExpression& e) {
  if (e.node == SPExpression::Node::leaf)
    return Poset::from_relation(1, {1});
  std::vector<Poset> parts;
  parts.reserve(e.children.size());
  for (auto& ch : e.children) parts.push_back(eval_sp(ch));
  int n = 0;
  for (auto& q : parts) n += q.n();
  std::vector<char> leq(n * n, 0);
  int off_a = 0;
  for (size_t a = 0; a < parts.size(); ++a) {
    const Poset& qa = parts[a];
    for (int x = 0; x < qa.n(); ++x)
      for (int y = 0; y < qa.n(); ++y)
        if (qa.leq(x, y)) leq[(off_a + x) * n + (off_a + y)] = 1;
    if (e.node == SPExpression::Node::series) {
      int off_b = off_a + qa.n();
      for (size_t b = a + 1; b < parts.size(); ++b) {
        for (int x = 0; x < qa.n(); ++x)
          for (int y = 0; y < parts[b].n(); ++y)
            leq[(off_a + x) * n + (off_b + y)] = 1;
        off_b += parts[b].n();
      }
    }
    off_a += qa.n();
  }
  return Poset::from_relation(n, leq);
}

namespace detail {
// Tests whether the4-element induced pattern {a,b,c,d} with a<b, c<b, c<d
// and no other strict relations occurs; that pattern characterizes non-SP.
inline bool induced_n_on(const Poset& p, int a, int b, int c, int d) {
  return p.lt(a, b) && p.lt(c, b) && p.lt(c, d) && !p.comparable(a, c) &&
         !p.comparable(a, d) && !p.comparable(b, d) && !p.lt(b, a) && !p.lt(d, c);
}
}  // namespace detail

inline bool is_series_parallel(const Poset& p) {
  int n = p.n();
  std::vector<int> e(4);
  for (e[0] = 0; e[0] < n; ++e[0])
    for (e[1] = 0; e[1] < n; ++e[1])
      for (e[2] = 0; e[2] < n; ++e[2])
        for (e[3] = 0; e[3] < n; ++e[3]) {
          if (e[0] == e[1] || e[0] == e[2] || e[0] == e[3] || e[1] == e[2] ||
              e[1] == e[3] || e[2] == e[3])
            continue;
          if (detail::induced_n_on(p, e[0], e[1], e[2], e[3])) return false;
        }
  return true;
}

// The running example of the paper-side figures: a < b, c < b, c < d.
inline Poset n_poset() {
  return build_poset({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "b"}, {"c", "d"}});
}

}  // namespace cayley
