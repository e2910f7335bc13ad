#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "cayley/poset.hpp"

namespace cayley {

namespace detail {

// Iterated refinement by (|downset|, |upset|) and neighbor color multisets.
// Class order keeps |downset| as the leading key, so every class-respecting
// labeling is a linear extension; enumerate_posets relies on that.
inline std::vector<int> refine_colors(const Poset& p) {
  int n = p.n();
  std::vector<std::vector<long long>> sig(n);
  std::vector<int> color(n, 0);
  for (int x = 0; x < n; ++x)
    sig[x] = {(long long)p.down(x).count(), (long long)p.up(x).count()};
  auto assign = [&]() {
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int x = 0; x < n; ++x)
      color[x] = (int)(std::lower_bound(sorted.begin(), sorted.end(), sig[x]) -
                       sorted.begin());
    return (int)sorted.size();
  };
  int classes = assign();
  while (classes < n) {
    for (int x = 0; x < n; ++x) {
      std::vector<long long> s = {color[x]};
      std::vector<long long> ups, downs;
      p.up(x).for_each([&](int y) { ups.push_back(color[y]); });
      p.down(x).for_each([&](int y) { downs.push_back(color[y]); });
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      s.insert(s.end(), ups.begin(), ups.end());
      s.push_back(-1);
      s.insert(s.end(), downs.begin(), downs.end());
      sig[x] = std::move(s);
    }
    int next = assign();
    if (next == classes) break;
    classes = next;
  }
  return color;
}

}  // namespace detail

struct CanonicalForm {
  // perm[new_index] = old_index
  std::vector<int> perm;
  // canonical relation matrix, key[i*n+j] = (perm[i] <= perm[j])
  std::vector<std::uint8_t> key;
};

// Minimal relation matrix over all labelings compatible with the refined
// color classes.  Minimality is taken in "staircase" cell order (cells
// grouped by max(i,j)), which lets the search decide and compare cells in
// the same order it places elements.
inline CanonicalForm canonical_form(const Poset& p) {
  const int n = p.n();
  std::vector<int> color = detail::refine_colors(p);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return color[a] < color[b]; });
  std::vector<int> class_of_pos(n);
  for (int i = 0; i < n; ++i) class_of_pos[i] = color[order[i]];

  std::vector<std::uint8_t> best(n * n), cur(n * n, 0);
  std::vector<int> best_perm = order, perm(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) best[i * n + j] = p.leq(order[i], order[j]) ? 1 : 0;

  std::vector<char> used(n, 0);
  long long best_version = 0;

  enum { TIE, BETTER };
  std::function<void(int, int)> rec = [&](int k, int state) {
    if (k == n) {
      if (state == BETTER) {
        best = cur;
        best_perm = perm;
        ++best_version;
      }
      return;
    }
    long long seen_version = best_version;
    for (int x = 0; x < n; ++x) {
      if (used[x] || color[x] != class_of_pos[k]) continue;
      if (best_version != seen_version) {
        // best was replaced from inside this subtree, so the current prefix
        // now ties with it
        state = TIE;
        seen_version = best_version;
      }
      int local = state;
      bool viable = true;
      auto put = [&](int cell, std::uint8_t v) {
        cur[cell] = v;
        if (local == TIE) {
          if (v < best[cell]) local = BETTER;
          else if (v > best[cell]) viable = false;
        }
      };
      for (int i = 0; i < k && viable; ++i) put(i * n + k, p.leq(perm[i], x));
      for (int i = 0; i < k && viable; ++i) put(k * n + i, p.leq(x, perm[i]));
      if (viable) cur[k * n + k] = 1;
      if (!viable) continue;
      perm[k] = x;
      used[x] = 1;
      rec(k + 1, local);
      used[x] = 0;
      perm[k] = -1;
    }
  };
  rec(0, TIE);
  return CanonicalForm{best_perm, best};
}

inline std::vector<std::uint8_t> canonical_key(const Poset& p) {
  return canonical_form(p).key;
}

// Order isomorphism P -> Q if one exists; map[x in P] = image in Q.
inline std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q) {
  if (p.n() != q.n()) return std::nullopt;
  CanonicalForm cp = canonical_form(p);
  CanonicalForm cq = canonical_form(q);
  if (cp.key != cq.key) return std::nullopt;
  std::vector<int> map(p.n());
  for (int i = 0; i < p.n(); ++i) map[cp.perm[i]] = cq.perm[i];
  return map;
}

// One representative per isomorphism class, streamed in a fixed order.
// Labeled posets are generated by repeatedly appending a new element that is
// maximal so far, choosing its strict downset among the downward closed
// subsets; a poset is emitted iff its own labeling is the canonical one.
template <class F>
void for_each_poset(int n, F visit) {
  if (n <= 0 || n > 60) return;
  std::vector<std::uint64_t> down(n, 0);
  bool stopped = false;
  std::function<void(int)> rec = [&](int k) {
    if (stopped) return;
    if (k == n) {
      std::vector<char> leq(n * n, 0);
      for (int x = 0; x < n; ++x) {
        leq[x * n + x] = 1;
        for (int y = 0; y < n; ++y)
          if ((down[x] >> y) & 1) leq[y * n + x] = 1;
      }
      Poset p = Poset::from_relation(n, leq);
      std::vector<std::uint8_t> self(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) self[i * n + j] = p.leq(i, j) ? 1 : 0;
      if (self == canonical_key(p)) {
        if (!visit(p)) stopped = true;
      }
      return;
    }
    for (std::uint64_t d = 0; d < (std::uint64_t{1} << k); ++d) {
      bool closed = true;
      for (int y = 0; y < k && closed; ++y)
        if (((d >> y) & 1) && (down[y] & ~d)) closed = false;
      if (!closed) continue;
      down[k] = d;
      rec(k + 1);
    }
    down[k] = 0;
  };
  rec(0);
}

inline std::vector<Poset> enumerate_posets(int n, int cap = 7) {
  if (n > cap) throw SizeLimit("poset enumeration capped at " + std::to_string(cap));
  std::vector<Poset> out;
  for_each_poset(n, [&](const Poset& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

}  // namespace cayley
