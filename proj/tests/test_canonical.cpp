#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "cayley/canonical.hpp"
#include "fixtures.hpp"

using namespace cayley;

namespace {

// brute-force isomorphism search over all permutations
bool iso_brute(const Poset& p, const Poset& q) {
  if (p.n() != q.n()) return false;
  std::vector<int> perm(p.n());
  for (int i = 0; i < p.n(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (int x = 0; x < p.n() && ok; ++x)
      for (int y = 0; y < p.n() && ok; ++y)
        if (p.leq(x, y) != q.leq(perm[x], perm[y])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Poset relabel(const Poset& p, const std::vector<int>& perm) {
  int n = p.n();
  std::vector<char> leq(n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (p.leq(x, y)) leq[perm[x] * n + perm[y]] = 1;
  return Poset::from_relation(n, leq);
}

}  // namespace

TEST_CASE("isomorphism witnesses") {
  Poset n = n_poset();
  auto self = is_isomorphic(n, n);
  REQUIRE(self.has_value());
  REQUIRE(is_order_endomorphism(n, *self));

  REQUIRE_FALSE(is_isomorphic(weak_order({1, 1}), weak_order({2})).has_value());

  // the N-poset is self-dual: its order dual, relabeled, is isomorphic
  std::vector<char> dual(16, 0);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if (n.leq(y, x)) dual[x * 4 + y] = 1;
  Poset nd = Poset::from_relation(4, dual);
  REQUIRE(is_isomorphic(n, nd).has_value());
  REQUIRE(iso_brute(n, nd));
}

TEST_CASE("isomorphism agrees with brute force and is invariant under relabeling") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    int size = 2 + (int)(rng() % 5);
    Poset p = fixtures::random_poset(rng, size);
    Poset q = fixtures::random_poset(rng, size);
    REQUIRE(is_isomorphic(p, q).has_value() == iso_brute(p, q));

    std::vector<int> perm(size);
    for (int i = 0; i < size; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Poset pr = relabel(p, perm);
    auto witness = is_isomorphic(p, pr);
    REQUIRE(witness.has_value());
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y)
        REQUIRE(p.leq(x, y) == pr.leq((*witness)[x], (*witness)[y]));
  }
}

TEST_CASE("poset enumeration counts") {
  const int expected[] = {1, 2, 5, 16, 63, 318};
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    REQUIRE((int)enumerate_posets(n).size() == expected[n - 1]);
  }
  REQUIRE_THROWS_AS(enumerate_posets(8), SizeLimit);
}

TEST_CASE("enumeration emits one canonical representative per class") {
  for (int n = 3; n <= 4; ++n) {
    std::vector<Poset> reps = enumerate_posets(n);
    for (size_t i = 0; i < reps.size(); ++i)
      for (size_t j = i + 1; j < reps.size(); ++j)
        REQUIRE_FALSE(is_isomorphic(reps[i], reps[j]).has_value());
    // brute force: every partial order on n labeled points matches exactly one
    std::set<std::vector<std::uint8_t>> keys;
    for (auto& r : reps) keys.insert(canonical_key(r));
    int n2 = n * n;
    std::vector<char> leq(n2, 0);
    std::function<void(int)> sweep = [&](int cell) {
      if (cell == n2) {
        for (int i = 0; i < n; ++i)
          if (!leq[i * n + i]) return;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            if (x != y && leq[x * n + y] && leq[y * n + x]) return;
            if (leq[x * n + y])
              for (int z = 0; z < n; ++z)
                if (leq[y * n + z] && !leq[x * n + z]) return;
          }
        Poset p = Poset::from_relation(n, leq);
        REQUIRE(keys.count(canonical_key(p)) == 1);
        return;
      }
      leq[cell] = 1;
      sweep(cell + 1);
      leq[cell] = 0;
      sweep(cell + 1);
    };
    sweep(0);
  }
}

TEST_CASE("random posets match exactly one representative") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int size = 1 + (int)(rng() % 5);
    Poset p = fixtures::random_poset(rng, size);
    int hits = 0;
    for (auto& r : enumerate_posets(size))
      if (is_isomorphic(p, r).has_value()) ++hits;
    REQUIRE(hits == 1);
  }
}
