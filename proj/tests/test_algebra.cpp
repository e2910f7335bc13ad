#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cayley/recognizer.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cayley;

namespace {

OpTable z_mod(int n) {
  std::vector<int> t(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return OpTable(n, t);
}

// random compatible acts: a small associative table from a pregenerated pool
// plus a compatible action found by backtracking with randomized value order
std::optional<SemigroupAct> random_act(std::mt19937_64& rng, int x_count, int s_count) {
  std::vector<int> t(s_count * s_count);
  OpTable sg;
  while (true) {
    for (int& v : t) v = (int)(rng() % s_count);
    OpTable cand(s_count, t);
    if (is_associative(cand)) {
      sg = cand;
      break;
    }
  }
  std::vector<int> action(x_count * s_count, -1);
  std::function<bool(int)> fill = [&](int i) -> bool {
    if (i == x_count * s_count) return true;
    std::vector<int> vals(x_count);
    for (int v = 0; v < x_count; ++v) vals[v] = v;
    std::shuffle(vals.begin(), vals.end(), rng);
    for (int v : vals) {
      action[i] = v;
      bool ok = true;
      for (int x = 0; x < x_count && ok; ++x)
        for (int s = 0; s < s_count && ok; ++s)
          for (int s2 = 0; s2 < s_count && ok; ++s2) {
            int xs = action[x * s_count + s];
            if (xs < 0) continue;
            int lhs = action[xs * s_count + s2];
            int rhs = action[x * s_count + sg.at(s, s2)];
            if (lhs >= 0 && rhs >= 0 && lhs != rhs) ok = false;
          }
      if (ok && fill(i + 1)) return true;
    }
    action[i] = -1;
    return false;
  };
  if (!fill(0)) return std::nullopt;
  return make_act(x_count, sg, action);
}

}  // namespace

TEST_CASE("associativity check") {
  REQUIRE(is_associative(OpTable(2, {0, 0, 0, 0})));
  REQUIRE(is_associative(z_mod(3)));
  OpTable broken = z_mod(3);
  std::vector<int> t = broken.t;
  t[1 * 3 + 2] = 1;  // patch one product
  REQUIRE_FALSE(is_associative(OpTable(3, t)));
}

TEST_CASE("check_act axioms") {
  // identity action of the trivial monoid
  SemigroupAct trivial = make_act(3, OpTable(1, {0}), {0, 1, 2});
  ActFlags f = check_act(trivial);
  REQUIRE(f.s_unital);
  REQUIRE(f.acyclic);

  // one idempotent s with 0s = 1s = 1: not s-unital at 0
  SemigroupAct push = make_act(2, OpTable(1, {0}), {1, 1});
  f = check_act(push);
  REQUIRE_FALSE(f.s_unital);
  REQUIRE(f.acyclic);

  // Z/2 acting on itself by addition: s-unital but cyclic
  SemigroupAct z2 = pair_act(z_mod(2), Mask::full(2));
  f = check_act(z2);
  REQUIRE(f.s_unital);
  REQUIRE_FALSE(f.acyclic);
  REQUIRE_THROWS_AS(cayley_poset(z2), NotAPartialOrder);

  REQUIRE_THROWS_AS(make_act(2, OpTable(1, {0}), {1, 0, 1}), IncompatibleAct);
}

TEST_CASE("cayley_poset of simple acts") {
  SemigroupAct trivial = make_act(3, OpTable(1, {0}), {0, 1, 2});
  REQUIRE(cayley_poset(trivial) == weak_order({3}));
}

TEST_CASE("cayley_poset succeeds exactly on s-unital acyclic acts") {
  std::mt19937_64 rng(17);
  int built = 0;
  while (built < 60) {
    auto act = random_act(rng, 1 + (int)(rng() % 4), 1 + (int)(rng() % 3));
    if (!act) continue;
    ++built;
    ActFlags f = check_act(*act);
    bool ok = true;
    Poset p;
    try {
      p = cayley_poset(*act);
    } catch (const NotAPartialOrder&) {
      ok = false;
    }
    REQUIRE(ok == (f.s_unital && f.acyclic));
    if (ok) {
      // brute-force partial order check of the reachability relation
      int n = act->x_count;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          bool reach = x == y;
          for (int s = 0; s < act->sg.n; ++s) reach |= act->act(x, s) == y;
          REQUIRE(p.leq(x, y) == reach);
        }
    }
  }
}

TEST_CASE("pair_act closure") {
  OpTable rz(2, {0, 1, 0, 1});  // right-zero semigroup
  REQUIRE(is_associative(rz));
  SemigroupAct full = pair_act(rz, Mask::full(2));
  REQUIRE(full.sg.n == 2);
  // a single idempotent generator makes a valid act (closed + compatible),
  // though not an s-unital one: 0 is moved away
  SemigroupAct one = pair_act(rz, Mask::single(2, 1));
  REQUIRE(one.sg.n == 1);
  REQUIRE_FALSE(check_act(one).s_unital);
  REQUIRE(check_act(one).acyclic);

  // {0} is not closed under the right-zero operation: 0*0 = 0.. pick a table
  // where it is not
  OpTable t(2, {1, 1, 1, 1});
  REQUIRE_THROWS_AS(pair_act(t, Mask::single(2, 0)), NotClosed);
}

TEST_CASE("inflationary act realizes every poset") {
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      SemigroupAct act = inflationary_act(p);
      long expected = 1;
      for (int x = 0; x < p.n(); ++x) expected *= p.up(x).count();
      REQUIRE(act.sg.n == expected);
      REQUIRE(cayley_poset(act) == p);
    }
  REQUIRE(inflationary_act(weak_order({2})).sg.n == 1);
  REQUIRE_THROWS_AS(inflationary_act(weak_order({1, 2, 2, 2, 2, 2})), SizeLimit);
}

TEST_CASE("left multiplications are order endomorphisms, injectively") {
  for (ClassQuery q : {ClassQuery::semigroup, ClassQuery::monoid, ClassQuery::full}) {
    Recognition r = recognize(n_poset(), q);
    REQUIRE(r.verdict == Verdict::yes);
    std::vector<Endomorphism> endos = left_mult_endomorphisms(n_poset(), *r.cert);
    REQUIRE(endos.size() == 4);
    for (size_t i = 0; i < endos.size(); ++i)
      for (size_t j = i + 1; j < endos.size(); ++j) REQUIRE(endos[i] != endos[j]);
  }
  // full monoid: the identity element's left multiplication is the identity
  Recognition fm = recognize(weak_order({1, 2}), ClassQuery::full_monoid);
  REQUIRE(fm.verdict == Verdict::yes);
  std::vector<Endomorphism> endos = left_mult_endomorphisms(weak_order({1, 2}), *fm.cert);
  REQUIRE(endos[*fm.cert->identity].map == std::vector<int>{0, 1, 2});

  Certificate bad = *fm.cert;
  bad.s_subset = Mask::single(3, 1);
  REQUIRE_THROWS_AS(left_mult_endomorphisms(weak_order({1, 2}), bad), CertificateInvalid);
}

TEST_CASE("idempotent consequences propagate and detect conflicts") {
  Poset star = fixtures::nat_c_star(6);
  PartialTable t = PartialTable::empty(star.n());
  PropagationResult r = idempotent_consequences(t, star);
  REQUIRE_FALSE(r.contradiction);
  REQUIRE(r.table.t == t.t);

  // 0*0 = 0 forces the whole identity row of the global minimum
  t.set(0, 0, 0);
  r = idempotent_consequences(t, star);
  REQUIRE_FALSE(r.contradiction);
  for (int x = 0; x < star.n(); ++x) REQUIRE(r.table.at(0, x) == x);

  t.set(0, 3, 2);  // conflicts with the forced value
  r = idempotent_consequences(t, star);
  REQUIRE(r.contradiction);
  REQUIRE(r.conflict == std::pair<int, int>(0, 3));
}

TEST_CASE("idempotent consequences never prune a completable table") {
  // partial restrictions of valid certificates stay consistent
  std::mt19937_64 rng(23);
  for (int n = 2; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      Recognition r = recognize(p, ClassQuery::semigroup);
      REQUIRE(r.verdict == Verdict::yes);
      for (int trial = 0; trial < 8; ++trial) {
        PartialTable t = PartialTable::empty(n);
        for (int c = 0; c < n * n; ++c)
          if (rng() & 1) t.t[c] = r.cert->table.t[c];
        REQUIRE_FALSE(idempotent_consequences(t, p).contradiction);
      }
    }
  // and against the brute-force completion oracle on small random partials
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + (int)(rng() % 2);
    Poset p = fixtures::random_poset(rng, n);
    PartialTable t = PartialTable::empty(n);
    for (int c = 0; c < n * n; ++c)
      if (rng() % 3 == 0) t.t[c] = (int)(rng() % n);
    if (!idempotent_consequences(t, p).contradiction) continue;
    // claimed contradiction: no completion of t may be a valid full certificate
    std::function<bool(int)> complete = [&](int i) -> bool {
      if (i == n * n) {
        Certificate cand{OpTable(n, t.t), Mask::full(n), CertKind::full, {}};
        return verify_certificate(p, cand).ok;
      }
      if (t.t[i] >= 0) return complete(i + 1);
      for (int v = 0; v < n; ++v) {
        t.t[i] = v;
        if (complete(i + 1)) return true;
      }
      t.t[i] = -1;
      return false;
    };
    REQUIRE_FALSE(complete(0));
  }
}
