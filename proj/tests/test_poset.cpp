#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cayley/canonical.hpp"
#include "cayley/poset.hpp"
#include "fixtures.hpp"

using namespace cayley;

TEST_CASE("build_poset closes and validates") {
  Poset single = build_poset({"a"}, {});
  REQUIRE(single.n() == 1);

  Poset n = n_poset();
  REQUIRE(n.n() == 4);
  REQUIRE(hasse(n) == std::vector<std::pair<int, int>>{{0, 1}, {2, 1}, {2, 3}});

  REQUIRE_THROWS_AS(build_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
  REQUIRE_THROWS_AS(build_poset({"a"}, {{"a", "x"}}), UnknownLabel);
  REQUIRE_THROWS_AS(build_poset({"a", "a"}, {}), Error);

  // transitive chain through an intermediate forces closure
  Poset c = build_poset({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  REQUIRE(c.leq(0, 2));
}

TEST_CASE("hasse covers regenerate the order") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Poset p = fixtures::random_poset(rng, 1 + (int)(rng() % 7));
    std::vector<std::pair<int, int>> covers = hasse(p);
    Poset back = build_poset_indices(p.n(), covers);
    REQUIRE(back == p);
  }
  REQUIRE(hasse(weak_order({1, 1, 1})) ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  REQUIRE(hasse(weak_order({3})).empty());
}

TEST_CASE("principal sets and duality") {
  Poset n = n_poset();
  REQUIRE(principal_set(n, 2, Dir::up).to_vector() == std::vector<int>{1, 2, 3});
  REQUIRE(principal_set(n, 1, Dir::up).to_vector() == std::vector<int>{1});

  Poset nc = fixtures::nat_c(4);
  REQUIRE(principal_set(nc, 0, Dir::up).to_vector() == std::vector<int>{0, 2, 3, 4});

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Poset p = fixtures::random_poset(rng, 6);
    for (int x = 0; x < p.n(); ++x)
      for (int y = 0; y < p.n(); ++y)
        REQUIRE(principal_set(p, x, Dir::up).test(y) ==
                principal_set(p, y, Dir::down).test(x));
  }
}

TEST_CASE("extremes and atoms") {
  Poset anti = weak_order({2});
  Extremes e = extremes(anti);
  REQUIRE(e.minima.count() == 2);
  REQUIRE(e.maxima.count() == 2);
  REQUIRE_FALSE(e.global_min.has_value());
  REQUIRE_FALSE(e.atoms.has_value());

  Poset star = fixtures::nat_c_star(6);
  Extremes es = extremes(star);
  REQUIRE(es.global_min == 0);
  REQUIRE(es.maxima.count() == 2);  // 5 and 6
  REQUIRE(es.maxima.test(4));
  REQUIRE(es.maxima.test(5));

  Poset v = build_poset_indices(3, {{0, 1}, {0, 2}});
  Extremes ev = extremes(v);
  REQUIRE(ev.global_min == 0);
  REQUIRE(ev.atoms->to_vector() == std::vector<int>{1, 2});
}

TEST_CASE("incomparables") {
  Poset n = n_poset();
  REQUIRE(incomparables(n, 0).to_vector() == std::vector<int>{2, 3});
  REQUIRE(incomparables(n, 1).to_vector() == std::vector<int>{3});
  REQUIRE(incomparables(weak_order({1, 1, 1}), 1).none());
}

TEST_CASE("order endomorphism stream") {
  REQUIRE(order_endomorphisms(weak_order({1})).size() == 1);
  REQUIRE(order_endomorphisms(weak_order({1, 1})).size() == 3);
  REQUIRE(order_endomorphisms(weak_order({2})).size() == 4);

  // against plain enumeration of all self-maps
  Poset n = n_poset();
  std::size_t expected = 0;
  std::vector<int> map(4);
  for (map[0] = 0; map[0] < 4; ++map[0])
    for (map[1] = 0; map[1] < 4; ++map[1])
      for (map[2] = 0; map[2] < 4; ++map[2])
        for (map[3] = 0; map[3] < 4; ++map[3])
          if (is_order_endomorphism(n, map)) ++expected;
  std::vector<Endomorphism> endos = order_endomorphisms(n);
  REQUIRE(endos.size() == expected);
  REQUIRE(std::is_sorted(endos.begin(), endos.end(),
                         [](const Endomorphism& a, const Endomorphism& b) {
                           return a.map < b.map;
                         }));
  REQUIRE_THROWS_AS(order_endomorphisms(n, 3), SizeLimit);
}

TEST_CASE("weak orders") {
  REQUIRE(weak_order({1, 1, 1}).n() == 3);
  REQUIRE(hasse(weak_order({2, 2})).size() == 4);
  Poset w = weak_order({4, 4, 4});
  REQUIRE(w.n() == 12);
  for (int x = 0; x < 4; ++x)
    for (int y = 4; y < 8; ++y) REQUIRE(w.lt(x, y));
  REQUIRE_THROWS_AS(weak_order({}), Error);
  REQUIRE_THROWS_AS(weak_order({2, 0}), Error);
}

TEST_CASE("series-parallel evaluation and recognition") {
  SPExpression two_chain =
      SPExpression::series({SPExpression::leaf(), SPExpression::leaf()});
  REQUIRE(is_isomorphic(eval_sp(two_chain), weak_order({1, 1})).has_value());
  SPExpression two_anti =
      SPExpression::parallel({SPExpression::leaf(), SPExpression::leaf()});
  REQUIRE(is_isomorphic(eval_sp(two_anti), weak_order({2})).has_value());
  SPExpression vee = SPExpression::series({two_anti, SPExpression::leaf()});
  Poset v = eval_sp(vee);
  REQUIRE(v.n() == 3);
  REQUIRE(extremes(v).global_max.has_value());

  REQUIRE_FALSE(is_series_parallel(n_poset()));
  REQUIRE(is_series_parallel(weak_order({1, 1, 1, 1})));
  REQUIRE_FALSE(is_series_parallel(fixtures::nat_c(4)));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    SPExpression e = fixtures::random_sp(rng, 1 + (int)(rng() % 8));
    REQUIRE(is_series_parallel(eval_sp(e)));
  }
}
