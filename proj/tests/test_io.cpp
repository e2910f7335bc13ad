#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cayley/io.hpp"
#include "fixtures.hpp"

using namespace cayley;

TEST_CASE("poset JSON roundtrip") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    Poset p = fixtures::random_poset(rng, 1 + (int)(rng() % 8));
    Poset back = poset_from_json(poset_to_json(p));
    REQUIRE(back == p);
  }
  Poset n = n_poset();
  Poset back = poset_from_json(poset_to_json(n));
  REQUIRE(back == n);
  REQUIRE(back.labels() == n.labels());
}

TEST_CASE("poset JSON schema errors") {
  REQUIRE_THROWS_AS(poset_from_json(json::parse(R"({"covers": []})")), SchemaError);
  REQUIRE_THROWS_AS(poset_from_json(json::parse(R"({"n": 0})")), SchemaError);
  REQUIRE_THROWS_AS(poset_from_json(json::parse(R"({"n": 2, "covers": [[0, 5]]})")),
                    SchemaError);
  REQUIRE_THROWS_AS(poset_from_json(json::parse(R"({"n": 2, "covers": [[0]]})")),
                    SchemaError);
  // a cover cycle is a CycleError, not a schema problem
  REQUIRE_THROWS_AS(poset_from_json(json::parse(R"({"n": 2, "covers": [[0,1],[1,0]]})")),
                    CycleError);
  // empty cover list parses to an antichain
  REQUIRE(poset_from_json(json::parse(R"({"n": 3, "covers": []})")) == weak_order({3}));
}

TEST_CASE("certificate JSON is bit-exact") {
  Recognition r = recognize(n_poset(), ClassQuery::monoid);
  json j = certificate_to_json(*r.cert);
  Certificate back = certificate_from_json(j);
  REQUIRE(back.table == r.cert->table);
  REQUIRE(back.s_subset == r.cert->s_subset);
  REQUIRE(back.kind == r.cert->kind);
  REQUIRE(back.identity == r.cert->identity);
  REQUIRE(json::parse(j.dump()) == j);
  REQUIRE(verify_certificate(n_poset(), back).ok);
}

TEST_CASE("presentation JSON roundtrip") {
  MonoidPresentation p = make_presentation(1, {2}, {{1, 0}, {1, 1}});
  MonoidPresentation back = presentation_from_json(presentation_to_json(p));
  REQUIRE(back.free_rank == p.free_rank);
  REQUIRE(back.torsion == p.torsion);
  REQUIRE(back.generators == p.generators);
}

TEST_CASE("DOT export is deterministic and annotates S") {
  Poset n = n_poset();
  Recognition r = recognize(n, ClassQuery::monoid);
  std::string a = export_dot(n, &*r.cert);
  std::string b = export_dot(n, &*r.cert);
  REQUIRE(a == b);
  REQUIRE(a.find("rankdir=BT") != std::string::npos);
  REQUIRE(a.find("peripheries=2") != std::string::npos);
  std::string plain = export_dot(weak_order({1, 1}));
  REQUIRE(plain.find("n0 -> n1") != std::string::npos);
  REQUIRE(plain.find("peripheries") == std::string::npos);
}

TEST_CASE("digests") {
  REQUIRE(digest_hex("") == digest_hex(""));
  REQUIRE(digest_hex("a") != digest_hex("b"));
  REQUIRE(digest_hex("cayley").size() == 16);
}
