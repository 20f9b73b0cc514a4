#include "oracles.hpp"
#include "tsurf/counting.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/origami.hpp"
#include "tsurf/origami_io.hpp"

#include <doctest.h>

#include <random>

using namespace tsurf;

namespace {
Origami make(const char* h, const char* v, int n) { return Origami(Perm::parse(h, n), Perm::parse(v, n)); }
}  // namespace

TEST_SUITE("origami") {
  TEST_CASE("validation") {
    CHECK(validate(std::vector<int>{0}, std::vector<int>{0}, 1).connected);
    auto two = validate(std::vector<int>{1, 0}, std::vector<int>{0, 1}, 1);
    CHECK(two.bijective);
    CHECK(two.connected);
    auto split = validate(std::vector<int>{0, 1}, std::vector<int>{0, 1}, 1);
    CHECK_FALSE(split.connected);
    CHECK(split.components == 2);
    auto bad = validate(std::vector<int>{0, 0}, std::vector<int>{0, 1}, 1);
    CHECK_FALSE(bad.bijective);
    CHECK_THROWS_AS(genus(make("()", "()", 2)), DomainError);
  }

  TEST_CASE("singularities and genus") {
    Origami torus = make("()", "()", 1);
    CHECK(torus.vertices().size() == 1);
    CHECK(singularities(torus).cones.empty());
    CHECK(genus(torus) == 1);
    Origami l3 = make("(0 1 2)", "(1 2)", 3);
    auto cd = singularities(l3);
    REQUIRE(cd.cones.size() == 1);
    CHECK(cd.cones[0].angle_multiple == 3);
    CHECK(cd.zero_orders() == std::vector<int>{2});
    CHECK(genus(l3) == 2);
  }

  TEST_CASE("labels must be constant on vertices") {
    CHECK_THROWS_AS(Origami(Perm::parse("(0 1 2)", 3), Perm::parse("(1 2)", 3), 1, {1, 0, 0}), DomainError);
    Origami ok(Perm::parse("(0 1)", 2), Perm::parse("(0 1)", 2), 1, {1, 1});
    CHECK(ok.has_marks());
  }

  TEST_CASE("period lattices") {
    CHECK(period_lattice(make("()", "()", 1)).is_standard());
    Lattice2 l = period_lattice(make("(0 1)", "()", 2));
    CHECK(l.e1 == std::array<long long, 2>{2, 0});
    CHECK(l.e2 == std::array<long long, 2>{0, 1});
    CHECK(period_lattice(make("(0 1 2)", "(1 2)", 3)).is_standard());
    CHECK(period_lattice(marked_torus(3, 1, 1)).is_scaled_standard(3));
  }

  TEST_CASE("canonical forms and isomorphism") {
    Origami a = make("(0 1)", "()", 2);
    Origami b(Perm(std::vector<int>{1, 0}), Perm::identity(2));
    CHECK(canonical_key(a) == canonical_key(b));
    CHECK_FALSE(isomorphic(a, make("()", "(0 1)", 2)));
    CHECK(canonical_key(make("()", "()", 1)) == canonical_key(canonical_form(make("()", "()", 1))));
  }

  TEST_CASE("canonical forms are relabelling invariant") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      Origami o = oracle::random_origami(2 + trial % 9, rng);
      Origami r = oracle::relabel(o, rng);
      CHECK(canonical_key(o) == canonical_key(r));
      CHECK(canonical_key(canonical_form(o)) == canonical_key(o));
      CHECK(automorphism_count(o) == automorphism_count(r));
    }
    Origami m = marked_torus(4, 1, 2);
    CHECK(canonical_key(m) == canonical_key(oracle::relabel(m, rng)));
  }

  TEST_CASE("automorphisms against brute force") {
    CHECK(automorphism_count(make("()", "()", 1)) == 1);
    CHECK(automorphism_count(make("(0 1)", "(0 1)", 2)) == 2);
    CHECK(automorphism_count(make("(0 1 2)", "(1 2)", 3)) == 1);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      Origami o = oracle::random_origami(1 + trial % 8, rng);
      CHECK(automorphism_count(o) == oracle::automorphisms(o));
    }
    for (int n = 2; n <= 4; ++n) CHECK(automorphism_count(marked_torus(n, 1, 0)) == oracle::automorphisms(marked_torus(n, 1, 0)));
  }

  TEST_CASE("rotation by pi") {
    Origami o = make("(0 1 2)", "(1 2)", 3);
    Origami r = rotate_pi(o);
    CHECK(genus(r) == genus(o));
    CHECK(isomorphic(rotate_pi(r), o));
  }

  TEST_CASE("text format round trip") {
    Origami torus = make("()", "()", 1);
    CHECK(to_text(parse_origami(to_text(torus))) == to_text(torus));
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      Origami o = oracle::random_origami(1 + trial % 10, rng);
      CHECK(canonical_key(parse_origami(to_text(o))) == canonical_key(o));
    }
    Origami m = marked_torus(3, 2, 1);
    Origami back = parse_origami(to_text(m));
    CHECK(canonical_key(back) == canonical_key(m));
    CHECK(back.unit_length() == Rational(1, 3));
    CHECK_THROWS_AS(parse_origami("n=2 unit=1\nh=(0 1)\n"), DomainError);
    CHECK_THROWS_AS(parse_origami("n=2 unit=1\nh=(0 1)\nv=(0 5)\n"), DomainError);
  }
}
