#include "tsurf/errors.hpp"
#include "tsurf/perm.hpp"

#include <doctest.h>

using namespace tsurf;

TEST_SUITE("perm") {
  TEST_CASE("parse and print round trip") {
    Perm p = Perm::parse("(0 2 1)(3 4)", 6);
    CHECK(p(0) == 2);
    CHECK(p(2) == 1);
    CHECK(p(1) == 0);
    CHECK(p(5) == 5);
    CHECK(p.to_string() == "(0 2 1)(3 4)");
    CHECK(Perm::parse(p.to_string(), 6) == p);
    CHECK(Perm::identity(3).to_string() == "()");
    CHECK(Perm::parse("()", 3).is_identity());
    CHECK(Perm::parse("", 3).is_identity());
  }

  TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(Perm(std::vector<int>{0, 0}), DomainError);
    CHECK_THROWS_AS(Perm::parse("(0 3)", 3), DomainError);
    CHECK_THROWS_AS(Perm::parse("(0 1)(1 2)", 3), DomainError);
  }

  TEST_CASE("composition applies the right factor first") {
    Perm a = Perm::parse("(0 1)", 3), b = Perm::parse("(1 2)", 3);
    Perm ab = a * b;
    CHECK(ab(1) == a(b(1)));
    CHECK(ab(1) == 2);
    CHECK(ab == Perm::parse("(0 1 2)", 3));
  }

  TEST_CASE("inverse, powers and conjugation") {
    Perm c = Perm::parse("(0 1 2 3 4)", 5);
    CHECK((c * c.inverse()).is_identity());
    CHECK(c.pow(5).is_identity());
    CHECK(c.pow(-1) == c.inverse());
    CHECK(c.pow(7) == c.pow(2));
    Perm g = Perm::parse("(0 3)", 5);
    CHECK(c.conjugate_by(g) == g * c * g.inverse());
    CHECK(c.conjugate_by(g).cycle_type() == c.cycle_type());
  }

  TEST_CASE("cycle data") {
    Perm p = Perm::parse("(0 1)(2 3 4)", 6);
    CHECK(p.cycle_type() == std::vector<int>{3, 2, 1});
    CHECK(p.cycles().size() == 3);
    CHECK(Perm::parse("(1 2)", 3).is_transposition());
    CHECK_FALSE(Perm::parse("(0 1 2)", 3).is_transposition());
    CHECK(Perm::parse("(0 2 1)", 3).is_full_cycle());
  }

  TEST_CASE("commutator and transitivity") {
    Perm h = Perm::parse("(0 1 2)", 3), v = Perm::parse("(1 2)", 3);
    CHECK(commutator(v, h) == v * h * v.inverse() * h.inverse());
    CHECK(commutator(v, h).cycle_type() == std::vector<int>{3});
    CHECK(is_transitive({h, v}));
    CHECK_FALSE(is_transitive({Perm::parse("(0 1)", 4), Perm::parse("(2 3)", 4)}));
    int n = 0;
    auto ids = orbit_ids({Perm::parse("(0 1)", 4), Perm::parse("(2 3)", 4)}, &n);
    CHECK(n == 2);
    CHECK(ids[0] == ids[1]);
    CHECK(ids[0] != ids[2]);
  }
}
