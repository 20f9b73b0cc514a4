#include "oracles.hpp"
#include "tsurf/arith.hpp"
#include "tsurf/counting.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/sl2z.hpp"

#include <doctest.h>

#include <random>

using namespace tsurf;

namespace {
Origami make(const char* h, const char* v, int n) { return Origami(Perm::parse(h, n), Perm::parse(v, n)); }

MatrixSL2Z random_matrix(std::mt19937& rng, int steps) {
  MatrixSL2Z m;
  std::uniform_int_distribution<int> e(-4, 4);
  for (int i = 0; i < steps; ++i) m = m * MatrixSL2Z::T(e(rng)) * MatrixSL2Z::S();
  return m;
}
}  // namespace

TEST_SUITE("sl2z") {
  TEST_CASE("matrices") {
    CHECK_THROWS_AS(MatrixSL2Z(1, 1, 1, 1), DomainError);
    CHECK(MatrixSL2Z::S() * MatrixSL2Z::S() == MatrixSL2Z::minus_identity());
    CHECK(MatrixSL2Z::T(2).apply(1, 1) == std::array<long long, 2>{3, 1});
  }

  TEST_CASE("word decomposition evaluates back") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      MatrixSL2Z m = random_matrix(rng, 1 + trial % 12);
      CHECK(evaluate(decompose(m)) == m);
    }
    for (const auto& m : {MatrixSL2Z(), MatrixSL2Z::minus_identity(), MatrixSL2Z(150, 1, 299, 2),
                          MatrixSL2Z(-1, 0, 0, -1) * MatrixSL2Z::T(5)})
      CHECK(evaluate(decompose(m)) == m);
  }

  TEST_CASE("words stay short") {
    // consecutive Fibonacci numbers are the worst case for Euclid
    long long a = 1, c = 1;
    for (int i = 0; i < 40; ++i) {
      long long t = a + c;
      a = c;
      c = t;
    }
    MatrixSL2Z m = primitive_to_horizontal(c, a);
    CHECK(decompose(m).size() < 200);
    for (long long p = 1; p <= 600; p += 7) CHECK(decompose(primitive_to_horizontal(p, 2 * p + 1)).size() < 40);
  }

  TEST_CASE("primitive directions map to (1,0)") {
    for (long long p = -9; p <= 9; ++p)
      for (long long q = -9; q <= 9; ++q) {
        if (std::gcd(p, q) != 1) continue;
        CHECK(primitive_to_horizontal(p, q).apply(p, q) == std::array<long long, 2>{1, 0});
      }
    CHECK_THROWS_AS(primitive_to_horizontal(2, 4), DomainError);
    CHECK_THROWS_AS(primitive_to_horizontal(0, 0), DomainError);
  }

  TEST_CASE("the action is a left action") {
    std::mt19937 rng(9);
    Origami o = make("(0 1 2)", "(1 2)", 3);
    for (int trial = 0; trial < 40; ++trial) {
      MatrixSL2Z a = random_matrix(rng, 3), b = random_matrix(rng, 3);
      CHECK(isomorphic(act(o, a * b), act(act(o, b), a)));
    }
    CHECK(isomorphic(act(o, MatrixSL2Z::minus_identity()), rotate_pi(o)));
  }

  TEST_CASE("orbit sizes") {
    CHECK(orbit(make("()", "()", 1)).elements.size() == 1);
    CHECK(orbit(make("(0 1)", "()", 2)).elements.size() == 3);
    for (int n = 2; n <= 5; ++n) {
      auto rec = orbit(marked_torus(n, 1, 0));
      CHECK(rec.elements.size() == euler_phi(static_cast<u64>(n)) * dedekind_psi(static_cast<u64>(n)));
    }
    CHECK(orbit(marked_torus(4, 2, 2)).elements.size() == 3);
  }

  TEST_CASE("orbit edges are consistent") {
    auto rec = orbit(make("(0 1 2)", "(1 2)", 3));
    for (std::size_t i = 0; i < rec.elements.size(); ++i) {
      CHECK(isomorphic(rec.elements[static_cast<std::size_t>(rec.t_edge[i])], act_T(rec.elements[i])));
      CHECK(isomorphic(rec.elements[static_cast<std::size_t>(rec.s_edge[i])], act_S(rec.elements[i])));
      CHECK(genus(rec.elements[i]) == 2);
      CHECK(automorphism_count(rec.elements[i]) == 1);
    }
  }

  TEST_CASE("orbit cap raises a resource error") {
    OrbitOptions opts;
    opts.cap = 2;
    CHECK_THROWS_AS(orbit(marked_torus(5, 1, 0), opts), ResourceError);
  }

  TEST_CASE("orbit is independent of the thread setting") {
    OrbitOptions serial;
    serial.parallel = false;
    auto a = orbit(marked_torus(5, 1, 2), serial), b = orbit(marked_torus(5, 1, 2));
    REQUIRE(a.elements.size() == b.elements.size());
    for (std::size_t i = 0; i < a.elements.size(); ++i) CHECK(canonical_key(a.elements[i]) == canonical_key(b.elements[i]));
    CHECK(a.t_edge == b.t_edge);
    CHECK(a.s_edge == b.s_edge);
  }

  TEST_CASE("minus identity involution") {
    auto torus = minus_id_involution(make("()", "()", 1));
    REQUIRE(torus);
    CHECK(torus->fixed_point_count() == 4);
    for (int n = 2; n <= 5; ++n)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (a == 0 && b == 0) continue;
          bool expected = (2 * a) % n == 0 && (2 * b) % n == 0;
          CHECK(minus_id_involution(marked_torus(n, a, b)).has_value() == expected);
        }
  }
}
