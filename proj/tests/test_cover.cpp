#include "oracles.hpp"
#include "tsurf/counting.hpp"
#include "tsurf/cover.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/fiber.hpp"

#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

using namespace tsurf;

namespace {
const Rational half(1, 2);

std::vector<Perm> all_perms(int d) {
  std::vector<int> img(static_cast<std::size_t>(d));
  std::iota(img.begin(), img.end(), 0);
  std::vector<Perm> out;
  do out.emplace_back(img);
  while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Origami geometric_push(const CoverDatum& x, PushDir dir) {
  GridCover g = build_grid(x);
  const int n = g.grid();
  for (int k = 0; k < n; ++k) g.push(dir == PushDir::H ? Step::right : Step::up);
  return g.to_origami();
}
}  // namespace

TEST_SUITE("cover") {
  TEST_CASE("degree one gives the marked torus") {
    for (auto [a, b, n] : std::vector<std::array<int, 3>>{{1, 1, 2}, {1, 0, 2}, {2, 1, 3}, {1, 3, 4}}) {
      auto x = CoverDatum::from(Perm::identity(1), Perm::identity(1), Perm::identity(1), Rational(a, n), Rational(b, n));
      Origami o = build(x);
      CHECK(o.n_squares() == n * n);
      CHECK(o.unit_length() == Rational(1, n));
      CHECK(isomorphic(o, marked_torus(n, a, b)));
    }
  }

  TEST_CASE("the double torus from two slit tori") {
    auto x = CoverDatum::from(Perm::identity(2), Perm::identity(2), Perm::parse("(0 1)", 2));
    CHECK(relation_holds(x));
    Origami o = build(x);
    CHECK(o.n_squares() == 8);
    CHECK(genus(o) == 2);
    CHECK(singularities(o).zero_orders() == std::vector<int>{1, 1});
    auto s = connected_sum(1, 2, half, half, false);
    CHECK(singularities(s).zero_orders() == std::vector<int>{1, 1});
  }

  TEST_CASE("S_1 at degree three") {
    auto x = CoverDatum::from(Perm::parse("(1 2)", 3), Perm::identity(3), Perm::parse("(0 1)", 3));
    Origami o = build(x);
    CHECK(singularities(o).zero_orders() == std::vector<int>{1, 1});
    CHECK(period_lattice(o).is_scaled_standard(2));
    Origami degen = connected_sum(1, 3, Rational(0), half, false);
    CHECK(singularities(degen).zero_orders() == std::vector<int>{1, 1});
  }

  TEST_CASE("invalid data is rejected") {
    CHECK_THROWS_AS(CoverDatum::from(Perm::identity(2), Perm::identity(3), Perm::parse("(0 1)", 2)), DomainError);
    CHECK_THROWS_AS(connected_sum(0, 3, half, half, false), DomainError);
    CHECK_THROWS_AS(connected_sum(3, 3, half, half, false), DomainError);
    CHECK_THROWS_AS(loop_closure_period(2, 4, half), DomainError);
  }

  TEST_CASE("Riemann-Hurwitz on random data") {
    std::mt19937 rng(3);
    int built = 0;
    for (int trial = 0; trial < 200 && built < 25; ++trial) {
      int d = 2 + trial % 4;
      auto ps = all_perms(d);
      std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
      const Perm& h = ps[pick(rng)];
      const Perm& v = ps[pick(rng)];
      const Perm& c1 = ps[pick(rng)];
      if (!is_transitive({h, v, c1})) continue;
      CoverDatum x;
      try {
        x = CoverDatum::from(h, v, c1, Rational(1, 3), Rational(2, 3));
      } catch (const DomainError&) {
        continue;
      }
      Origami o = build(x);
      int ram = 0;
      for (const Perm* c : {&x.c0, &x.c1})
        for (int len : c->cycle_type()) ram += len - 1;
      CHECK(2 - 2 * genus(o) == -ram);
      ++built;
    }
    CHECK(built > 10);
  }

  TEST_CASE("staircase choice does not matter") {
    auto en = enumerate_fiber(3);
    for (const auto& c : en.classes) {
      CoverDatum x = c.datum();
      GridCover g(3, 2, x.h, x.v);
      g.drag_from_origin(x.c1, {Step::up, Step::right});
      CHECK(canonical_key(g.to_origami()) == canonical_key(build(x)));
      GridCover bad(3, 2, x.h, x.v);
      if (!bad.monodromy(0, 0).is_identity())
        CHECK_THROWS_AS(bad.drag_from_origin(x.c1, {Step::down, Step::right}), DomainError);
    }
  }

  TEST_CASE("grid covers round trip through origamis") {
    auto en = enumerate_fiber(3);
    for (const auto& c : en.classes) {
      GridCover g = build_grid(c.datum());
      GridCover back = GridCover::from_origami(g.to_origami(), g.grid());
      CHECK(back.branch() == g.branch());
      CHECK(isomorphic(back.to_origami(), g.to_origami()));
    }
  }

  TEST_CASE("segment paths") {
    auto p = segment_path(3, 2, 2);
    int dx = 0, dy = 0;
    for (Step s : p) {
      dx += s == Step::right ? 1 : s == Step::left ? -1 : 0;
      dy += s == Step::up ? 1 : s == Step::down ? -1 : 0;
    }
    CHECK(dx == 3);
    CHECK(dy == 2);
    CHECK_THROWS(segment_path(4, 4, 2));  // passes through a lift of the origin
    CHECK_THROWS(segment_path(2, 0, 2));
  }

  TEST_CASE("primitivity of S_a exactly when a is prime to d") {
    for (int d = 2; d <= 6; ++d)
      for (int a = 1; a < d; ++a) {
        Origami o = connected_sum(a, d, half, half, false);
        CHECK(period_lattice(o).is_scaled_standard(2) == (std::gcd(a, d) == 1));
      }
  }

  TEST_CASE("loop closure periods") {
    CHECK(loop_closure_period(1, 3, half) == 6);
    CHECK(loop_closure_period(1, 2, half) == 2);
    CHECK(loop_closure_period(2, 3, half) == 6);
    CHECK(loop_closure_period(1, 4, half) == 12);
  }

  TEST_CASE("pointpush agrees with dragging the branch point") {
    for (int d : {2, 3, 4}) {
      auto en = enumerate_fiber(d);
      for (const auto& c : en.classes)
        for (PushDir dir : {PushDir::H, PushDir::V}) {
          CoverDatum pushed = pointpush(c.datum(), dir);
          CHECK(relation_holds(pushed));
          CHECK(canonical_key(build(pushed)) == canonical_key(geometric_push(c.datum(), dir)));
        }
    }
    Perm cyc = Perm::parse("(0 1 2)", 3);
    auto x = CoverDatum::from(cyc, cyc.pow(2), cyc);
    for (PushDir dir : {PushDir::H, PushDir::V})
      CHECK(canonical_key(build(pointpush(x, dir))) == canonical_key(geometric_push(x, dir)));
  }

  TEST_CASE("pushes permute the fiber classes") {
    auto en = enumerate_fiber(3);
    std::set<std::vector<std::int32_t>> keys;
    for (const auto& c : en.classes) keys.insert(c.key);
    for (PushDir dir : {PushDir::H, PushDir::V}) {
      std::set<std::vector<std::int32_t>> image;
      for (const auto& c : en.classes) image.insert(canonical_key(build(pointpush(c.datum(), dir))));
      CHECK(image == keys);
    }
  }

  TEST_CASE("tuple keys are conjugation invariant") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
      Origami o = oracle::random_origami(5, rng);
      auto ps = all_perms(5);
      const Perm& g = ps[static_cast<std::size_t>(trial * 7) % ps.size()];
      int m1 = 0, m2 = 0;
      auto k1 = tuple_key({o.h(), o.v()}, &m1);
      auto k2 = tuple_key({o.h().conjugate_by(g), o.v().conjugate_by(g)}, &m2);
      CHECK(k1 == k2);
      CHECK(m1 == m2);
      CHECK(m1 == oracle::automorphisms(o));
    }
  }

  TEST_CASE("d-symmetric enumeration") {
    auto one = dsym_enumerate(1, 2);
    CHECK(one.entries.size() == 3);
    for (int d : {2, 3}) {
      auto t = dsym_enumerate(d, 1);
      CHECK(static_cast<int>(t.entries.size()) == d * d - 1);
      CHECK(t.injective);
      auto h = dsym_enumerate(d, 2);
      CHECK(static_cast<long long>(h.entries.size()) == h.expected);
      CHECK(h.injective);
      CHECK(h.regular_push_action);
      CHECK(h.sl2z_closed);
      for (const auto& e : h.entries)
        if (e.connected) CHECK(e.zero_orders == std::vector<int>{d - 1, d - 1});
    }
  }

  TEST_CASE("cyclic sums carry the deck rotation") {
    for (int d = 2; d <= 4; ++d) {
      Origami o = connected_sum(0, d, half, half, true);
      CHECK(automorphism_count(o) % d == 0);
      CHECK(singularities(o).zero_orders() == std::vector<int>{d - 1, d - 1});
      CHECK(genus(o) == d);
    }
  }
}
