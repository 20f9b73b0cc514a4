#include "tsurf/arith.hpp"
#include "tsurf/counting.hpp"
#include "tsurf/cover.hpp"
#include "tsurf/fiber.hpp"
#include "tsurf/sl2z.hpp"

#include <doctest.h>
#include <omp.h>

#include <map>

using namespace tsurf;

namespace {
int count_kind(const FiberSurface& f, FiberVertexKind k) {
  int n = 0;
  for (auto x : f.vertex_kind) n += x == k;
  return n;
}
}  // namespace

TEST_SUITE("fiber") {
  TEST_CASE("weighted totals") {
    const std::map<int, std::pair<long long, std::size_t>> want{{2, {2, 4}}, {3, {16, 16}}, {4, {48, 48}}};
    for (auto [d, w] : want) {
      auto en = enumerate_fiber(d);
      CHECK(en.weighted_total == Rational(w.first));
      CHECK(en.classes.size() == w.second);
      CHECK(en.weighted_total == Rational(static_cast<long long>(fiber_invariants(d).square_count)));
    }
    // without the period condition the degree-four total overshoots
    CHECK(enumerate_fiber(4).transitive_total == Rational(60));
  }

  TEST_CASE("degree two classes all carry weight one half") {
    auto en = enumerate_fiber(2);
    for (const auto& c : en.classes) CHECK(c.centralizer == 2);
  }

  TEST_CASE("classes are sorted and distinct") {
    auto en = enumerate_fiber(3);
    for (std::size_t i = 1; i < en.classes.size(); ++i) CHECK(en.classes[i - 1].key < en.classes[i].key);
    for (const auto& c : en.classes) {
      CHECK(c.c0.is_transposition());
      CHECK(c.c1.is_transposition());
      CHECK(relation_holds(c.datum()));
      CHECK(canonical_key(c.cover()) == c.key);
    }
  }

  TEST_CASE("structure in degrees two and three") {
    FiberSurface f2 = build_fiber_origami(2);
    CHECK(f2.origami.n_squares() == 4);
    CHECK(f2.weighted_area == Rational(2));
    CHECK(genus(f2.origami) == 1);
    CHECK(f2.origami.vertices().size() == 4);

    FiberSurface f3 = build_fiber_origami(3);
    CHECK(f3.origami.n_squares() == 16);
    CHECK(f3.origami.connected());
    CHECK(count_kind(f3, FiberVertexKind::cone) == 3);
    for (const auto& v : f3.origami.vertices())
      if (f3.vertex_kind[static_cast<std::size_t>(v.id)] == FiberVertexKind::cone) CHECK(v.angle_multiple == 3);
    CHECK(count_kind(f3, FiberVertexKind::cone) + count_kind(f3, FiberVertexKind::degenerate) ==
          static_cast<int>(f3.origami.vertices().size()));
    CHECK(2 - 2 * genus(f3.origami) == static_cast<long long>(fiber_invariants(3).euler_char));
    CHECK(period_lattice(f3.origami).is_scaled_standard(2));
    CHECK(orbit(f3.origami).elements.size() == 1);
  }

  TEST_CASE("special points") {
    FiberSurface f3 = build_fiber_origami(3);
    auto info = classify_special_points(f3);
    int cones = 0, others = 0;
    for (const auto& p : info) {
      if (p.kind == FiberVertexKind::cone) {
        ++cones;
        CHECK(p.m_plus == 1);
      } else {
        ++others;
        CHECK(p.m_plus == 2);
      }
    }
    CHECK(cones == 3);
    CHECK(others == 7);

    auto t = classify_special_points(marked_torus_fiber());
    REQUIRE(t.size() == 1);
    CHECK(t[0].m_plus == 1);
    CHECK(t[0].angle_multiple == 1);
  }

  TEST_CASE("quotient and spin") {
    const std::map<int, std::pair<long long, int>> want{{2, {2, 1}}, {3, {2, 1}}, {4, {2, 1}}, {6, {0, 0}}};
    for (auto [d, w] : want) {
      auto q = quotient_spin(build_fiber_origami(d));
      CHECK(q.euler_char_quotient == w.first);
      CHECK(q.spin == w.second);
      CHECK(q.identity_holds);
      CHECK(q.matches_formula);
      CHECK(q.spin == spin_parity_rule(d));
    }
    auto q3 = quotient_spin(build_fiber_origami(3));
    CHECK(q3.n_minus1 == 7);
    CHECK(q3.n_plus1 == 3);
  }

  TEST_CASE("horizontal cylinders of the degree three fiber") {
    FiberSurface f = build_fiber_origami(3);
    auto cyl = fiber_cylinders(f);
    int area = 0;
    bool loop = false;
    for (const auto& c : cyl) {
      area += c.width * c.height;
      loop = loop || (c.width == 6 && c.height == 1);
    }
    CHECK(area == 16);
    CHECK(loop);
    auto groups = fiber_cylinder_groups(cyl);
    std::map<std::vector<int>, Rational> by;
    for (const auto& g : groups) by[g.widths] = g.area;
    CHECK(by == std::map<std::vector<int>, Rational>{{{1, 2, 3}, Rational(12)}, {{1, 1, 2}, Rational(4)}});
    CHECK(fiber_generic_constant(f) == Rational(19, 12));
    CHECK(fiber_saddle_constant(f).coefficient == Rational(23, 8));
  }

  TEST_CASE("generic constants in higher degree") {
    CHECK(fiber_generic_constant(build_fiber_origami(4)) == Rational(29, 24));
    CHECK(fiber_generic_constant(build_fiber_origami(5)) == Rational(39, 40));
  }

  TEST_CASE("every class is found at its own square") {
    FiberSurface f = build_fiber_origami(3);
    for (int s = 0; s < f.origami.n_squares(); ++s) {
      const auto& c = f.classes[static_cast<std::size_t>(f.point_index[static_cast<std::size_t>(s)])];
      auto loc = locate(f, c.cover());
      REQUIRE(loc.has_value());
      CHECK(loc->kind == FiberLocation::center);
      CHECK(f.point_index[static_cast<std::size_t>(loc->square)] == f.point_index[static_cast<std::size_t>(s)]);
      // the fiber is stable under the generators
      CHECK(locate(f, act_T(c.cover())).has_value());
      CHECK(locate(f, act_S(c.cover())).has_value());
    }
  }

  TEST_CASE("orbit membership reproduces the orbit average") {
    FiberSurface f = build_fiber_origami(3);
    auto orb = orbit(connected_sum(1, 3, Rational(1, 2), Rational(1, 2), false));
    auto mem = orbit_membership(f, orb);
    CHECK(mem.located == static_cast<long long>(orb.elements.size()));
    CHECK(sv_formula_finite(static_cast<long long>(orb.elements.size()), mem.interior, mem.boundary) ==
          orbit_cylinder_constant(orb));
  }

  TEST_CASE("verification report") {
    for (int d : {2, 3, 4}) {
      for (const auto& c : verify_fiber(d)) {
        INFO(d, " ", c.name, ": ", c.detail);
        CHECK(c.pass);
      }
    }
  }

  TEST_CASE("enumeration does not depend on the thread count") {
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    auto a = enumerate_fiber(4);
    omp_set_num_threads(3);
    auto b = enumerate_fiber(4);
    omp_set_num_threads(saved);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) CHECK(a.classes[i].key == b.classes[i].key);
    CHECK(a.tuples == b.tuples);
  }
}
