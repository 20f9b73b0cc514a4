#include "oracles.hpp"
#include "tsurf/arith.hpp"
#include "tsurf/counting.hpp"
#include "tsurf/counting_kernels.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/sl2z.hpp"

#include <doctest.h>
#include <omp.h>

#include <random>

using namespace tsurf;

namespace {
Origami torus() { return Origami(Perm::identity(1), Perm::identity(1)); }

std::vector<Rational> thresholds(std::initializer_list<int> ts) {
  std::vector<Rational> out;
  for (int t : ts) out.emplace_back(t);
  return out;
}
}  // namespace

TEST_SUITE("counting") {
  TEST_CASE("small thresholds on the torus") {
    for (Engine e : {Engine::reference, Engine::parallel}) {
      CountOptions opts{e, false};
      CHECK(count_cylinders(torus(), Rational(1), opts).total == 4);
      CHECK(count_cylinders(torus(), Rational(2), opts).total == 8);
    }
    CHECK_THROWS_AS(count_cylinders(torus(), Rational(0)), DomainError);
    CHECK_THROWS_AS(count_cylinders(torus(), Rational(-1)), DomainError);
  }

  TEST_CASE("marked two-torus") {
    Origami o = marked_torus(2, 1, 0);
    CHECK(count_cylinders(o, Rational(1)).total == 6);
    CHECK(count_cylinders(o, Rational(1), {Engine::reference, false}).total == 6);
    // both orientations of the two horizontal half steps
    CHECK(count_saddle_connections(o, 1, 2, Rational(1, 2)).total == 4);
    CHECK(count_saddle_connections(o, 1, 2, Rational(1)).total == oracle::marked_torus_saddles(2, 1, 0, Rational(1)));
    CHECK_THROWS_AS(count_saddle_connections(o, 1, 1, Rational(1)), DomainError);
  }

  TEST_CASE("breakdown sums to the total") {
    Origami o = marked_torus(3, 1, 2);
    auto r = count_cylinders(o, Rational(4), {Engine::parallel, true});
    long long sum = 0;
    for (const auto& d : r.breakdown) sum += d.count;
    CHECK(sum == r.total);
    CHECK(r.total == oracle::marked_torus_cylinders(3, 1, 2, Rational(4)));
  }

  TEST_CASE("marked tori against the plane-lattice oracle") {
    for (int n = 2; n <= 5; ++n)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (a == 0 && b == 0) continue;
          Origami o = marked_torus(n, a, b);
          auto Ts = thresholds({1, 3, 7, 20, 50});
          auto cyl = count_series(o, CountKind::cylinders, Ts, Engine::parallel);
          auto sc = count_series(o, CountKind::saddle_connections, Ts, Engine::parallel);
          for (std::size_t i = 0; i < Ts.size(); ++i) {
            CHECK(cyl[i] == oracle::marked_torus_cylinders(n, a, b, Ts[i]));
            CHECK(sc[i] == oracle::marked_torus_saddles(n, a, b, Ts[i]));
          }
          if (a <= 1 && b <= 1) {
            auto small = thresholds({1, 3, 7});
            auto cr = count_series(o, CountKind::cylinders, small, Engine::reference);
            auto sr = count_series(o, CountKind::saddle_connections, small, Engine::reference);
            for (std::size_t i = 0; i < small.size(); ++i) {
              CHECK(cr[i] == cyl[i]);
              CHECK(sr[i] == sc[i]);
            }
          }
        }
  }

  TEST_CASE("fractional thresholds") {
    Origami o = marked_torus(3, 1, 1);
    for (auto T : {Rational(1, 3), Rational(5, 7), Rational(13, 4)}) {
      CHECK(count_cylinders(o, T).total == oracle::marked_torus_cylinders(3, 1, 1, T));
      CHECK(count_saddle_connections(o, 1, 2, T).total == oracle::marked_torus_saddles(3, 1, 1, T));
    }
  }

  TEST_CASE("engines agree on random labelled origamis") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
      Origami o = oracle::random_origami(3 + trial % 5, rng);
      std::vector<int> lab(static_cast<std::size_t>(o.n_squares()), 0);
      // mark two distinct vertices
      lab[0] = 1;
      int other = -1;
      for (int s = 0; s < o.n_squares() && other < 0; ++s)
        if (o.vertex_of(s) != o.vertex_of(0)) other = o.vertex_of(s);
      for (int s = 0; s < o.n_squares(); ++s) {
        if (o.vertex_of(s) == o.vertex_of(0)) lab[static_cast<std::size_t>(s)] = 1;
        if (o.vertex_of(s) == other) lab[static_cast<std::size_t>(s)] = 2;
      }
      Origami m = o.with_labels(lab);
      auto Ts = thresholds({2, 5, 9});
      CHECK(count_series(m, CountKind::cylinders, Ts, Engine::reference) ==
            count_series(m, CountKind::cylinders, Ts, Engine::parallel));
      if (other >= 0)
        CHECK(count_series(m, CountKind::saddle_connections, Ts, Engine::reference) ==
              count_series(m, CountKind::saddle_connections, Ts, Engine::parallel));
    }
  }

  TEST_CASE("counts are invariant under rotation by a quarter turn") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
      Origami o = oracle::random_origami(4 + trial, rng);
      CHECK(count_cylinders(o, Rational(12)).total == count_cylinders(act_S(o), Rational(12)).total);
    }
    Origami m = marked_torus(4, 1, 3);
    CHECK(count_cylinders(m, Rational(15)).total == count_cylinders(act_S(m), Rational(15)).total);
  }

  TEST_CASE("parallel kernel is independent of the thread count") {
    Origami o = marked_torus(5, 2, 1);
    auto Ts = thresholds({10, 40});
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    auto one = count_series(o, CountKind::saddle_connections, Ts, Engine::parallel);
    omp_set_num_threads(4);
    auto four = count_series(o, CountKind::saddle_connections, Ts, Engine::parallel);
    omp_set_num_threads(saved);
    CHECK(one == four);
  }

  TEST_CASE("threshold arithmetic is exact") {
    Threshold t(Rational(5), Rational(1, 2));
    CHECK(t.admits(10, 1));
    CHECK_FALSE(t.admits(11, 1));
    CHECK(t.admits(2, 25));
    CHECK_FALSE(t.admits(2, 26));
    CHECK(t.max_norm2(2) == 25);
  }

  TEST_CASE("closed formulas") {
    CHECK(sv_formula_generic(Rational(1), {{Rational(1), {1, 1}}}) == Rational(2));
    CHECK(sv_formula_generic(Rational(16), {{Rational(12), {1, 2, 3}}, {Rational(4), {1, 1, 2}}}) == Rational(19, 12));
    CHECK(sv_formula_generic(Rational(1), {{Rational(1), {1}}}) == Rational(1));
    CHECK_THROWS_AS(sv_formula_generic(Rational(1), {}), DomainError);

    auto torus_finite = [](u64 n) {
      long long phi = static_cast<long long>(euler_phi(n)), psi = static_cast<long long>(dedekind_psi(n));
      return sv_formula_finite(phi * psi, {{phi * (psi - 1), {1, 1}}}, {{phi, {1}}});
    };
    CHECK(torus_finite(2) == Rational(5, 3));
    CHECK(torus_finite(3) == Rational(7, 4));
    for (u64 n = 2; n <= 30; ++n) CHECK(torus_finite(n) == sv_closed_form(SvKind::marked_torus_cylinders, n));
    CHECK(sv_formula_finite(5, {{5, {1, 1}}}, {}) == Rational(2));
    CHECK_THROWS_AS(sv_formula_finite(5, {{4, {1, 1}}}, {}), DomainError);

    auto torus_sc = [](u64 n) {
      std::vector<Incidence> inc;
      for (u64 k = 1; k < n; ++k)
        if (gcd_u64(k, n) == 1) inc.push_back({1, Rational(static_cast<long long>(k), static_cast<long long>(n))});
      return sv_formula_sc_finite(static_cast<long long>(euler_phi(n) * dedekind_psi(n)), inc);
    };
    CHECK(torus_sc(2) == Rational(8, 3));
    CHECK(torus_sc(3) == Rational(45, 16));
    CHECK(sv_formula_sc_finite(1, {{1, Rational(1)}}) == Rational(2));
    CHECK_THROWS_AS(sv_formula_sc_finite(1, {{1, Rational(0)}}), DomainError);

    CHECK(sv_formula_sc_generic(Rational(1), {{1, 0}}).coefficient == Rational(2));
    CHECK(sv_formula_sc_generic(Rational(2), {{1, 0}}).coefficient == Rational(1));
    CHECK(sv_formula_sc_generic(Rational(1), {{1, 0}, {1, 2}}).coefficient == Rational(8));
    CHECK(sv_formula_sc_generic(Rational(1), {{1, 0}}).value() == doctest::Approx(2 * zeta2()));
    CHECK_THROWS_AS(sv_formula_sc_generic(Rational(1), {}), DomainError);
  }

  TEST_CASE("orbit averages reproduce the torsion formulas") {
    for (int n = 2; n <= 5; ++n) {
      auto orb = orbit(marked_torus(n, 1, 0));
      CHECK(orbit_cylinder_constant(orb) == sv_closed_form(SvKind::marked_torus_cylinders, static_cast<u64>(n)));
    }
    auto orb = orbit(marked_torus(3, 1, 0));
    CHECK(orbit_saddle_constant(orb, 1, 2) == Rational(45, 16));
  }

  TEST_CASE("reports and estimates") {
    auto rep = make_report(torus(), CountKind::cylinders, Rational(400), 4);
    REQUIRE(rep.samples.size() == 4);
    for (std::size_t i = 1; i < rep.samples.size(); ++i) CHECK(rep.samples[i].count >= rep.samples[i - 1].count);
    auto est = estimate_constant(rep);
    CHECK(est.value == doctest::Approx(1.0).epsilon(0.01));

    auto m3 = make_report(marked_torus(3, 1, 0), CountKind::cylinders, Rational(200), 3);
    attach_formula(m3, Rational(7, 4));
    CHECK(estimate_constant(m3).value == doctest::Approx(1.75).epsilon(0.03));
    REQUIRE(m3.relative_error.has_value());
    CHECK(*m3.relative_error < 0.03);

    SVReport flat;
    for (int i = 1; i <= 3; ++i) flat.samples.push_back({Rational(i), 0, 1.25});
    auto e = estimate_constant(flat);
    CHECK(e.value == doctest::Approx(1.25));
    CHECK(e.spread == doctest::Approx(0.0));
    flat.samples.pop_back();
    CHECK_THROWS_AS(estimate_constant(flat), DomainError);
  }

  TEST_CASE("normalizer") {
    CHECK(quadratic_normalizer(Rational(1)) == doctest::Approx(3.14159265358979 / zeta2()));
    CHECK(quadratic_normalizer(Rational(10)) == doctest::Approx(100 * 3.14159265358979 / zeta2()));
  }
}
