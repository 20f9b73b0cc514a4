#include "tsurf/counting.hpp"

#include "tsurf/arith.hpp"
#include "tsurf/counting_kernels.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tsurf {

std::string kind_name(CountKind kind) { return kind == CountKind::cylinders ? "cylinders" : "saddle_connections"; }

std::vector<long long> count_series(const Origami& o, CountKind kind, const std::vector<Rational>& Ts, Engine engine,
                                    int label_a, int label_b) {
  if (!o.connected()) throw DomainError("counting on a disconnected origami");
  if (Ts.empty()) return {};
  return engine == Engine::reference ? count_kernel_reference(o, kind, Ts, label_a, label_b, nullptr)
                                     : count_kernel_parallel(o, kind, Ts, label_a, label_b);
}

namespace {

CountResult count_one(const Origami& o, CountKind kind, const Rational& T, const CountOptions& opts, int a, int b) {
  if (T <= 0) throw DomainError("counting threshold must be positive");
  if (!o.connected()) throw DomainError("counting on a disconnected origami");
  CountResult r;
  if (opts.breakdown) {
    r.total = count_kernel_reference(o, kind, {T}, a, b, &r.breakdown).front();
  } else {
    r.total = count_series(o, kind, {T}, opts.engine, a, b).front();
  }
  return r;
}

}  // namespace

CountResult count_cylinders(const Origami& o, const Rational& T, const CountOptions& opts) {
  return count_one(o, CountKind::cylinders, T, opts, 1, 2);
}

CountResult count_saddle_connections(const Origami& o, int label_a, int label_b, const Rational& T,
                                     const CountOptions& opts) {
  return count_one(o, CountKind::saddle_connections, T, opts, label_a, label_b);
}

double quadratic_normalizer(const Rational& T) {
  double t = to_double(T);
  return std::numbers::pi / zeta2() * t * t;
}

SVReport make_report(const Origami& o, CountKind kind, const Rational& tmax, int samples, Engine engine, int label_a,
                     int label_b) {
  if (samples < 1) throw DomainError("need at least one sample");
  if (tmax <= 0) throw DomainError("tmax must be positive");
  SVReport rep;
  rep.kind = kind;
  std::vector<Rational> Ts;
  for (int j = 1; j <= samples; ++j) Ts.push_back(tmax * j / samples);
  auto counts = count_series(o, kind, Ts, engine, label_a, label_b);
  for (std::size_t j = 0; j < Ts.size(); ++j)
    rep.samples.push_back({Ts[j], counts[j], static_cast<double>(counts[j]) / quadratic_normalizer(Ts[j])});
  if (rep.samples.size() >= 3) {
    Estimate e = estimate_constant(rep);
    rep.estimate = e.value;
    rep.spread = e.spread;
  } else {
    rep.estimate = rep.samples.back().normalized;
  }
  return rep;
}

Estimate estimate_constant(const SVReport& report) {
  if (report.samples.size() < 3) throw DomainError("estimate_constant needs at least 3 samples");
  Estimate e;
  e.value = report.samples.back().normalized;
  const std::size_t n = report.samples.size();
  double lo = report.samples[n - 3].normalized, hi = lo;
  for (std::size_t j = n - 3; j < n; ++j) {
    lo = std::min(lo, report.samples[j].normalized);
    hi = std::max(hi, report.samples[j].normalized);
  }
  e.spread = hi - lo;
  return e;
}

void attach_formula(SVReport& report, const Rational& formula) {
  report.formula_value = formula;
  double f = to_double(formula);
  report.relative_error = std::abs(report.estimate - f) / std::abs(f);
}

double Zeta2Multiple::value() const { return to_double(coefficient) * zeta2(); }

std::string Zeta2Multiple::to_string() const { return tsurf::to_string(coefficient) + "*zeta(2)"; }

Rational sv_formula_generic(const Rational& area_F, const std::vector<CylinderGroup>& groups) {
  if (groups.empty()) throw DomainError("sv_formula_generic: no cylinder groups");
  if (area_F <= 0) throw DomainError("sv_formula_generic: area must be positive");
  Rational s = 0;
  for (const auto& g : groups) {
    if (g.area <= 0) throw DomainError("sv_formula_generic: cylinder area must be positive");
    for (int w : g.widths) {
      if (w <= 0) throw DomainError("sv_formula_generic: widths must be positive");
      s += g.area / (w * w);
    }
  }
  return s / area_F;
}

Rational sv_formula_finite(long long orbit_size, const std::vector<CountedGroup>& interior,
                           const std::vector<CountedGroup>& boundary) {
  if (orbit_size <= 0) throw DomainError("sv_formula_finite: orbit size must be positive");
  long long total = 0;
  Rational s = 0;
  for (const auto* part : {&interior, &boundary}) {
    for (const auto& g : *part) {
      if (g.count < 0) throw DomainError("sv_formula_finite: negative count");
      total += g.count;
      for (int w : g.widths) {
        if (w <= 0) throw DomainError("sv_formula_finite: widths must be positive");
        s += Rational(g.count, static_cast<long long>(w) * w);
      }
    }
  }
  if (total != orbit_size) throw DomainError("sv_formula_finite: counts do not sum to the orbit size");
  return s / orbit_size;
}

Rational sv_formula_sc_finite(long long orbit_size, const std::vector<Incidence>& incidences) {
  if (orbit_size <= 0) throw DomainError("sv_formula_sc_finite: orbit size must be positive");
  Rational s = 0;
  for (const auto& inc : incidences) {
    if (inc.s_plus <= 0) throw DomainError("sv_formula_sc_finite: s_plus must be positive");
    s += Rational(inc.m_plus) / (inc.s_plus * inc.s_plus);
  }
  return Rational(2, orbit_size) * s;
}

Zeta2Multiple sv_formula_sc_generic(const Rational& area_F, const std::vector<SpecialPoint>& points) {
  if (points.empty()) throw DomainError("sv_formula_sc_generic: no special points");
  if (area_F <= 0) throw DomainError("sv_formula_sc_generic: area must be positive");
  Rational s = 0;
  for (const auto& p : points) {
    if (p.order < 0 || p.m_plus < 0) throw DomainError("sv_formula_sc_generic: negative input");
    s += Rational(p.m_plus * (p.order + 1));
  }
  return {2 * s / area_F};
}

Rational orbit_cylinder_constant(const OrbitRecord& orbit) {
  Rational s = 0;
  for (const auto& x : orbit.elements)
    for (const auto& c : horizontal_cylinders(x).cylinders) {
      Rational w = x.unit_length() * c.width;
      s += 1 / (w * w);
    }
  return s / static_cast<long long>(orbit.elements.size());
}

Rational orbit_saddle_constant(const OrbitRecord& orbit, int label_a, int label_b) {
  if (label_a == label_b) throw DomainError("saddle connection endpoints must be distinct classes");
  Rational s = 0;
  for (const auto& x : orbit.elements)
    for (const auto& seg : horizontal_saddle_connections(x)) {
      int la = x.vertices()[static_cast<std::size_t>(seg.from_vertex)].label;
      int lb = x.vertices()[static_cast<std::size_t>(seg.to_vertex)].label;
      if ((la == label_a && lb == label_b) || (la == label_b && lb == label_a)) {
        Rational l = x.unit_length() * seg.length;
        s += 1 / (l * l);
      }
    }
  return s / static_cast<long long>(orbit.elements.size());
}

Origami marked_torus(int n, int a, int b) {
  if (n < 1) throw DomainError("marked_torus: n must be positive");
  auto sq = [n](int x, int y) { return ((y % n + n) % n) * n + ((x % n + n) % n); };
  std::vector<int> h(static_cast<std::size_t>(n * n)), v(h.size()), lab(h.size(), 0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      h[static_cast<std::size_t>(sq(x, y))] = sq(x + 1, y);
      v[static_cast<std::size_t>(sq(x, y))] = sq(x, y + 1);
    }
  if (sq(a, b) == 0) throw DomainError("marked_torus: the two marks coincide");
  lab[0] = 1;
  lab[static_cast<std::size_t>(sq(a, b))] = 2;
  return Origami(Perm(h), Perm(v), Rational(1, n), lab);
}

}  // namespace tsurf
