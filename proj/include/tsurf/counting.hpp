#pragma once

#include "tsurf/origami.hpp"
#include "tsurf/rational.hpp"
#include "tsurf/sl2z.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsurf {

enum class CountKind { cylinders, saddle_connections };
enum class Engine { reference, parallel };

struct DirectionCount {
  long long p = 0, q = 0;
  long long count = 0;
};

struct CountResult {
  long long total = 0;
  std::vector<DirectionCount> breakdown;  // filled only when requested
};

struct CountOptions {
  Engine engine = Engine::parallel;
  bool breakdown = false;  // forces the reference engine
};

// Cylinders with core holonomy of norm <= T, counted with multiplicity over all
// primitive directions of both signs.
CountResult count_cylinders(const Origami& o, const Rational& T, const CountOptions& opts = {});

// Saddle connections joining the vertices labelled a and b (a != b), both orientations.
CountResult count_saddle_connections(const Origami& o, int label_a, int label_b, const Rational& T,
                                     const CountOptions& opts = {});

// Counts at several thresholds in one sweep. For saddles pass the two labels.
std::vector<long long> count_series(const Origami& o, CountKind kind, const std::vector<Rational>& Ts,
                                    Engine engine, int label_a = 1, int label_b = 2);

// (pi / zeta(2)) T^2
double quadratic_normalizer(const Rational& T);

struct CountSample {
  Rational T;
  long long count = 0;
  double normalized = 0.0;
};

struct SVReport {
  std::string surface_id;
  CountKind kind = CountKind::cylinders;
  std::vector<CountSample> samples;
  double estimate = 0.0;
  double spread = 0.0;
  std::optional<Rational> formula_value;
  std::optional<double> relative_error;
};

struct Estimate {
  double value = 0.0;
  double spread = 0.0;  // max pairwise difference over the top three samples
};

// Samples at T = tmax * j / k for j = 1..k.
SVReport make_report(const Origami& o, CountKind kind, const Rational& tmax, int samples,
                     Engine engine = Engine::parallel, int label_a = 1, int label_b = 2);
Estimate estimate_constant(const SVReport& report);
void attach_formula(SVReport& report, const Rational& formula);

struct CylinderGroup {
  Rational area;
  std::vector<int> widths;
};

struct CountedGroup {
  long long count = 0;
  std::vector<int> widths;
};

struct Incidence {
  long long m_plus = 0;
  Rational s_plus;
};

struct SpecialPoint {
  long long m_plus = 0;
  int order = 0;
};

// Exact multiple of zeta(2) with a floating rendering.
struct Zeta2Multiple {
  Rational coefficient;
  double value() const;
  std::string to_string() const;
};

Rational sv_formula_generic(const Rational& area_F, const std::vector<CylinderGroup>& groups);
Rational sv_formula_finite(long long orbit_size, const std::vector<CountedGroup>& interior,
                           const std::vector<CountedGroup>& boundary);
Rational sv_formula_sc_finite(long long orbit_size, const std::vector<Incidence>& incidences);
Zeta2Multiple sv_formula_sc_generic(const Rational& area_F, const std::vector<SpecialPoint>& points);

// Orbit averages at natural scale: (1/|O|) sum over orbit elements of sum 1/w^2
// (horizontal cylinders) or sum 1/l^2 (horizontal saddle connections joining a and b).
Rational orbit_cylinder_constant(const OrbitRecord& orbit);
Rational orbit_saddle_constant(const OrbitRecord& orbit, int label_a, int label_b);

// n x n marked torus with label 1 at grid point (0,0) and label 2 at (a,b); unit 1/n.
Origami marked_torus(int n, int a, int b);

std::string kind_name(CountKind kind);

}  // namespace tsurf
