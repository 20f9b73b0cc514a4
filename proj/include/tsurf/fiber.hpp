#pragma once

#include "tsurf/counting.hpp"
#include "tsurf/cover.hpp"
#include "tsurf/origami.hpp"
#include "tsurf/rational.hpp"
#include "tsurf/sl2z.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsurf {

// A conjugacy class of monodromy tuples with transposition branching; its cover sits at the
// reference branch position (1/2,1/2).
struct FiberClass {
  Perm h, v, c0, c1;
  int centralizer = 1;
  std::vector<std::int32_t> key;  // canonical key of the cover at the reference position
  CoverDatum datum() const { return CoverDatum::from(h, v, c1); }
  Origami cover() const;  // unit 1/2, label 1 over [0], label 2 at the moving point
};

struct FiberEnumeration {
  int degree = 0;
  std::vector<FiberClass> classes;  // period lattice Z^2 only, sorted by key
  Rational weighted_total;          // sum of 1/centralizer over classes
  Rational transitive_total;        // same, without the period condition
  long long tuples = 0;             // tuples counted in weighted_total
  long long transitive_tuples = 0;
};

// Exhaustive search over (h, v, c1) in S_d; throws InternalError when the weighted total
// differs from the expected square count (d >= 2).
FiberEnumeration enumerate_fiber(int d, bool check_total = true);

enum class FiberVertexKind { cone, degenerate, regular };

struct FiberSurface {
  int degree = 0;
  Origami origami;                  // unit 1; degenerate vertices carry label 1
  std::vector<FiberClass> classes;  // classes[point_index[s]] is parameterised by square s
  std::vector<int> point_index;
  std::vector<FiberVertexKind> vertex_kind;  // by vertex id
  Rational weighted_area;
  Rational transitive_total;
};

// Builds the fiber and checks its structural invariants (throws InternalError otherwise).
FiberSurface build_fiber_origami(int d);
// Degree-one analogue: the torus minus [0] with its single marked point.
FiberSurface marked_torus_fiber();

struct FiberVertexInfo {
  int vertex_id = 0;
  int angle_multiple = 1;
  FiberVertexKind kind = FiberVertexKind::regular;
  long long m_plus = 0;  // vanishing saddle connections as the moving point reaches [0]
};

std::vector<FiberVertexInfo> classify_special_points(const FiberSurface& f);

struct QuotientData {
  Involution sigma;
  long long n_minus1 = 0;  // fixed points that are not cone points
  long long n_plus1 = 0;   // fixed cone points
  long long euler_char = 0;
  long long euler_char_quotient = 0;
  int spin = 0;
  bool identity_holds = false;   // 2 chi_quot = n_minus1 - n_plus1
  bool matches_formula = false;  // against the closed forms for the degree
};

QuotientData quotient_spin(const FiberSurface& f);

// Where a surface with marks at grid points of the 2 x 2 grid lies on the fiber.
struct FiberLocation {
  enum Kind { center, left_edge, bottom_edge } kind = center;
  int square = 0;
};
std::optional<FiberLocation> locate(const FiberSurface& f, const Origami& x);

// Horizontal cylinders of the fiber with the cylinder widths (natural scale) of the surfaces
// in their interior and on their top boundary.
struct FiberCylinder {
  int width = 0;
  int height = 0;
  std::vector<std::vector<int>> rows;
  std::vector<int> surface_widths;
  std::vector<int> boundary_widths;
};
std::vector<FiberCylinder> fiber_cylinders(const FiberSurface& f);
// Cylinders with equal surface width multisets merged, areas added.
std::vector<CylinderGroup> fiber_cylinder_groups(const std::vector<FiberCylinder>& cylinders);
Rational fiber_generic_constant(const FiberSurface& f);
Zeta2Multiple fiber_saddle_constant(const FiberSurface& f);

// Membership counts of a finite orbit in fiber cylinders and their top boundaries.
struct OrbitMembership {
  std::vector<CountedGroup> interior;
  std::vector<CountedGroup> boundary;
  long long located = 0;
};
OrbitMembership orbit_membership(const FiberSurface& f, const OrbitRecord& orbit);

struct FiberCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};
std::vector<FiberCheck> verify_fiber(int d);

}  // namespace tsurf
