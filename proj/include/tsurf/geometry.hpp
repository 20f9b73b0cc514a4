#pragma once

#include "tsurf/origami.hpp"

#include <vector>

namespace tsurf {

// Horizontal segment between consecutive special vertices, length in squares.
struct Segment {
  int length = 0;
  int from_vertex = 0;
  int to_vertex = 0;
};

struct BoundaryChain {
  std::vector<int> vertices;      // left corner of each unit edge, left to right
  std::vector<Segment> segments;  // empty when no special vertex lies on the chain
};

struct Cylinder {
  int width = 0;
  int height = 0;
  // rows[k][j]: square in row k (from the bottom) and column j; columns are aligned by v.
  std::vector<std::vector<int>> rows;
  BoundaryChain top;
  BoundaryChain bottom;
};

struct CylinderDecomposition {
  long long p = 1, q = 0;
  Rational unit{1};
  std::vector<Cylinder> cylinders;

  // |(p,q)|^2 * unit^2; multiply by width^2 for the squared core length.
  Rational scale_squared() const { return Rational(p * p + q * q) * unit * unit; }
  double physical_scale() const;
  std::vector<int> widths() const;  // sorted increasingly
};

CylinderDecomposition horizontal_cylinders(const Origami& o);
CylinderDecomposition direction_cylinders(const Origami& o, long long p, long long q);
// One entry per horizontal saddle connection (each is the top of exactly one cylinder).
std::vector<Segment> horizontal_saddle_connections(const Origami& o);

}  // namespace tsurf
