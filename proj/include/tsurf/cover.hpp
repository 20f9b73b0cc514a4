#pragma once

#include "tsurf/origami.hpp"
#include "tsurf/perm.hpp"
#include "tsurf/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsurf {

// Monodromy of a degree-d torus cover branched over [0] and one moving point.
// Convention: v h v^-1 h^-1 = c1 c0.
struct CoverDatum {
  int degree = 1;
  Perm h, v, c0, c1;
  Rational t_h{1, 2}, t_v{1, 2};

  static CoverDatum from(const Perm& h, const Perm& v, const Perm& c1, Rational t_h = Rational(1, 2),
                         Rational t_v = Rational(1, 2));
};

bool relation_holds(const CoverDatum& x);
void check_datum(const CoverDatum& x);  // throws DomainError

enum class Step { right, up, left, down };

// d sheets over an n x n grid of the unit torus. Crossing from cell (x,y) to (x+1,y)
// applies R(x,y) to the sheet, crossing to (x,y+1) applies U(x,y). The moving branch
// point sits at a grid vertex.
class GridCover {
 public:
  GridCover(int degree, int n, const Perm& h, const Perm& v);
  // Reads the grid structure off a labelled origami with unit 1/n: the origin is a corner
  // labelled 1, the branch point a corner labelled 2.
  static GridCover from_origami(const Origami& o, int n);

  int degree() const { return d_; }
  int grid() const { return n_; }
  std::array<int, 2> branch() const { return {bx_, by_}; }

  // Monodromy around grid vertex (x,y), in the frame of cell (x,y).
  Perm monodromy(int x, int y) const;
  // Moves the branch point one step; Mt is the monodromy left behind at the old vertex.
  void move(Step s, const Perm& Mt);
  // Splits c1 off the origin along the given path (first step), then carries it along. A first
  // step left or down is only accepted when the origin is unbranched.
  void drag_from_origin(const Perm& c1, const std::vector<Step>& path);
  // Moves the whole branch point (nothing left behind).
  void push(Step s);

  // Squares ((y n + x) d + sheet); label 1 on ramified preimages of [0] (all preimages if
  // unramified), label 2 likewise at the moving point; unit 1/n.
  Origami to_origami() const;

  const Perm& R(int x, int y) const { return R_[cell(x, y)]; }
  const Perm& U(int x, int y) const { return U_[cell(x, y)]; }

 private:
  std::size_t cell(int x, int y) const;
  int d_, n_;
  int bx_ = 0, by_ = 0;
  std::vector<Perm> R_, U_;
};

// Staircase right-then-up from [0] to the branch point inside the unit square.
Origami build(const CoverDatum& datum);
GridCover build_grid(const CoverDatum& datum);

// Grid path from [0] homotopic to the straight segment to (X,Y) (grid units): one vertical
// step, the horizontal run, then the remaining vertical steps. Throws if the segment or
// the path meets a lift of [0] or they are not homotopic.
std::vector<Step> segment_path(long long X, long long Y, int n);

// S_{a,v} (cyclic = false) or the d-fold cyclic sum along [0,v] (cyclic = true).
CoverDatum connected_sum_datum(int a, int d, const Rational& t_h, const Rational& t_v, bool cyclic);
Origami connected_sum(int a, int d, const Rational& t_h, const Rational& t_v, bool cyclic);

int loop_closure_period(int a, int d, const Rational& t_v, int search_limit = 0);

// Drag of the moving point around the horizontal (H) or vertical (V) torus loop.
enum class PushDir { H, V };
CoverDatum pointpush(const CoverDatum& datum, PushDir dir);

// Canonical key of a tuple of permutations up to simultaneous conjugation; the tuple must
// generate a transitive group. `matches` receives the centralizer order.
std::vector<std::int32_t> tuple_key(const std::vector<Perm>& gens, int* matches = nullptr);

struct DsymEntry {
  Rational t_h, t_v;   // branch position in [0,1)^2
  int p = 0, q = 0;    // h = c^p, v = c^q with c = c1 the d-cycle
  bool degenerate = false;  // branch point at [0]: unbranched cyclic cover
  bool connected = true;
  std::vector<int> zero_orders;
  int automorphisms = 0;
  std::vector<std::int32_t> key;
};

struct DsymReport {
  int degree = 1;
  int denominator = 1;
  std::vector<DsymEntry> entries;
  long long positions = 0;
  long long expected = 0;            // |(1/n)Z^2/dZ^2 - Z^2/dZ^2|, or d^2-1 when n = 1
  long long connected_count = 0;
  bool injective = false;            // distinct entries give distinct classes
  bool regular_push_action = false;  // pushes act on each position fiber as (Z/d)^2
  bool sl2z_closed = false;          // the family is stable under T and S
};

DsymReport dsym_enumerate(int d, int n);

}  // namespace tsurf
