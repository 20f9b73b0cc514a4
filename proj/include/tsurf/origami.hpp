#pragma once

#include "tsurf/perm.hpp"
#include "tsurf/rational.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tsurf {

// A vertex of the square complex: an orbit of bottom-left corners under the corner rotation.
struct Vertex {
  int id = 0;
  int angle_multiple = 1;  // cone angle is 2*pi*angle_multiple
  int label = 0;           // 0 = unmarked
  std::vector<int> squares;  // squares whose bottom-left corner is this vertex
};

// Square-tiled surface. h(i) is the right neighbour of square i, v(i) the top neighbour.
// labels[i] names the bottom-left corner of square i (0 = unmarked); it must be constant
// on vertices.
class Origami {
 public:
  Origami() = default;
  Origami(Perm h, Perm v, Rational unit_length = 1, std::vector<int> labels = {});

  int n_squares() const { return h_.size(); }
  const Perm& h() const { return h_; }
  const Perm& v() const { return v_; }
  const Rational& unit_length() const { return unit_; }
  const std::vector<int>& labels() const { return labels_; }
  int label(int square) const { return labels_[static_cast<std::size_t>(square)]; }
  bool has_marks() const;

  const std::vector<Vertex>& vertices() const { return vertices_; }
  // Vertex id of the bottom-left corner of each square.
  int vertex_of(int square) const { return vertex_of_[static_cast<std::size_t>(square)]; }
  int top_left_vertex(int square) const { return vertex_of(v_(square)); }
  int bottom_right_vertex(int square) const { return vertex_of(h_(square)); }
  int top_right_vertex(int square) const { return vertex_of(v_(h_(square))); }
  // Cone point or named mark.
  bool is_special(int vertex_id) const;

  bool connected() const { return connected_; }
  Rational area() const { return unit_ * unit_ * n_squares(); }

  // Corner rotation v h v^-1 h^-1; its cycle through i is the bottom-left vertex of i.
  Perm corner_rotation() const;

  Origami with_labels(std::vector<int> labels) const;
  Origami with_unit(Rational unit) const;

 private:
  Perm h_, v_;
  Rational unit_{1};
  std::vector<int> labels_;
  std::vector<Vertex> vertices_;
  std::vector<int> vertex_of_;
  bool connected_ = true;
};

struct ValidationReport {
  bool bijective = true;
  bool connected = true;
  bool labels_consistent = true;
  int n_squares = 0;
  int components = 1;
  Rational area;
  std::vector<std::string> messages;
};

// Diagnostics on raw data; never throws for malformed permutations.
ValidationReport validate(const std::vector<int>& h, const std::vector<int>& v, const Rational& unit,
                          const std::vector<int>& labels = {});
ValidationReport validate(const Origami& o);

struct ConeEntry {
  int vertex_id = 0;
  int angle_multiple = 1;
  int zero_order = 0;
  int label = 0;
};

struct ConeData {
  std::vector<ConeEntry> cones;   // angle_multiple >= 2
  std::vector<ConeEntry> marked;  // regular vertices carrying a label
  int total_zero_order() const;
  std::vector<int> zero_orders() const;  // sorted decreasingly
};

ConeData singularities(const Origami& o);
int genus(const Origami& o);

// Sublattice of Z^2 in Hermite normal form, basis (a,0), (b,c) with a,c > 0, 0 <= b < a,
// in square units; physical vectors are these times unit_length.
struct Lattice2 {
  std::array<long long, 2> e1{0, 0};
  std::array<long long, 2> e2{0, 0};
  Rational unit{1};
  long long covolume_squares() const { return e1[0] * e2[1]; }
  Rational covolume() const { return unit * unit * covolume_squares(); }
  bool is_standard() const { return e1[0] == 1 && e2[0] == 0 && e2[1] == 1; }
  bool is_scaled_standard(long long k) const { return e1[0] == k && e2[0] == 0 && e2[1] == k; }
  std::string to_string() const;
};

// HNF of the lattice generated by the given integer vectors (must have full rank).
Lattice2 hermite_lattice(const std::vector<std::array<long long, 2>>& gens);
Lattice2 period_lattice(const Origami& o);

// Canonical relabeling: minimal BFS relabeling over all start squares, edge order
// (h, h^-1, v, v^-1), comparing (h', v', labels) square by square.
Origami canonical_form(const Origami& o);
// Flat key (h'[k], v'[k], label'[k])_k of the canonical form.
std::vector<std::int32_t> canonical_key(const Origami& o);
// Label-preserving permutations commuting with h and v.
int automorphism_count(const Origami& o);
bool isomorphic(const Origami& a, const Origami& b);

// Rotation by pi: (h^-1, v^-1) with corner labels carried along.
Origami rotate_pi(const Origami& o);

}  // namespace tsurf
