#pragma once

#include "tsurf/origami.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tsurf {

struct MatrixSL2Z {
  long long a = 1, b = 0, c = 0, d = 1;

  MatrixSL2Z() = default;
  MatrixSL2Z(long long a, long long b, long long c, long long d);  // checks det = 1

  static MatrixSL2Z T(long long e = 1) { return {1, e, 0, 1}; }
  static MatrixSL2Z S() { return {0, -1, 1, 0}; }
  static MatrixSL2Z minus_identity() { return {-1, 0, 0, -1}; }

  std::array<long long, 2> apply(long long x, long long y) const { return {a * x + b * y, c * x + d * y}; }
  friend MatrixSL2Z operator*(const MatrixSL2Z& m, const MatrixSL2Z& n);
  friend bool operator==(const MatrixSL2Z&, const MatrixSL2Z&) = default;
  std::string to_string() const;
};

// A letter of a word in the generators: T^exponent, or S (exponent ignored).
struct Letter {
  enum Kind { T, S } kind;
  long long exponent = 1;
};

// m = w[0] * w[1] * ... ; deterministic Euclid-style reduction.
std::vector<Letter> decompose(const MatrixSL2Z& m);
// Allocation-free variant; returns the word length (throws if it exceeds cap).
int decompose_into(const MatrixSL2Z& m, Letter* out, int cap);
MatrixSL2Z evaluate(const std::vector<Letter>& word);

// The matrix [[x, y], [-q, p]] with x p + y q = 1 from the extended Euclid algorithm;
// it maps (p,q) to (1,0).
MatrixSL2Z primitive_to_horizontal(long long p, long long q);

Origami act_T(const Origami& o, long long e = 1);
Origami act_S(const Origami& o);
Origami act(const Origami& o, const MatrixSL2Z& m);

struct OrbitRecord {
  std::vector<Origami> elements;  // canonical forms; elements[0] is the base point
  std::vector<int> t_edge;        // index of T * elements[i]
  std::vector<int> s_edge;        // index of S * elements[i]
  bool minus_id_in_stabilizer = false;
  bool truncated = false;
  std::size_t stabilizer_index() const { return elements.size(); }
};

struct OrbitOptions {
  std::size_t cap = 10'000'000;
  bool parallel = true;
};

OrbitRecord orbit(const Origami& o, const OrbitOptions& opts = {});

// An isomorphism from o to its rotation by pi that is an involution.
struct Involution {
  std::vector<int> phi;            // square i goes to square phi[i], turned by pi
  std::vector<int> fixed_centers;  // squares
  std::vector<int> fixed_right_edges;  // squares whose right edge midpoint is fixed
  std::vector<int> fixed_top_edges;    // squares whose top edge midpoint is fixed
  std::vector<int> fixed_vertices;     // vertex ids
  std::size_t fixed_point_count() const {
    return fixed_centers.size() + fixed_right_edges.size() + fixed_top_edges.size() + fixed_vertices.size();
  }
};

std::optional<Involution> minus_id_involution(const Origami& o);

}  // namespace tsurf
