#pragma once

#include "tsurf/counting.hpp"
#include "tsurf/sl2z.hpp"

#include <cstdint>
#include <vector>

namespace tsurf {

// Orbit with T/S edges plus T-cycle tables so that T^e is a table lookup.
class OrbitGraph {
 public:
  explicit OrbitGraph(const Origami& o, std::size_t cap = 10'000'000);

  const OrbitRecord& record() const { return rec_; }
  std::size_t size() const { return rec_.elements.size(); }
  int apply_T(int x, long long e) const;
  int apply_S(int x) const { return rec_.s_edge[static_cast<std::size_t>(x)]; }
  // Index of m * elements[x].
  int act(int x, const MatrixSL2Z& m) const;

 private:
  OrbitRecord rec_;
  std::vector<int> tcyc_id_, tcyc_pos_;
  std::vector<std::vector<int>> tcycles_;
};

// Threshold test w^2 (p^2+q^2) <= (T/unit)^2 in exact integer arithmetic.
struct Threshold {
  __int128 num2 = 0;  // A^2 where T/unit = A/B
  __int128 den2 = 1;  // B^2
  Threshold(const Rational& T, const Rational& unit);
  bool admits(long long len, long long norm2) const {
    return static_cast<__int128>(len) * len * norm2 * den2 <= num2;
  }
  long long max_norm2(long long len) const;  // largest p^2+q^2 admitted for this length
};

// Serial reference: full disk of directions, direction_cylinders on every one.
std::vector<long long> count_kernel_reference(const Origami& o, CountKind kind, const std::vector<Rational>& Ts,
                                              int label_a, int label_b, std::vector<DirectionCount>* breakdown);
// OpenMP kernel: half-plane of directions, orbit-graph lookups, deterministic reduction.
std::vector<long long> count_kernel_parallel(const Origami& o, CountKind kind, const std::vector<Rational>& Ts,
                                             int label_a, int label_b);

}  // namespace tsurf
