#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tsurf {

// Permutation of {0..n-1}. Composition a * b means "apply b first, then a".
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);
  static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles);
  // Disjoint-cycle notation such as "(0 1 2)(3 4)"; "()" or "" is the identity.
  static Perm parse(std::string_view text, int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }

  Perm inverse() const;
  Perm pow(long long e) const;
  Perm conjugate_by(const Perm& g) const;  // g * this * g^-1

  // All cycles including fixed points, each starting at its smallest element.
  std::vector<std::vector<int>> cycles() const;
  // Cycle lengths sorted decreasingly, fixed points included.
  std::vector<int> cycle_type() const;
  bool is_identity() const;
  bool is_transposition() const;
  bool is_full_cycle() const;

  // Nontrivial cycles only; identity renders as "()".
  std::string to_string() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

 private:
  std::vector<int> img_;
};

Perm commutator(const Perm& a, const Perm& b);  // a b a^-1 b^-1
bool is_transitive(const std::vector<Perm>& generators);
// Orbits of the group generated by the given permutations, as a component id per point.
std::vector<int> orbit_ids(const std::vector<Perm>& generators, int* n_orbits = nullptr);

}  // namespace tsurf
