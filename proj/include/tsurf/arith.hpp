#pragma once

#include "tsurf/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tsurf {

using u64 = std::uint64_t;

std::vector<std::pair<u64, int>> factorize(u64 n);
std::vector<u64> divisors(u64 n);
u64 gcd_u64(u64 a, u64 b);

u64 euler_phi(u64 n);
u64 dedekind_psi(u64 n);
int moebius_mu(u64 n);

struct FiberInvariants {
  int degree = 0;
  BigInt cone_count;
  BigInt degenerate_count;
  BigInt square_count;
  BigInt euler_char;
  BigInt euler_char_quotient;
  int spin_parity = 0;
};

FiberInvariants fiber_invariants(int d);
// Case-split form of the spin parity (d = 2..5, even d >= 6, odd d >= 7).
int spin_parity_rule(int d);

enum class SvKind { marked_torus_cylinders, marked_torus_saddles, d_symmetric_cylinders };

SvKind parse_sv_kind(const std::string& name);
std::string sv_kind_name(SvKind kind);
Rational sv_closed_form(SvKind kind, u64 n);

// phi(n) recovered from the d-symmetric constants by Moebius inversion.
Rational moebius_phi_from_dsym(u64 n);

// zeta(2) = pi^2 / 6.
double zeta2();

}  // namespace tsurf
