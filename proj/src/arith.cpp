#include "tsurf/arith.hpp"

#include "tsurf/errors.hpp"

#include <algorithm>
#include <numbers>

namespace tsurf {

std::vector<std::pair<u64, int>> factorize(u64 n) {
  if (n == 0) throw DomainError("factorize(0)");
  std::vector<std::pair<u64, int>> f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t m = out.size();
    u64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < m; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 euler_phi(u64 n) {
  if (n == 0) throw DomainError("euler_phi(0)");
  u64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

u64 dedekind_psi(u64 n) {
  if (n == 0) throw DomainError("dedekind_psi(0)");
  u64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p + 1);
  return r;
}

int moebius_mu(u64 n) {
  if (n == 0) throw DomainError("moebius_mu(0)");
  auto f = factorize(n);
  for (auto [p, e] : f)
    if (e > 1) return 0;
  return (f.size() % 2) ? -1 : 1;
}

namespace {

BigInt integral(const Rational& r, const char* what, int d) {
  if (!is_integer(r))
    throw InternalError(std::string(what) + " is not integral at d=" + std::to_string(d));
  return numerator(r);
}

}  // namespace

int spin_parity_rule(int d) {
  if (d < 2) throw DomainError("spin_parity_rule: d < 2");
  if (d <= 5) return 1;
  if (d % 2 == 0) return 0;
  Rational x(BigInt(euler_phi(static_cast<u64>(d)) * dedekind_psi(static_cast<u64>(d))), BigInt(24));
  return static_cast<int>(integral(x, "phi*psi/24", d) % 2);
}

FiberInvariants fiber_invariants(int d) {
  if (d < 2) throw DomainError("fiber_invariants: d must be >= 2");
  const Rational pp(BigInt(euler_phi(static_cast<u64>(d))) * dedekind_psi(static_cast<u64>(d)));
  FiberInvariants f;
  f.degree = d;
  f.cone_count = integral(Rational(3, 8) * (d - 2) * pp, "cone count", d);
  f.square_count = integral(Rational(1, 3) * (d - 1) * d * pp, "square count", d);
  f.euler_char = integral(Rational(-3, 4) * (d - 2) * pp, "Euler characteristic", d);
  if (d == 2) {
    f.degenerate_count = 4;
    f.euler_char_quotient = 2;
  } else {
    f.degenerate_count = integral(Rational(1, 24) * (5 * d + 6) * pp, "degenerate count", d);
    f.euler_char_quotient = integral(Rational(-1, 12) * (d - 6) * pp, "quotient Euler characteristic", d);
  }
  if (f.euler_char % 2 != 0) throw InternalError("odd Euler characteristic at d=" + std::to_string(d));
  BigInt a = abs(f.euler_char_quotient);
  if (a % 2 != 0) throw InternalError("odd quotient Euler characteristic at d=" + std::to_string(d));
  f.spin_parity = static_cast<int>((a / 2) % 2);
  return f;
}

SvKind parse_sv_kind(const std::string& name) {
  if (name == "marked_torus_cylinders") return SvKind::marked_torus_cylinders;
  if (name == "marked_torus_saddles") return SvKind::marked_torus_saddles;
  if (name == "d_symmetric_cylinders") return SvKind::d_symmetric_cylinders;
  throw DomainError("unknown constant kind '" + name + "'");
}

std::string sv_kind_name(SvKind kind) {
  switch (kind) {
    case SvKind::marked_torus_cylinders: return "marked_torus_cylinders";
    case SvKind::marked_torus_saddles: return "marked_torus_saddles";
    case SvKind::d_symmetric_cylinders: return "d_symmetric_cylinders";
  }
  return "?";
}

Rational sv_closed_form(SvKind kind, u64 n) {
  if (n == 0) throw DomainError("sv_closed_form: n must be positive");
  switch (kind) {
    case SvKind::marked_torus_cylinders:
      if (n < 2) throw DomainError("marked-torus constants need n >= 2");
      return Rational(2) - Rational(1, BigInt(dedekind_psi(n)));
    case SvKind::marked_torus_saddles: {
      if (n < 2) throw DomainError("marked-torus constants need n >= 2");
      Rational s = 0;
      for (u64 k = 1; k < n; ++k)
        if (gcd_u64(k, n) == 1) s += Rational(1, BigInt(k) * k);
      return Rational(BigInt(2) * n * n, BigInt(euler_phi(n)) * dedekind_psi(n)) * s;
    }
    case SvKind::d_symmetric_cylinders: {
      Rational s = 0;
      for (u64 e : divisors(n)) s += Rational(BigInt(euler_phi(e)), BigInt(e) * e * e);
      return 2 * s;
    }
  }
  throw DomainError("unknown constant kind");
}

Rational moebius_phi_from_dsym(u64 n) {
  Rational s = 0;
  for (u64 e : divisors(n)) {
    int mu = moebius_mu(n / e);
    if (mu) s += mu * sv_closed_form(SvKind::d_symmetric_cylinders, e);
  }
  return Rational(BigInt(n) * n * n, 2) * s;
}

double zeta2() { return std::numbers::pi * std::numbers::pi / 6.0; }

}  // namespace tsurf
