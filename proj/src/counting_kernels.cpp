#include "tsurf/counting_kernels.hpp"

#include "tsurf/errors.hpp"
#include "tsurf/geometry.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <numeric>

namespace tsurf {

namespace {

std::size_t idx(long long i) { return static_cast<std::size_t>(i); }

__int128 to_i128(const BigInt& z) {
  if (z > BigInt(1) << 62 || z < -(BigInt(1) << 62)) throw DomainError("threshold too large for exact 128-bit counting");
  return static_cast<__int128>(z.convert_to<long long>());
}

long long isqrt(long long x) {
  if (x <= 0) return 0;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Sorted lengths (in squares) of the objects being counted on the horizontal surface.
std::vector<int> horizontal_lengths(const CylinderDecomposition& dec, const Origami& o, CountKind kind, int a, int b) {
  std::vector<int> out;
  if (kind == CountKind::cylinders) {
    for (const auto& c : dec.cylinders) out.push_back(c.width);
  } else {
    for (const auto& c : dec.cylinders) {
      for (const auto& s : c.top.segments) {
        int la = o.vertices()[idx(s.from_vertex)].label;
        int lb = o.vertices()[idx(s.to_vertex)].label;
        if ((la == a && lb == b) || (la == b && lb == a)) out.push_back(s.length);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long count_admitted(const std::vector<int>& lens, __int128 limit) {
  long long c = 0;
  for (int len : lens) {
    if (static_cast<__int128>(len) * len > limit) break;
    ++c;
  }
  return c;
}

void check_labels(CountKind kind, int a, int b) {
  if (kind == CountKind::saddle_connections && a == b)
    throw DomainError("saddle connection endpoints must be distinct classes");
}

}  // namespace

Threshold::Threshold(const Rational& T, const Rational& unit) {
  if (T <= 0) throw DomainError("counting threshold must be positive");
  Rational r = T / unit;
  __int128 A = to_i128(numerator(r)), B = to_i128(denominator(r));
  if (A > (static_cast<__int128>(1) << 40) || B > (static_cast<__int128>(1) << 20))
    throw DomainError("threshold too large for exact 128-bit counting");
  num2 = A * A;
  den2 = B * B;
}

long long Threshold::max_norm2(long long len) const {
  __int128 q = num2 / (static_cast<__int128>(len) * len * den2);
  return static_cast<long long>(q);
}

OrbitGraph::OrbitGraph(const Origami& o, std::size_t cap) {
  OrbitOptions opts;
  opts.cap = cap;
  rec_ = orbit(o, opts);
  const std::size_t n = rec_.elements.size();
  tcyc_id_.assign(n, -1);
  tcyc_pos_.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (tcyc_id_[s] >= 0) continue;
    std::vector<int> cyc;
    for (int x = static_cast<int>(s); tcyc_id_[idx(x)] < 0; x = rec_.t_edge[idx(x)]) {
      tcyc_id_[idx(x)] = static_cast<int>(tcycles_.size());
      tcyc_pos_[idx(x)] = static_cast<int>(cyc.size());
      cyc.push_back(x);
    }
    tcycles_.push_back(std::move(cyc));
  }
}

int OrbitGraph::apply_T(int x, long long e) const {
  const auto& cyc = tcycles_[idx(tcyc_id_[idx(x)])];
  long long len = static_cast<long long>(cyc.size());
  long long pos = ((tcyc_pos_[idx(x)] + e) % len + len) % len;
  return cyc[idx(pos)];
}

int OrbitGraph::act(int x, const MatrixSL2Z& m) const {
  std::array<Letter, 256> word;
  int len = decompose_into(m, word.data(), static_cast<int>(word.size()));
  for (int k = len - 1; k >= 0; --k) {
    const Letter& l = word[idx(k)];
    x = l.kind == Letter::T ? apply_T(x, l.exponent) : apply_S(x);
  }
  return x;
}

std::vector<long long> count_kernel_reference(const Origami& o, CountKind kind, const std::vector<Rational>& Ts,
                                              int label_a, int label_b, std::vector<DirectionCount>* breakdown) {
  check_labels(kind, label_a, label_b);
  std::vector<Threshold> th;
  for (const auto& T : Ts) th.emplace_back(T, o.unit_length());
  std::vector<long long> total(Ts.size(), 0);
  long long R2 = 0;
  for (const auto& t : th) R2 = std::max(R2, t.max_norm2(1));
  long long P = isqrt(R2);
  for (long long p = -P; p <= P; ++p) {
    for (long long q = -P; q <= P; ++q) {
      long long n2 = p * p + q * q;
      if (n2 == 0 || n2 > R2 || std::gcd(p, q) != 1) continue;
      Origami sheared = act(o, primitive_to_horizontal(p, q));
      CylinderDecomposition dec = horizontal_cylinders(sheared);
      std::vector<int> lens = horizontal_lengths(dec, sheared, kind, label_a, label_b);
      long long last = 0;
      for (std::size_t j = 0; j < th.size(); ++j) {
        last = count_admitted(lens, th[j].num2 / (static_cast<__int128>(n2) * th[j].den2));
        total[j] += last;
      }
      if (breakdown && last > 0) breakdown->push_back({p, q, last});
    }
  }
  return total;
}

std::vector<long long> count_kernel_parallel(const Origami& o, CountKind kind, const std::vector<Rational>& Ts,
                                             int label_a, int label_b) {
  check_labels(kind, label_a, label_b);
  OrbitGraph graph(o);
  const auto& els = graph.record().elements;
  const long long ne = static_cast<long long>(els.size());
  std::vector<std::vector<int>> lens(els.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < ne; ++i)
    lens[idx(i)] = horizontal_lengths(horizontal_cylinders(els[idx(i)]), els[idx(i)], kind, label_a, label_b);

  int minlen = INT_MAX;
  for (const auto& l : lens)
    if (!l.empty()) minlen = std::min(minlen, l.front());
  std::vector<long long> total(Ts.size(), 0);
  if (minlen == INT_MAX) return total;

  std::vector<Threshold> th;
  for (const auto& T : Ts) th.emplace_back(T, o.unit_length());
  long long R2 = 0;
  for (const auto& t : th) R2 = std::max(R2, t.max_norm2(minlen));
  const long long P = isqrt(R2);
  const std::size_t K = th.size();

#pragma omp parallel
  {
    std::vector<long long> local(K, 0);
#pragma omp for schedule(dynamic, 8) nowait
    for (long long p = 0; p <= P; ++p) {
      long long qmax = isqrt(R2 - p * p);
      long long qlo = p == 0 ? 1 : -qmax;
      long long qhi = p == 0 ? 1 : qmax;
      for (long long q = qlo; q <= qhi; ++q) {
        if (std::gcd(p, q) != 1) continue;
        const long long n2 = p * p + q * q;
        const int x = graph.act(0, primitive_to_horizontal(p, q));
        const auto& l = lens[idx(x)];
        for (std::size_t j = 0; j < K; ++j)
          local[j] += count_admitted(l, th[j].num2 / (static_cast<__int128>(n2) * th[j].den2));
      }
    }
#pragma omp critical(tsurf_count_reduce)
    for (std::size_t j = 0; j < K; ++j) total[j] += local[j];
  }
  // (p,q) and (-p,-q) see rotated copies of the same surface
  for (auto& t : total) t *= 2;
  return total;
}

}  // namespace tsurf
