#include "tsurf/sl2z.hpp"

#include "tsurf/errors.hpp"

#include <omp.h>

#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace tsurf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::int32_t>& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : k) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

MatrixSL2Z::MatrixSL2Z(long long a_, long long b_, long long c_, long long d_) : a(a_), b(b_), c(c_), d(d_) {
  if (a * d - b * c != 1) throw DomainError("matrix is not in SL(2,Z)");
}

MatrixSL2Z operator*(const MatrixSL2Z& m, const MatrixSL2Z& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

std::string MatrixSL2Z::to_string() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

int decompose_into(const MatrixSL2Z& m, Letter* out, int cap) {
  long long a = m.a, b = m.b, c = m.c, d = m.d;
  int len = 0;
  auto push = [&](Letter l) {
    if (len >= cap) throw ResourceError("word decomposition exceeds buffer");
    out[len++] = l;
  };
  while (c != 0) {
    // centred remainder |a - q c| <= |c|/2 keeps the word logarithmic
    long long q = floor_div(a, c);
    if (2 * std::llabs(a - q * c) > std::llabs(c)) ++q;
    long long a1 = a - q * c, b1 = b - q * d;
    if (q != 0) push({Letter::T, q});
    push({Letter::S, 1});
    // S^-1 [[a1, b1], [c, d]] = [[c, d], [-a1, -b1]]
    a = c;
    b = d;
    c = -a1;
    d = -b1;
  }
  if (a == 1) {
    if (b != 0) push({Letter::T, b});
  } else {
    push({Letter::S, 1});
    push({Letter::S, 1});
    if (b != 0) push({Letter::T, -b});
  }
  return len;
}

std::vector<Letter> decompose(const MatrixSL2Z& m) {
  std::vector<Letter> word(256, Letter{Letter::T, 0});
  word.resize(static_cast<std::size_t>(decompose_into(m, word.data(), 256)));
  return word;
}

MatrixSL2Z evaluate(const std::vector<Letter>& word) {
  MatrixSL2Z m;
  for (const auto& l : word) m = m * (l.kind == Letter::T ? MatrixSL2Z::T(l.exponent) : MatrixSL2Z::S());
  return m;
}

MatrixSL2Z primitive_to_horizontal(long long p, long long q) {
  if (p == 0 && q == 0) throw DomainError("zero direction");
  long long r0 = p, r1 = q, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long k = r1 > 0 ? floor_div(r0, r1) : -floor_div(r0, -r1);
    long long tmp = r0 - k * r1; r0 = r1; r1 = tmp;
    tmp = s0 - k * s1; s0 = s1; s1 = tmp;
    tmp = t0 - k * t1; t0 = t1; t1 = tmp;
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  if (r0 != 1) throw DomainError("direction (" + std::to_string(p) + "," + std::to_string(q) + ") is not primitive");
  return MatrixSL2Z(s0, t0, -q, p);
}

Origami act_T(const Origami& o, long long e) {
  if (!o.connected()) throw DomainError("SL(2,Z) action on a disconnected origami");
  return Origami(o.h(), o.v() * o.h().pow(-e), o.unit_length(), o.labels());
}

Origami act_S(const Origami& o) {
  if (!o.connected()) throw DomainError("SL(2,Z) action on a disconnected origami");
  const int n = o.n_squares();
  std::vector<int> lab(idx(n));
  for (int i = 0; i < n; ++i) lab[idx(i)] = o.label(o.v()(i));
  return Origami(o.v().inverse(), o.h(), o.unit_length(), lab);
}

Origami act(const Origami& o, const MatrixSL2Z& m) {
  auto word = decompose(m);
  Origami x = o;
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = it->kind == Letter::T ? act_T(x, it->exponent) : act_S(x);
  return x;
}

OrbitRecord orbit(const Origami& o, const OrbitOptions& opts) {
  OrbitRecord rec;
  std::unordered_map<std::vector<std::int32_t>, int, KeyHash> index;
  Origami base = canonical_form(o);
  index.emplace(canonical_key(base), 0);
  rec.elements.push_back(base);
  rec.t_edge.push_back(-1);
  rec.s_edge.push_back(-1);

  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    const std::size_t m = frontier.size();
    std::vector<Origami> images(2 * m);
    std::vector<std::vector<std::int32_t>> keys(2 * m);
    const long long mm = static_cast<long long>(m);
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel && m > 1)
    for (long long k = 0; k < mm; ++k) {
      const Origami& x = rec.elements[idx(frontier[idx(static_cast<int>(k))])];
      for (int g = 0; g < 2; ++g) {
        Origami y = canonical_form(g == 0 ? act_T(x) : act_S(x));
        keys[idx(static_cast<int>(2 * k + g))] = canonical_key(y);
        images[idx(static_cast<int>(2 * k + g))] = std::move(y);
      }
    }
    std::vector<int> next;
    for (std::size_t k = 0; k < m; ++k) {
      for (int g = 0; g < 2; ++g) {
        std::size_t slot = 2 * k + static_cast<std::size_t>(g);
        auto [it, fresh] = index.try_emplace(std::move(keys[slot]), static_cast<int>(rec.elements.size()));
        if (fresh) {
          if (rec.elements.size() >= opts.cap) {
            rec.truncated = true;
            index.erase(it);
            continue;
          }
          rec.elements.push_back(std::move(images[slot]));
          rec.t_edge.push_back(-1);
          rec.s_edge.push_back(-1);
          next.push_back(it->second);
        }
        (g == 0 ? rec.t_edge : rec.s_edge)[idx(frontier[k])] = it->second;
      }
    }
    if (rec.truncated) break;
    frontier = std::move(next);
  }
  rec.minus_id_in_stabilizer = isomorphic(rotate_pi(base), base);
  if (rec.truncated) throw ResourceError("orbit exceeds the configured cap of " + std::to_string(opts.cap));
  return rec;
}

std::optional<Involution> minus_id_involution(const Origami& o) {
  if (!o.connected()) throw DomainError("involution search on a disconnected origami");
  const int n = o.n_squares();
  const Perm& H = o.h();
  const Perm& V = o.v();
  const Perm Hi = H.inverse(), Vi = V.inverse();
  std::vector<int> phi(idx(n));
  std::vector<int> queue;
  for (int t = 0; t < n; ++t) {
    std::fill(phi.begin(), phi.end(), -1);
    phi[0] = t;
    queue.assign(1, 0);
    bool ok = true;
    for (std::size_t k = 0; k < queue.size() && ok; ++k) {
      int x = queue[k], fx = phi[idx(x)];
      const std::array<std::pair<int, int>, 4> step{{{H(x), Hi(fx)}, {Hi(x), H(fx)}, {V(x), Vi(fx)}, {Vi(x), V(fx)}}};
      for (auto [y, fy] : step) {
        if (phi[idx(y)] < 0) {
          phi[idx(y)] = fy;
          queue.push_back(y);
        } else if (phi[idx(y)] != fy) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    for (int i = 0; i < n && ok; ++i) {
      if (phi[idx(phi[idx(i)])] != i) ok = false;
      else if (o.label(i) != o.label(V(H(phi[idx(i)])))) ok = false;
    }
    if (!ok) continue;

    Involution inv;
    inv.phi = phi;
    for (int i = 0; i < n; ++i) {
      if (phi[idx(i)] == i) inv.fixed_centers.push_back(i);
      if (phi[idx(i)] == H(i)) inv.fixed_right_edges.push_back(i);
      if (phi[idx(i)] == V(i)) inv.fixed_top_edges.push_back(i);
    }
    for (const auto& vx : o.vertices()) {
      int i = vx.squares.front();
      if (o.vertex_of(V(H(phi[idx(i)]))) == vx.id) inv.fixed_vertices.push_back(vx.id);
    }
    return inv;
  }
  return std::nullopt;
}

}  // namespace tsurf
