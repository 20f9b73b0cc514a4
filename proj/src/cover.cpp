#include "tsurf/cover.hpp"

#include "tsurf/errors.hpp"
#include "tsurf/sl2z.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace tsurf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }
int mod(long long a, int n) { return static_cast<int>(((a % n) + n) % n); }

Perm full_cycle(int d) {
  std::vector<int> img(idx(d));
  for (int i = 0; i < d; ++i) img[idx(i)] = (i + 1) % d;
  return Perm(img);
}

std::array<int, 2> step_vec(Step s) {
  switch (s) {
    case Step::right: return {1, 0};
    case Step::up: return {0, 1};
    case Step::left: return {-1, 0};
    case Step::down: return {0, -1};
  }
  return {0, 0};
}

// Grid denominator of a branch position and its grid coordinates.
int grid_of(const Rational& a, const Rational& b) {
  BigInt da = denominator(a), db = denominator(b);
  BigInt n = lcm(da, db);
  if (n > 1000000) throw DomainError("branch position denominator too large");
  return n.convert_to<int>();
}

}  // namespace

CoverDatum CoverDatum::from(const Perm& h, const Perm& v, const Perm& c1, Rational t_h, Rational t_v) {
  CoverDatum x;
  x.degree = h.size();
  x.h = h;
  x.v = v;
  x.c1 = c1;
  x.c0 = c1.inverse() * commutator(v, h);
  x.t_h = std::move(t_h);
  x.t_v = std::move(t_v);
  return x;
}

bool relation_holds(const CoverDatum& x) { return commutator(x.v, x.h) == x.c1 * x.c0; }

void check_datum(const CoverDatum& x) {
  const int d = x.degree;
  if (d < 1) throw DomainError("cover degree must be positive");
  for (const Perm* p : {&x.h, &x.v, &x.c0, &x.c1})
    if (p->size() != d) throw DomainError("monodromy permutations must act on the d sheets");
  if (!relation_holds(x)) throw DomainError("monodromy relation v h v^-1 h^-1 = c1 c0 fails");
  if (!is_transitive({x.h, x.v, x.c0, x.c1})) throw DomainError("monodromy group is not transitive");
  if (is_integer(x.t_h) && is_integer(x.t_v)) throw DomainError("branch position coincides with [0]");
}

GridCover::GridCover(int degree, int n, const Perm& h, const Perm& v) : d_(degree), n_(n) {
  if (n < 1) throw DomainError("grid size must be positive");
  if (h.size() != degree || v.size() != degree) throw DomainError("grid cover: wrong permutation degree");
  const Perm id = Perm::identity(degree);
  R_.assign(idx(n * n), id);
  U_.assign(idx(n * n), id);
  for (int y = 0; y < n; ++y) R_[cell(n - 1, y)] = h;
  for (int x = 0; x < n; ++x) U_[cell(x, n - 1)] = v;
}

std::size_t GridCover::cell(int x, int y) const { return idx(mod(y, n_) * n_ + mod(x, n_)); }

Perm GridCover::monodromy(int x, int y) const {
  const Perm& U1 = U_[cell(x, y - 1)];
  const Perm& R2 = R_[cell(x - 1, y - 1)];
  const Perm& U3 = U_[cell(x - 1, y - 1)];
  const Perm& R4 = R_[cell(x - 1, y)];
  return U1 * R2 * U3.inverse() * R4.inverse();
}

void GridCover::move(Step s, const Perm& Mt) {
  const int x = bx_, y = by_;
  const std::size_t k1 = cell(x, y - 1), k2 = cell(x - 1, y - 1), k4 = cell(x - 1, y);
  const Perm U1 = U_[k1], R2 = R_[k2], U3 = U_[k2], R4 = R_[k4];
  switch (s) {
    case Step::right: U_[k1] = Mt * R4 * U3 * R2.inverse(); break;
    case Step::down: R_[k2] = U1.inverse() * Mt * R4 * U3; break;
    case Step::left: U_[k2] = R4.inverse() * Mt.inverse() * U1 * R2; break;
    case Step::up: R_[k4] = Mt.inverse() * U1 * R2 * U3.inverse(); break;
  }
  auto dv = step_vec(s);
  bx_ = mod(x + dv[0], n_);
  by_ = mod(y + dv[1], n_);
}

void GridCover::drag_from_origin(const Perm& c1, const std::vector<Step>& path) {
  if (bx_ != 0 || by_ != 0) throw DomainError("drag must start at the origin");
  if (path.empty()) throw DomainError("empty drag path");
  // Counterclockwise from cell (0,0) the upward ray comes first and the rightward ray last.
  const Perm m = monodromy(0, 0);
  switch (path.front()) {
    case Step::right: move(Step::right, c1.inverse() * m); break;
    case Step::up: move(Step::up, m * c1.inverse()); break;
    default:
      if (!m.is_identity()) throw DomainError("a drag leaving left or down needs an unbranched origin");
      move(path.front(), c1.inverse());
  }
  for (std::size_t k = 1; k < path.size(); ++k) push(path[k]);
  if (bx_ == 0 && by_ == 0) throw DomainError("drag path ends at the origin");
}

void GridCover::push(Step s) {
  move(s, Perm::identity(d_));
  if (bx_ == 0 && by_ == 0) throw DomainError("branch point pushed onto [0]");
}

Origami GridCover::to_origami() const {
  const int d = d_, n = n_;
  auto sq = [&](int s, int x, int y) { return (mod(y, n) * n + mod(x, n)) * d + s; };
  std::vector<int> h(idx(d * n * n)), v(h.size());
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      for (int s = 0; s < d; ++s) {
        h[idx(sq(s, x, y))] = sq(R(x, y)(s), x + 1, y);
        v[idx(sq(s, x, y))] = sq(U(x, y)(s), x, y + 1);
      }
  Origami bare{Perm(h), Perm(v), Rational(1, n)};
  std::vector<int> lab(h.size(), 0);
  auto mark = [&](int x, int y, int label) {
    std::set<int> verts;
    for (int s = 0; s < d; ++s) verts.insert(bare.vertex_of(sq(s, x, y)));
    bool ramified = false;
    for (int vid : verts) ramified |= bare.vertices()[idx(vid)].angle_multiple > 1;
    for (int vid : verts) {
      const auto& vx = bare.vertices()[idx(vid)];
      if (ramified && vx.angle_multiple == 1) continue;
      for (int s : vx.squares) lab[idx(s)] = label;
    }
  };
  mark(0, 0, 1);
  mark(bx_, by_, 2);
  return bare.with_labels(std::move(lab));
}

GridCover build_grid(const CoverDatum& datum) {
  check_datum(datum);
  Rational fh = frac(datum.t_h), fv = frac(datum.t_v);
  int n = grid_of(fh, fv);
  int bx = (fh * n).convert_to<int>(), by = (fv * n).convert_to<int>();
  GridCover g(datum.degree, n, datum.h, datum.v);
  std::vector<Step> path(idx(bx), Step::right);
  path.insert(path.end(), idx(by), Step::up);
  g.drag_from_origin(datum.c1, path);
  return g;
}

Origami build(const CoverDatum& datum) {
  GridCover g = build_grid(datum);
  Origami o = g.to_origami();
  // Riemann-Hurwitz: cone angles over [0] and the branch point follow c0 and c1
  const int d = g.degree(), n = g.grid();
  auto census = [&](int x, int y) {
    std::set<int> verts;
    for (int s = 0; s < d; ++s) verts.insert(o.vertex_of((y * n + x) * d + s));
    std::vector<int> ks;
    for (int vid : verts) ks.push_back(o.vertices()[idx(vid)].angle_multiple);
    std::sort(ks.rbegin(), ks.rend());
    return ks;
  };
  auto [bx, by] = g.branch();
  if (census(0, 0) != datum.c0.cycle_type() || census(bx, by) != datum.c1.cycle_type())
    throw InternalError("built cover violates Riemann-Hurwitz at the branch points");
  int extra = 0;
  for (const auto& vx : o.vertices()) extra += vx.angle_multiple - 1;
  int expected = 0;
  for (int k : datum.c0.cycle_type()) expected += k - 1;
  for (int k : datum.c1.cycle_type()) expected += k - 1;
  if (extra != expected) throw InternalError("built cover has cone points away from the branch points");
  return o;
}

std::vector<Step> segment_path(long long X, long long Y, int n) {
  if (n < 1) throw DomainError("grid size must be positive");
  std::vector<Step> path;
  auto vert = Y > 0 ? Step::up : Step::down;
  auto horiz = X > 0 ? Step::right : Step::left;
  if (Y == 0) {
    if (X == 0) throw DomainError("zero slit");
    path.assign(idx(static_cast<int>(std::llabs(X))), horiz);
  } else {
    path.push_back(vert);
    path.insert(path.end(), idx(static_cast<int>(std::llabs(X))), horiz);
    path.insert(path.end(), idx(static_cast<int>(std::llabs(Y) - 1)), vert);
  }
  // lifts of [0] on the straight segment
  long long g = std::gcd(std::llabs(X), std::llabs(Y));
  for (long long k = 1; k <= g; ++k)
    if ((X / g * k) % n == 0 && (Y / g * k) % n == 0) throw DomainError("slit passes through a lift of [0]");
  // path vertices, and the closed polygon path + segment back to the origin
  std::vector<std::array<long long, 2>> poly{{0, 0}};
  long long x = 0, y = 0;
  for (Step s : path) {
    auto dv = step_vec(s);
    x += dv[0];
    y += dv[1];
    if (x % n == 0 && y % n == 0) throw DomainError("drag path meets a lift of [0]");
    poly.push_back({x, y});
  }
  auto winding = [&](long long px, long long py) {
    int w = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      auto a = poly[i], b = poly[(i + 1) % poly.size()];
      __int128 cross = static_cast<__int128>(b[0] - a[0]) * (py - a[1]) - static_cast<__int128>(px - a[0]) * (b[1] - a[1]);
      if (a[1] <= py) {
        if (b[1] > py && cross > 0) ++w;
      } else if (b[1] <= py && cross < 0) {
        --w;
      }
    }
    return w;
  };
  long long xmin = std::min(0LL, X), xmax = std::max(0LL, X), ymin = std::min(0LL, Y), ymax = std::max(0LL, Y);
  for (long long lx = (xmin / n - 1) * n; lx <= xmax + n; lx += n)
    for (long long ly = (ymin / n - 1) * n; ly <= ymax + n; ly += n) {
      if (lx == 0 && ly == 0) continue;
      if (winding(lx, ly) != 0) throw DomainError("drag path is not homotopic to the slit");
    }
  return path;
}

CoverDatum connected_sum_datum(int a, int d, const Rational& t_h, const Rational& t_v, bool cyclic) {
  if (d < 1) throw DomainError("degree must be positive");
  CoverDatum x;
  if (cyclic) {
    x = CoverDatum::from(Perm::identity(d), Perm::identity(d), full_cycle(d), t_h, t_v);
  } else {
    if (a <= 0 || a >= d) throw DomainError("connected sum needs 0 < a < d");
    std::vector<int> blocks(idx(d));
    for (int i = 0; i < d; ++i) blocks[idx(i)] = i < a ? (i + 1) % a : a + (i - a + 1) % (d - a);
    std::vector<int> sw(idx(d));
    std::iota(sw.begin(), sw.end(), 0);
    std::swap(sw[0], sw[idx(a)]);
    x = CoverDatum::from(Perm(blocks), Perm::identity(d), Perm(sw), t_h, t_v);
  }
  return x;
}

Origami connected_sum(int a, int d, const Rational& t_h, const Rational& t_v, bool cyclic) {
  CoverDatum x = connected_sum_datum(a, d, t_h, t_v, cyclic);
  if (is_integer(t_h) && is_integer(t_v)) throw DomainError("slit endpoint is a lattice point");
  int n = grid_of(t_h, t_v);
  long long X = (t_h * n).convert_to<long long>(), Y = (t_v * n).convert_to<long long>();
  GridCover g(d, n, x.h, x.v);
  g.drag_from_origin(x.c1, segment_path(X, Y, n));
  return g.to_origami();
}

int loop_closure_period(int a, int d, const Rational& t_v, int search_limit) {
  if (a <= 0 || a >= d) throw DomainError("loop_closure_period needs 0 < a < d");
  if (std::gcd(a, d) != 1) throw DomainError("loop_closure_period needs gcd(a,d) = 1");
  if (t_v <= 0 || t_v >= 1) throw DomainError("t_v must lie in (0,1)");
  const int n = denominator(t_v).convert_to<int>();
  if (search_limit <= 0) search_limit = 2 * d * d * d;
  std::vector<Rational> samples;
  for (int j = 0; j < n; ++j) samples.emplace_back(j, n);
  std::vector<std::vector<std::int32_t>> base;
  for (const auto& th : samples) base.push_back(canonical_key(connected_sum(a, d, th, t_v, false)));
  for (int P = 1; P <= search_limit; ++P) {
    bool all = true;
    for (std::size_t k = 0; k < samples.size() && all; ++k)
      all = canonical_key(connected_sum(a, d, samples[k] + P, t_v, false)) == base[k];
    if (all) return P;
  }
  throw InternalError("no loop period found below the search limit");
}

CoverDatum pointpush(const CoverDatum& datum, PushDir dir) {
  check_datum(datum);
  CoverDatum y = datum;
  if (dir == PushDir::H) {
    y.v = datum.c1.inverse() * datum.v;
    y.c1 = datum.c1.conjugate_by(datum.h);
  } else {
    y.h = datum.c1 * datum.h;
    y.c1 = datum.c1.conjugate_by(datum.v);
  }
  y.c0 = y.c1.inverse() * commutator(y.v, y.h);
  if (!relation_holds(y) || y.c0.cycle_type() != datum.c0.cycle_type())
    throw InternalError("point push broke the monodromy relation");
  if (!is_transitive({y.h, y.v, y.c0, y.c1})) throw InternalError("point push disconnected the cover");
  return y;
}

std::vector<std::int32_t> tuple_key(const std::vector<Perm>& gens, int* matches) {
  if (gens.empty()) throw DomainError("tuple_key: no generators");
  const int n = gens.front().size();
  const std::size_t m = gens.size();
  std::vector<Perm> invs;
  for (const auto& g : gens) invs.push_back(g.inverse());
  std::vector<std::int32_t> best, cand(idx(n) * m);
  int count = 0;
  std::vector<int> newid(idx(n)), order(idx(n));
  for (int start = 0; start < n; ++start) {
    std::fill(newid.begin(), newid.end(), -1);
    int assigned = 0;
    newid[idx(start)] = assigned;
    order[idx(assigned++)] = start;
    int cmp = best.empty() ? -1 : 0;
    bool abort = false;
    for (int k = 0; k < n && !abort; ++k) {
      if (k >= assigned) throw DomainError("tuple_key: group is not transitive");
      int x = order[idx(k)];
      for (std::size_t j = 0; j < m; ++j)
        for (int yv : {gens[j](x), invs[j](x)})
          if (newid[idx(yv)] < 0) {
            newid[idx(yv)] = assigned;
            order[idx(assigned++)] = yv;
          }
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t p = idx(k) * m + j;
        cand[p] = newid[idx(gens[j](x))];
        if (cmp == 0) {
          if (cand[p] < best[p]) cmp = -1;
          else if (cand[p] > best[p]) {
            abort = true;
            break;
          }
        }
      }
    }
    if (abort) continue;
    if (cmp < 0) {
      best = cand;
      count = 1;
    } else {
      ++count;
    }
  }
  if (matches) *matches = count;
  return best;
}

namespace {

std::vector<int> zero_orders_of(const Origami& o) {
  std::vector<int> z;
  for (const auto& vx : o.vertices())
    if (vx.angle_multiple > 1) z.push_back(vx.angle_multiple - 1);
  std::sort(z.rbegin(), z.rend());
  return z;
}

// Pushes around one torus loop, detouring off the horizontal/vertical line through [0].
std::vector<Step> loop_path(PushDir dir, int bx, int by, int n) {
  std::vector<Step> p;
  if (dir == PushDir::H) {
    if (by == 0) p.push_back(Step::up);
    p.insert(p.end(), idx(n), Step::right);
    if (by == 0) p.push_back(Step::down);
  } else {
    if (bx == 0) p.push_back(Step::right);
    p.insert(p.end(), idx(n), Step::up);
    if (bx == 0) p.push_back(Step::left);
  }
  return p;
}

}  // namespace

DsymReport dsym_enumerate(int d, int n) {
  if (d < 1 || n < 1) throw DomainError("dsym_enumerate needs d, n >= 1");
  DsymReport rep;
  rep.degree = d;
  rep.denominator = n;
  const Perm c = full_cycle(d);

  if (n == 1) {
    // the only position is [0] itself: unbranched cyclic covers, one per nonzero (p,q) mod d
    rep.positions = 1;
    rep.expected = static_cast<long long>(d) * d - 1;
    std::set<std::vector<std::int32_t>> keys, origami_keys;
    std::vector<Origami> built;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        if (p == 0 && q == 0) continue;
        DsymEntry e;
        e.t_h = 0;
        e.t_v = 0;
        e.p = p;
        e.q = q;
        e.degenerate = true;
        e.connected = std::gcd(std::gcd(p, q), d) == 1;
        e.key = tuple_key({c.pow(p), c.pow(q), c});
        keys.insert(e.key);
        if (e.connected) {
          Origami o(c.pow(p), c.pow(q));
          e.automorphisms = automorphism_count(o);
          origami_keys.insert(canonical_key(o));
          built.push_back(o);
          ++rep.connected_count;
        }
        rep.entries.push_back(std::move(e));
      }
    rep.injective = keys.size() == rep.entries.size();
    rep.regular_push_action = true;  // no branch point to push
    rep.sl2z_closed = std::all_of(built.begin(), built.end(), [&](const Origami& o) {
      return origami_keys.count(canonical_key(act_T(o))) && origami_keys.count(canonical_key(act_S(o)));
    });
    return rep;
  }

  rep.expected = static_cast<long long>(n) * n * d * d - static_cast<long long>(d) * d;
  std::set<std::vector<std::int32_t>> all_keys;
  std::vector<Origami> built;
  bool regular = true;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i == 0 && j == 0) continue;
      ++rep.positions;
      std::map<std::vector<std::int32_t>, int> local;  // class key -> index p*d+q
      std::vector<GridCover> grids;
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
          CoverDatum x = CoverDatum::from(c.pow(p), c.pow(q), c, Rational(i, n), Rational(j, n));
          GridCover g = build_grid(x);
          Origami o = build(x);
          DsymEntry e;
          e.t_h = Rational(i, n);
          e.t_v = Rational(j, n);
          e.p = p;
          e.q = q;
          e.zero_orders = zero_orders_of(o);
          e.automorphisms = automorphism_count(o);
          e.key = canonical_key(o);
          local.emplace(e.key, p * d + q);
          all_keys.insert(e.key);
          built.push_back(o);
          grids.push_back(std::move(g));
          ++rep.connected_count;
          rep.entries.push_back(std::move(e));
        }
      if (static_cast<int>(local.size()) != d * d) {
        regular = false;
        continue;
      }
      // permutations of the d^2 classes induced by the two loop pushes
      std::vector<int> PH(idx(d * d)), PV(idx(d * d));
      for (int k = 0; k < d * d; ++k) {
        for (auto dir : {PushDir::H, PushDir::V}) {
          GridCover g = grids[idx(k)];
          for (Step s : loop_path(dir, i, j, n)) g.push(s);
          auto it = local.find(canonical_key(g.to_origami()));
          if (it == local.end()) {
            regular = false;
            continue;
          }
          (dir == PushDir::H ? PH : PV)[idx(k)] = it->second;
        }
      }
      if (!regular) continue;
      Perm ph(PH), pv(PV);
      regular = regular && ph * pv == pv * ph && ph.pow(d).is_identity() && pv.pow(d).is_identity();
      int k = 0;
      orbit_ids({ph, pv}, &k);
      regular = regular && k == 1;
    }
  rep.injective = all_keys.size() == rep.entries.size();
  rep.regular_push_action = regular;
  rep.sl2z_closed = std::all_of(built.begin(), built.end(), [&](const Origami& o) {
    return all_keys.count(canonical_key(act_T(o))) && all_keys.count(canonical_key(act_S(o)));
  });
  return rep;
}

}  // namespace tsurf

namespace tsurf {

GridCover GridCover::from_origami(const Origami& o, int n) {
  if (n < 1) throw DomainError("grid size must be positive");
  if (o.unit_length() != Rational(1, n)) throw DomainError("origami unit does not match the grid");
  const int N = o.n_squares();
  if (N % (n * n) != 0) throw DomainError("square count is not a multiple of the grid size");
  const int d = N / (n * n);
  int origin = -1, branch = -1;
  for (int s = 0; s < N; ++s) {
    if (origin < 0 && o.label(s) == 1) origin = s;
    if (branch < 0 && o.label(s) == 2) branch = s;
  }
  if (origin < 0 || branch < 0) throw DomainError("origami lacks the two marked corners");
  std::vector<int> cx(idx(N), -1), cy(idx(N), -1);
  cx[idx(origin)] = 0;
  cy[idx(origin)] = 0;
  std::vector<int> stack{origin};
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (auto [t, dx, dy] : {std::tuple{o.h()(s), 1, 0}, std::tuple{o.v()(s), 0, 1},
                             std::tuple{o.h().inverse()(s), -1, 0}, std::tuple{o.v().inverse()(s), 0, -1}}) {
      int x = mod(cx[idx(s)] + dx, n), y = mod(cy[idx(s)] + dy, n);
      if (cx[idx(t)] < 0) {
        cx[idx(t)] = x;
        cy[idx(t)] = y;
        stack.push_back(t);
      } else if (cx[idx(t)] != x || cy[idx(t)] != y) {
        throw DomainError("origami does not cover the grid torus");
      }
    }
  }
  std::vector<int> sheet(idx(N)), filled(idx(n * n), 0);
  for (int s = 0; s < N; ++s) {
    if (cx[idx(s)] < 0) throw DomainError("origami is not connected");
    int& f = filled[idx(cy[idx(s)] * n + cx[idx(s)])];
    sheet[idx(s)] = f++;
  }
  if (std::any_of(filled.begin(), filled.end(), [d](int f) { return f != d; }))
    throw DomainError("grid cells carry unequal sheet counts");
  GridCover g(d, n, Perm::identity(d), Perm::identity(d));
  std::vector<std::vector<int>> R(idx(n * n), std::vector<int>(idx(d))), U = R;
  for (int s = 0; s < N; ++s) {
    std::size_t c = idx(cy[idx(s)] * n + cx[idx(s)]);
    R[c][idx(sheet[idx(s)])] = sheet[idx(o.h()(s))];
    U[c][idx(sheet[idx(s)])] = sheet[idx(o.v()(s))];
  }
  for (std::size_t c = 0; c < R.size(); ++c) {
    g.R_[c] = Perm(R[c]);
    g.U_[c] = Perm(U[c]);
  }
  g.bx_ = cx[idx(branch)];
  g.by_ = cy[idx(branch)];
  if (g.bx_ == 0 && g.by_ == 0) throw DomainError("marked corners lie over the same grid point");
  return g;
}

}  // namespace tsurf
