#include "tsurf/fiber.hpp"

#include "tsurf/arith.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/geometry.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tsurf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

constexpr int kMaxDegree = 8;
using Arr = std::array<std::uint8_t, kMaxDegree>;
using TupleKey = std::array<std::uint8_t, 3 * kMaxDegree>;

Arr compose(const Arr& a, const Arr& b, int d) {
  Arr r{};
  for (int i = 0; i < d; ++i) r[idx(i)] = a[b[idx(i)]];
  return r;
}

Arr inverse(const Arr& a, int d) {
  Arr r{};
  for (int i = 0; i < d; ++i) r[a[idx(i)]] = static_cast<std::uint8_t>(i);
  return r;
}

int moved(const Arr& a, int d) {
  int m = 0;
  for (int i = 0; i < d; ++i) m += a[idx(i)] != i;
  return m;
}

bool transitive3(const Arr& a, const Arr& b, const Arr& c, int d) {
  unsigned seen = 1u, frontier = 1u;
  while (frontier) {
    unsigned next = 0;
    for (int i = 0; i < d; ++i)
      if (frontier >> i & 1u) next |= 1u << a[idx(i)] | 1u << b[idx(i)] | 1u << c[idx(i)];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << d) - 1u;
}

// Minimal BFS relabelling under (a, a^-1, b, b^-1, c, c^-1); also the number of minimal starts.
TupleKey tuple_key3(const std::array<Arr, 3>& g, int d, int& matches) {
  std::array<Arr, 3> gi{inverse(g[0], d), inverse(g[1], d), inverse(g[2], d)};
  TupleKey best{}, cand{};
  bool have = false;
  matches = 0;
  for (int start = 0; start < d; ++start) {
    std::array<int, kMaxDegree> nid;
    nid.fill(-1);
    std::array<int, kMaxDegree> order{};
    int assigned = 0;
    nid[idx(start)] = assigned;
    order[idx(assigned++)] = start;
    for (int k = 0; k < d; ++k) {
      int x = order[idx(k)];
      for (int j = 0; j < 3; ++j)
        for (int y : {static_cast<int>(g[idx(j)][idx(x)]), static_cast<int>(gi[idx(j)][idx(x)])})
          if (nid[idx(y)] < 0) {
            nid[idx(y)] = assigned;
            order[idx(assigned++)] = y;
          }
      for (int j = 0; j < 3; ++j) cand[idx(3 * k + j)] = static_cast<std::uint8_t>(nid[g[idx(j)][idx(x)]]);
    }
    if (!have || cand < best) {
      best = cand;
      matches = 1;
      have = true;
    } else if (cand == best) {
      ++matches;
    }
  }
  return best;
}

Perm to_perm(const Arr& a, int d) { return Perm(std::vector<int>(a.begin(), a.begin() + d)); }

struct RawClass {
  std::array<Arr, 3> rep;  // h, v, c1
  long long count = 0;
  int centralizer = 0;
};

long long factorial(int d) {
  long long f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

std::map<std::vector<std::int32_t>, int> key_index(const FiberSurface& f) {
  std::map<std::vector<std::int32_t>, int> m;
  for (int s = 0; s < f.origami.n_squares(); ++s) m.emplace(f.classes[idx(f.point_index[idx(s)])].key, s);
  return m;
}

std::optional<FiberLocation> locate_with(const std::map<std::vector<std::int32_t>, int>& keys, const Origami& x) {
  GridCover g = GridCover::from_origami(x, 2);
  auto [bx, by] = g.branch();
  FiberLocation loc;
  if (bx == 1 && by == 1) {
    loc.kind = FiberLocation::center;
  } else if (bx == 0 && by == 1) {
    g.push(Step::right);
    loc.kind = FiberLocation::left_edge;
  } else if (bx == 1 && by == 0) {
    g.push(Step::up);
    loc.kind = FiberLocation::bottom_edge;
  } else {
    return std::nullopt;
  }
  auto it = keys.find(canonical_key(g.to_origami()));
  if (it == keys.end()) return std::nullopt;
  loc.square = it->second;
  return loc;
}

std::vector<int> natural_widths(const Origami& x) {
  std::vector<int> w;
  for (int squares : horizontal_cylinders(x).widths()) {
    Rational len = x.unit_length() * squares;
    if (!is_integer(len)) throw InternalError("cover cylinder with non-integral circumference");
    w.push_back(numerator_of(len).convert_to<int>());
  }
  std::sort(w.begin(), w.end());
  return w;
}

FiberSurface assemble(int d, std::vector<FiberClass> classes, const Rational& weighted, const Rational& transitive) {
  const int N = static_cast<int>(classes.size());
  std::map<std::vector<std::int32_t>, int> index;
  for (int i = 0; i < N; ++i) index.emplace(classes[idx(i)].key, i);
  if (static_cast<int>(index.size()) != N) throw InternalError("fiber classes share a cover");
  std::vector<int> H(idx(N)), V(idx(N));
  bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (int i = 0; i < N; ++i) {
    const GridCover base = build_grid(classes[idx(i)].datum());
    for (auto [step, out] : {std::pair{Step::right, &H}, std::pair{Step::up, &V}}) {
      GridCover g = base;
      g.push(step);
      g.push(step);
      auto it = index.find(canonical_key(g.to_origami()));
      if (it == index.end()) ok = false;
      else (*out)[idx(i)] = it->second;
    }
  }
  if (!ok) throw InternalError("point push left the enumerated classes");
  Origami bare{Perm(H), Perm(V)};
  FiberSurface f;
  f.degree = d;
  f.vertex_kind.resize(bare.vertices().size());
  std::vector<int> lab(idx(N), 0);
  for (const auto& vx : bare.vertices()) {
    if (vx.angle_multiple == 1) {
      f.vertex_kind[idx(vx.id)] = FiberVertexKind::degenerate;
      for (int s : vx.squares) lab[idx(s)] = 1;
    } else {
      f.vertex_kind[idx(vx.id)] = FiberVertexKind::cone;
    }
  }
  f.origami = bare.with_labels(lab);
  f.classes = std::move(classes);
  f.point_index.resize(idx(N));
  std::iota(f.point_index.begin(), f.point_index.end(), 0);
  f.weighted_area = weighted;
  f.transitive_total = transitive;
  return f;
}

}  // namespace

Origami FiberClass::cover() const { return build(datum()); }

FiberEnumeration enumerate_fiber(int d, bool check_total) {
  if (d < 2 || d > kMaxDegree) throw DomainError("enumerate_fiber supports 2 <= d <= 8");
  std::vector<Arr> perms;
  Arr p{};
  std::iota(p.begin(), p.begin() + d, 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.begin() + d));
  std::vector<Arr> inv;
  for (const auto& x : perms) inv.push_back(inverse(x, d));
  std::vector<Arr> transpositions;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      Arr t{};
      std::iota(t.begin(), t.begin() + d, 0);
      std::swap(t[idx(a)], t[idx(b)]);
      transpositions.push_back(t);
    }

  const long long P = static_cast<long long>(perms.size());
  std::map<TupleKey, RawClass> merged;
#pragma omp parallel
  {
    std::map<TupleKey, RawClass> local;
#pragma omp for schedule(dynamic)
    for (long long ih = 0; ih < P; ++ih) {
      const Arr& h = perms[static_cast<std::size_t>(ih)];
      const Arr& hi = inv[static_cast<std::size_t>(ih)];
      for (std::size_t iv = 0; iv < perms.size(); ++iv) {
        const Arr& v = perms[iv];
        Arr K = compose(v, compose(h, compose(inv[iv], hi, d), d), d);
        int m = moved(K, d);
        if (m == 1 || m == 2 || m > 4) continue;
        if (m == 4 && moved(compose(K, K, d), d) != 0) continue;
        for (const Arr& c1 : transpositions) {
          if (moved(compose(c1, K, d), d) != 2) continue;
          if (!transitive3(h, v, c1, d)) continue;
          int matches = 0;
          std::array<Arr, 3> tup{h, v, c1};
          TupleKey key = tuple_key3(tup, d, matches);
          auto [it, fresh] = local.try_emplace(key);
          if (fresh) {
            it->second.rep = tup;
            it->second.centralizer = matches;
          }
          ++it->second.count;
        }
      }
    }
#pragma omp critical
    for (auto& [key, rc] : local) {
      auto [it, fresh] = merged.try_emplace(key, rc);
      if (!fresh) {
        it->second.count += rc.count;
        // keep the smallest representative so the result is independent of scheduling
        it->second.rep = std::min(it->second.rep, rc.rep);
      }
    }
  }

  const long long dfact = factorial(d);
  std::vector<std::pair<TupleKey, RawClass>> raw(merged.begin(), merged.end());
  std::vector<char> primitive(raw.size(), 0);
  std::vector<FiberClass> built(raw.size());
  bool counts_ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : counts_ok)
  for (long long k = 0; k < static_cast<long long>(raw.size()); ++k) {
    const RawClass& rc = raw[static_cast<std::size_t>(k)].second;
    counts_ok = counts_ok && rc.count * rc.centralizer == dfact;
    FiberClass fc;
    fc.h = to_perm(rc.rep[0], d);
    fc.v = to_perm(rc.rep[1], d);
    fc.c1 = to_perm(rc.rep[2], d);
    fc.c0 = fc.c1.inverse() * commutator(fc.v, fc.h);
    fc.centralizer = rc.centralizer;
    Origami o = fc.cover();
    primitive[static_cast<std::size_t>(k)] = period_lattice(o).is_scaled_standard(2);
    fc.key = canonical_key(o);
    built[static_cast<std::size_t>(k)] = std::move(fc);
  }
  if (!counts_ok) throw InternalError("orbit-stabilizer count mismatch in the tuple enumeration");

  FiberEnumeration out;
  out.degree = d;
  out.weighted_total = 0;
  out.transitive_total = 0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    Rational w(raw[k].second.count, dfact);
    out.transitive_total += w;
    out.transitive_tuples += raw[k].second.count;
    if (!primitive[k]) continue;
    out.weighted_total += w;
    out.tuples += raw[k].second.count;
    out.classes.push_back(std::move(built[k]));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const FiberClass& a, const FiberClass& b) { return a.key < b.key; });
  if (check_total && out.weighted_total != Rational(fiber_invariants(d).square_count))
    throw InternalError("weighted class total " + to_string(out.weighted_total) + " differs from the square count " +
                        fiber_invariants(d).square_count.str());
  return out;
}

FiberSurface build_fiber_origami(int d) {
  if (d < 2 || d > kMaxDegree) throw DomainError("build_fiber_origami supports 2 <= d <= 8");
  FiberEnumeration en = enumerate_fiber(d);
  FiberSurface f = assemble(d, std::move(en.classes), en.weighted_total, en.transitive_total);
  const FiberInvariants inv = fiber_invariants(d);
  const Origami& o = f.origami;
  if (!o.connected()) throw InternalError("fiber is not connected");
  long long cones = 0;
  for (const auto& vx : o.vertices()) {
    if (vx.angle_multiple == 1) continue;
    if (vx.angle_multiple != 3) throw InternalError("fiber cone point with angle other than 6 pi");
    ++cones;
  }
  if (BigInt(cones) != inv.cone_count) throw InternalError("fiber cone count differs from the closed form");
  if (f.weighted_area != Rational(inv.square_count)) throw InternalError("fiber area differs from the square count");
  if (d >= 3 && BigInt(o.n_squares()) != inv.square_count) throw InternalError("fiber square count mismatch");
  long long chi = static_cast<long long>(o.vertices().size()) - o.n_squares();
  if (BigInt(chi) != inv.euler_char) throw InternalError("fiber Euler characteristic differs from the closed form");
  if (d >= 3 && !period_lattice(o).is_scaled_standard(2)) throw InternalError("fiber period lattice is not 2Z^2");
  if (orbit(o).elements.size() != 1) throw InternalError("fiber is not SL(2,Z)-invariant");
  return f;
}

FiberSurface marked_torus_fiber() {
  FiberClass fc;
  fc.h = fc.v = fc.c0 = fc.c1 = Perm::identity(1);
  fc.key = canonical_key(fc.cover());
  return assemble(1, {fc}, Rational(1), Rational(1));
}

std::vector<FiberVertexInfo> classify_special_points(const FiberSurface& f) {
  const Origami& o = f.origami;
  const int N = o.n_squares();
  std::vector<long long> m(idx(N), 0);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < N; ++s) {
    GridCover g = build_grid(f.classes[idx(f.point_index[idx(s)])].datum());
    g.push(Step::down);
    Origami y = g.to_origami();
    long long count = 0;
    for (const auto& seg : horizontal_saddle_connections(y))
      if (seg.length == 1 && y.vertices()[idx(seg.from_vertex)].label == 2 &&
          y.vertices()[idx(seg.to_vertex)].label == 1)
        ++count;
    m[idx(s)] = count;
  }
  std::vector<FiberVertexInfo> out(o.vertices().size());
  std::vector<char> seen(out.size(), 0);
  for (const auto& vx : o.vertices()) {
    auto& info = out[idx(vx.id)];
    info.vertex_id = vx.id;
    info.angle_multiple = vx.angle_multiple;
    info.kind = f.vertex_kind[idx(vx.id)];
  }
  // square s sees the vertex at its bottom-right corner along its bottom edge
  for (int s = 0; s < N; ++s) {
    auto& info = out[idx(o.bottom_right_vertex(s))];
    if (!seen[idx(info.vertex_id)]) {
      info.m_plus = m[idx(s)];
      seen[idx(info.vertex_id)] = 1;
    } else if (info.m_plus != m[idx(s)]) {
      throw InternalError("m+ depends on the incident saddle connection");
    }
  }
  return out;
}

QuotientData quotient_spin(const FiberSurface& f) {
  auto sigma = minus_id_involution(f.origami);
  if (!sigma) throw DomainError("fiber has no involution acting as -id");
  QuotientData q;
  q.sigma = *sigma;
  for (int vid : q.sigma.fixed_vertices) {
    if (f.origami.vertices()[idx(vid)].angle_multiple > 1) ++q.n_plus1;
    else ++q.n_minus1;
  }
  q.n_minus1 += static_cast<long long>(q.sigma.fixed_centers.size() + q.sigma.fixed_right_edges.size() +
                                       q.sigma.fixed_top_edges.size());
  q.euler_char = static_cast<long long>(f.origami.vertices().size()) - f.origami.n_squares();
  long long fixed = q.n_minus1 + q.n_plus1;
  if ((q.euler_char + fixed) % 2 != 0) throw InternalError("quotient Euler characteristic is not an integer");
  q.euler_char_quotient = (q.euler_char + fixed) / 2;
  q.spin = static_cast<int>((std::llabs(q.euler_char_quotient) / 2) % 2);
  q.identity_holds = 2 * q.euler_char_quotient == q.n_minus1 - q.n_plus1;
  if (f.degree >= 2) {
    FiberInvariants inv = fiber_invariants(f.degree);
    q.matches_formula = BigInt(q.euler_char_quotient) == inv.euler_char_quotient && q.spin == inv.spin_parity;
  }
  return q;
}

std::optional<FiberLocation> locate(const FiberSurface& f, const Origami& x) { return locate_with(key_index(f), x); }

std::vector<FiberCylinder> fiber_cylinders(const FiberSurface& f) {
  auto cd = horizontal_cylinders(f.origami);
  std::vector<FiberCylinder> out;
  for (const auto& c : cd.cylinders) {
    FiberCylinder fc;
    fc.width = c.width;
    fc.height = c.height;
    fc.rows = c.rows;
    out.push_back(std::move(fc));
  }
  const int N = f.origami.n_squares();
  std::vector<std::vector<int>> widths(idx(N));
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < N; ++s) widths[idx(s)] = natural_widths(f.classes[idx(f.point_index[idx(s)])].cover());
  for (auto& fc : out) {
    fc.surface_widths = widths[idx(fc.rows[0][0])];
    for (const auto& row : fc.rows)
      for (int s : row)
        if (widths[idx(s)] != fc.surface_widths)
          throw InternalError("cover cylinder widths vary inside a fiber cylinder");
    GridCover g = build_grid(f.classes[idx(f.point_index[idx(fc.rows.back()[0])])].datum());
    g.push(Step::up);
    fc.boundary_widths = natural_widths(g.to_origami());
  }
  return out;
}

std::vector<CylinderGroup> fiber_cylinder_groups(const std::vector<FiberCylinder>& cylinders) {
  std::map<std::vector<int>, Rational> areas;
  for (const auto& c : cylinders) {
    auto [it, fresh] = areas.try_emplace(c.surface_widths, 0);
    it->second += c.width * c.height;
  }
  std::vector<CylinderGroup> out;
  for (const auto& [w, a] : areas) out.push_back({a, w});
  return out;
}

Rational fiber_generic_constant(const FiberSurface& f) {
  return sv_formula_generic(f.origami.area(), fiber_cylinder_groups(fiber_cylinders(f)));
}

Zeta2Multiple fiber_saddle_constant(const FiberSurface& f) {
  std::vector<SpecialPoint> pts;
  for (const auto& info : classify_special_points(f))
    pts.push_back({info.m_plus, info.angle_multiple - 1});
  return sv_formula_sc_generic(f.origami.area(), pts);
}

OrbitMembership orbit_membership(const FiberSurface& f, const OrbitRecord& orbit) {
  auto cyls = fiber_cylinders(f);
  const int N = f.origami.n_squares();
  std::vector<int> cyl_of(idx(N), -1);
  std::vector<char> top_row(idx(N), 0);
  for (int c = 0; c < static_cast<int>(cyls.size()); ++c)
    for (std::size_t r = 0; r < cyls[idx(c)].rows.size(); ++r)
      for (int s : cyls[idx(c)].rows[r]) {
        cyl_of[idx(s)] = c;
        top_row[idx(s)] = r + 1 == cyls[idx(c)].rows.size();
      }
  auto keys = key_index(f);
  std::vector<long long> inner(cyls.size(), 0), edge(cyls.size(), 0);
  OrbitMembership out;
  for (const auto& x : orbit.elements) {
    auto loc = locate_with(keys, x);
    if (!loc) continue;
    ++out.located;
    if (loc->kind != FiberLocation::bottom_edge) {
      ++inner[idx(cyl_of[idx(loc->square)])];
      continue;
    }
    int below = f.origami.v().inverse()(loc->square);
    (top_row[idx(below)] ? edge : inner)[idx(cyl_of[idx(below)])]++;
  }
  for (std::size_t c = 0; c < cyls.size(); ++c) {
    if (inner[c]) out.interior.push_back({inner[c], cyls[c].surface_widths});
    if (edge[c]) out.boundary.push_back({edge[c], cyls[c].boundary_widths});
  }
  return out;
}

std::vector<FiberCheck> verify_fiber(int d) {
  std::vector<FiberCheck> checks;
  FiberSurface f;
  try {
    f = build_fiber_origami(d);
  } catch (const std::exception& e) {
    checks.push_back({"build", false, e.what()});
    return checks;
  }
  const FiberInvariants inv = fiber_invariants(d);
  const Origami& o = f.origami;
  auto str = [](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
  };

  long long cones = 0, degenerate = 0;
  bool angles = true;
  for (const auto& vx : o.vertices()) {
    if (vx.angle_multiple == 1) ++degenerate;
    else {
      ++cones;
      angles = angles && vx.angle_multiple == 3;
    }
  }
  checks.push_back({"cone-census", angles && BigInt(cones) == inv.cone_count,
                    str("cone points ", cones, " (expected ", inv.cone_count, "), all of angle 6 pi: ", angles)});
  checks.push_back({"degenerate-census", d != 3 || BigInt(degenerate) == inv.degenerate_count,
                    str("non-cone vertices ", degenerate, ", closed form ", inv.degenerate_count)});

  std::size_t orbit_size = orbit(o).elements.size();
  checks.push_back({"connected", o.connected() && orbit_size == 1,
                    str("connected ", o.connected(), ", SL(2,Z) orbit size ", orbit_size)});

  long long chi = static_cast<long long>(o.vertices().size()) - o.n_squares();
  checks.push_back({"euler-characteristic", BigInt(chi) == inv.euler_char,
                    str("chi ", chi, " (expected ", inv.euler_char, "), genus ", genus(o))});

  try {
    QuotientData q = quotient_spin(f);
    checks.push_back({"spin-parity", q.identity_holds && q.matches_formula,
                      str("chi_quot ", q.euler_char_quotient, ", spin ", q.spin, ", n-1 ", q.n_minus1, ", n+1 ",
                          q.n_plus1)});
  } catch (const std::exception& e) {
    checks.push_back({"spin-parity", false, e.what()});
  }

  Lattice2 per = period_lattice(o);
  checks.push_back({"period-lattice", d < 3 || per.is_scaled_standard(2),
                    str("period lattice ", per.to_string(), d < 3 ? " (asserted only for d >= 3)" : "")});

  bool loops = true;
  std::ostringstream detail;
  try {
    auto keys = key_index(f);
    auto cyls = fiber_cylinders(f);
    std::vector<int> cyl_of(idx(o.n_squares()));
    for (int c = 0; c < static_cast<int>(cyls.size()); ++c)
      for (const auto& row : cyls[idx(c)].rows)
        for (int s : row) cyl_of[idx(s)] = c;
    for (int a = 1; 2 * a <= d; ++a) {
      if (std::gcd(a, d) != 1) continue;
      int period = loop_closure_period(a, d, Rational(1, 2));
      auto loc = locate_with(keys, connected_sum(a, d, Rational(1, 2), Rational(1, 2), false));
      bool ok = loc && period == a * (d - a) * d;
      if (ok) {
        const auto& c = cyls[idx(cyl_of[idx(loc->square)])];
        ok = c.width == period && c.height == 1;
      }
      loops = loops && ok;
      detail << "a=" << a << " period " << period << (ok ? " ok; " : " fails; ");
    }
  } catch (const std::exception& e) {
    loops = false;
    detail << e.what();
  }
  checks.push_back({"loop-cylinders", loops, detail.str()});
  return checks;
}

}  // namespace tsurf
