#include "tsurf/origami.hpp"

#include "tsurf/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tsurf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

struct CanonResult {
  std::vector<std::int32_t> key;
  int matches = 0;
};

// Minimal BFS relabeling over all start squares. Candidates are compared while being
// built so losing starts abort early.
CanonResult canonical_search(const Origami& o) {
  if (!o.connected()) throw DomainError("canonical form of a disconnected origami");
  const int n = o.n_squares();
  const auto& H = o.h().images();
  const auto& V = o.v().images();
  const Perm hi = o.h().inverse(), vi = o.v().inverse();
  const auto& Hi = hi.images();
  const auto& Vi = vi.images();
  const auto& L = o.labels();

  CanonResult best;
  std::vector<std::int32_t> cand(idx(3 * n));
  std::vector<int> newid(idx(n)), order(idx(n));
  for (int start = 0; start < n; ++start) {
    std::fill(newid.begin(), newid.end(), -1);
    int assigned = 0;
    newid[idx(start)] = assigned;
    order[idx(assigned++)] = start;
    // cmp: 0 = equal so far, -1 = smaller, +1 = larger than best
    int cmp = best.key.empty() ? -1 : 0;
    bool abort = false;
    for (int k = 0; k < n && !abort; ++k) {
      int x = order[idx(k)];
      for (int y : {H[idx(x)], Hi[idx(x)], V[idx(x)], Vi[idx(x)]}) {
        if (newid[idx(y)] < 0) {
          newid[idx(y)] = assigned;
          order[idx(assigned++)] = y;
        }
      }
      std::int32_t t[3] = {newid[idx(H[idx(x)])], newid[idx(V[idx(x)])], L[idx(x)]};
      for (int j = 0; j < 3; ++j) {
        std::size_t p = idx(3 * k + j);
        cand[p] = t[j];
        if (cmp == 0) {
          if (t[j] < best.key[p]) cmp = -1;
          else if (t[j] > best.key[p]) {
            cmp = 1;
            abort = true;
            break;
          }
        }
      }
    }
    if (abort) continue;
    if (cmp < 0) {
      best.key = cand;
      best.matches = 1;
    } else {
      ++best.matches;
    }
  }
  return best;
}

}  // namespace

Origami::Origami(Perm h, Perm v, Rational unit_length, std::vector<int> labels)
    : h_(std::move(h)), v_(std::move(v)), unit_(std::move(unit_length)), labels_(std::move(labels)) {
  const int n = h_.size();
  if (n == 0) throw DomainError("origami needs at least one square");
  if (v_.size() != n) throw DomainError("h and v act on different numbers of squares");
  if (unit_ <= 0) throw DomainError("unit length must be positive");
  if (labels_.empty()) labels_.assign(idx(n), 0);
  if (static_cast<int>(labels_.size()) != n) throw DomainError("label vector has wrong length");

  const Perm r = corner_rotation();
  vertex_of_.assign(idx(n), -1);
  for (int i = 0; i < n; ++i) {
    if (vertex_of_[idx(i)] >= 0) continue;
    Vertex vx;
    vx.id = static_cast<int>(vertices_.size());
    vx.label = labels_[idx(i)];
    for (int j = i; vertex_of_[idx(j)] < 0; j = r(j)) {
      vertex_of_[idx(j)] = vx.id;
      vx.squares.push_back(j);
      if (labels_[idx(j)] != vx.label)
        throw DomainError("labels are not constant on the vertex of square " + std::to_string(i));
    }
    vx.angle_multiple = static_cast<int>(vx.squares.size());
    std::sort(vx.squares.begin(), vx.squares.end());
    vertices_.push_back(std::move(vx));
  }
  connected_ = is_transitive({h_, v_});
}

bool Origami::has_marks() const {
  return std::any_of(labels_.begin(), labels_.end(), [](int l) { return l != 0; });
}

bool Origami::is_special(int vertex_id) const {
  const auto& vx = vertices_[idx(vertex_id)];
  return vx.angle_multiple >= 2 || vx.label != 0;
}

Perm Origami::corner_rotation() const { return v_ * h_ * v_.inverse() * h_.inverse(); }

Origami Origami::with_labels(std::vector<int> labels) const { return Origami(h_, v_, unit_, std::move(labels)); }

Origami Origami::with_unit(Rational unit) const { return Origami(h_, v_, std::move(unit), labels_); }

ValidationReport validate(const std::vector<int>& h, const std::vector<int>& v, const Rational& unit,
                          const std::vector<int>& labels) {
  ValidationReport rep;
  rep.n_squares = static_cast<int>(h.size());
  auto is_perm = [](const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
      if (x < 0 || x >= static_cast<int>(p.size()) || seen[idx(x)]) return false;
      seen[idx(x)] = 1;
    }
    return true;
  };
  if (h.size() != v.size() || !is_perm(h) || !is_perm(v)) {
    rep.bijective = false;
    rep.connected = false;
    rep.messages.push_back("h or v is not a bijection of the squares");
    return rep;
  }
  rep.area = unit * unit * rep.n_squares;
  Perm ph(h), pv(v);
  int k = 0;
  orbit_ids({ph, pv}, &k);
  rep.components = k;
  rep.connected = (k == 1);
  if (!rep.connected) rep.messages.push_back("surface has " + std::to_string(k) + " components");
  if (!labels.empty()) {
    try {
      Origami o(ph, pv, unit, labels);
    } catch (const DomainError& e) {
      rep.labels_consistent = false;
      rep.messages.push_back(e.what());
    }
  }
  return rep;
}

ValidationReport validate(const Origami& o) {
  return validate(o.h().images(), o.v().images(), o.unit_length(), o.labels());
}

int ConeData::total_zero_order() const {
  int s = 0;
  for (const auto& c : cones) s += c.zero_order;
  return s;
}

std::vector<int> ConeData::zero_orders() const {
  std::vector<int> z;
  for (const auto& c : cones) z.push_back(c.zero_order);
  std::sort(z.rbegin(), z.rend());
  return z;
}

ConeData singularities(const Origami& o) {
  if (!o.connected()) throw DomainError("singularities of a disconnected origami");
  ConeData cd;
  for (const auto& vx : o.vertices()) {
    ConeEntry e{vx.id, vx.angle_multiple, vx.angle_multiple - 1, vx.label};
    if (vx.angle_multiple >= 2) cd.cones.push_back(e);
    else if (vx.label != 0) cd.marked.push_back(e);
  }
  return cd;
}

int genus(const Origami& o) {
  ConeData cd = singularities(o);
  int s = cd.total_zero_order();
  if (s % 2) throw InternalError("odd total zero order");
  int g = 1 + s / 2;
  // Euler characteristic of the square complex: V - E + F with E = 2n, F = n.
  int chi = static_cast<int>(o.vertices().size()) - o.n_squares();
  if (chi != 2 - 2 * g) throw InternalError("Gauss-Bonnet and V-E+F disagree");
  return g;
}

std::string Lattice2::to_string() const {
  std::ostringstream os;
  os << "<(" << e1[0] << "," << e1[1] << "),(" << e2[0] << "," << e2[1] << ")>*" << tsurf::to_string(unit);
  return os.str();
}

Lattice2 hermite_lattice(const std::vector<std::array<long long, 2>>& gens) {
  long long a = 0;            // generator of the x-axis part
  long long bx = 0, by = 0;   // vector with minimal positive y
  auto ext_gcd = [](long long p, long long q, long long& s, long long& t) {
    long long r0 = p, r1 = q, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      long long qq = r0 / r1;
      long long tmp = r0 - qq * r1; r0 = r1; r1 = tmp;
      tmp = s0 - qq * s1; s0 = s1; s1 = tmp;
      tmp = t0 - qq * t1; t0 = t1; t1 = tmp;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    s = s0;
    t = t0;
    return r0;
  };
  auto reduce = [&] {
    if (a > 0) bx = ((bx % a) + a) % a;
  };
  for (auto w : gens) {
    long long x = w[0], y = w[1];
    if (y == 0) {
      a = std::gcd(a, std::llabs(x));
    } else if (by == 0) {
      bx = x;
      by = y;
      if (by < 0) { bx = -bx; by = -by; }
    } else {
      long long s, t;
      long long g = ext_gcd(by, y, s, t);
      long long nbx = s * bx + t * x;
      // (y/g) b - (by/g) w lies on the x-axis
      long long rx = (y / g) * bx - (by / g) * x;
      bx = nbx;
      by = g;
      a = std::gcd(a, std::llabs(rx));
    }
    reduce();
  }
  if (a == 0 || by == 0) throw DomainError("period lattice is not of full rank");
  reduce();
  Lattice2 L;
  L.e1 = {a, 0};
  L.e2 = {bx, by};
  return L;
}

Lattice2 period_lattice(const Origami& o) {
  if (!o.connected()) throw DomainError("period lattice of a disconnected origami");
  const int n = o.n_squares();
  std::vector<std::array<long long, 2>> pos(idx(n));
  std::vector<char> seen(idx(n), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  const Perm hi = o.h().inverse(), vi = o.v().inverse();
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int x = queue[k];
    const std::array<std::pair<int, std::array<long long, 2>>, 4> nbrs{{
        {o.h()(x), {1, 0}}, {hi(x), {-1, 0}}, {o.v()(x), {0, 1}}, {vi(x), {0, -1}}}};
    for (const auto& [y, d] : nbrs) {
      if (seen[idx(y)]) continue;
      seen[idx(y)] = 1;
      pos[idx(y)] = {pos[idx(x)][0] + d[0], pos[idx(x)][1] + d[1]};
      queue.push_back(y);
    }
  }
  std::vector<std::array<long long, 2>> cyc;
  for (int i = 0; i < n; ++i) {
    int r = o.h()(i), u = o.v()(i);
    cyc.push_back({pos[idx(i)][0] + 1 - pos[idx(r)][0], pos[idx(i)][1] - pos[idx(r)][1]});
    cyc.push_back({pos[idx(i)][0] - pos[idx(u)][0], pos[idx(i)][1] + 1 - pos[idx(u)][1]});
  }
  Lattice2 L = hermite_lattice(cyc);
  L.unit = o.unit_length();
  return L;
}

std::vector<std::int32_t> canonical_key(const Origami& o) { return canonical_search(o).key; }

Origami canonical_form(const Origami& o) {
  auto key = canonical_search(o).key;
  const int n = o.n_squares();
  std::vector<int> h(idx(n)), v(idx(n)), lab(idx(n));
  for (int k = 0; k < n; ++k) {
    h[idx(k)] = key[idx(3 * k)];
    v[idx(k)] = key[idx(3 * k + 1)];
    lab[idx(k)] = key[idx(3 * k + 2)];
  }
  return Origami(Perm(h), Perm(v), o.unit_length(), lab);
}

int automorphism_count(const Origami& o) { return canonical_search(o).matches; }

bool isomorphic(const Origami& a, const Origami& b) {
  if (a.n_squares() != b.n_squares() || a.unit_length() != b.unit_length()) return false;
  return canonical_key(a) == canonical_key(b);
}

Origami rotate_pi(const Origami& o) {
  const int n = o.n_squares();
  std::vector<int> lab(idx(n));
  for (int i = 0; i < n; ++i) lab[idx(i)] = o.label(o.v()(o.h()(i)));
  return Origami(o.h().inverse(), o.v().inverse(), o.unit_length(), lab);
}

}  // namespace tsurf
