#include "tsurf/geometry.hpp"

#include "tsurf/errors.hpp"
#include "tsurf/sl2z.hpp"

#include <algorithm>
#include <cmath>

namespace tsurf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

BoundaryChain make_chain(const Origami& o, std::vector<int> verts) {
  BoundaryChain c;
  c.vertices = std::move(verts);
  const int w = static_cast<int>(c.vertices.size());
  std::vector<int> special;
  for (int k = 0; k < w; ++k)
    if (o.is_special(c.vertices[idx(k)])) special.push_back(k);
  for (std::size_t s = 0; s < special.size(); ++s) {
    int i = special[s];
    int j = special[(s + 1) % special.size()];
    int len = special.size() == 1 ? w : ((j - i) % w + w) % w;
    c.segments.push_back({len, c.vertices[idx(i)], c.vertices[idx(j)]});
  }
  return c;
}

}  // namespace

double CylinderDecomposition::physical_scale() const { return std::sqrt(to_double(scale_squared())); }

std::vector<int> CylinderDecomposition::widths() const {
  std::vector<int> w;
  for (const auto& c : cylinders) w.push_back(c.width);
  std::sort(w.begin(), w.end());
  return w;
}

CylinderDecomposition horizontal_cylinders(const Origami& o) {
  if (!o.connected()) throw DomainError("cylinder decomposition of a disconnected origami");
  const int n = o.n_squares();
  const Perm& H = o.h();
  const Perm& V = o.v();

  // rows = h-cycles, each listed from its smallest square
  std::vector<std::vector<int>> rows = H.cycles();
  const int nr = static_cast<int>(rows.size());
  std::vector<int> row_of(idx(n));
  for (int r = 0; r < nr; ++r)
    for (int s : rows[idx(r)]) row_of[idx(s)] = r;

  std::vector<int> up(idx(nr), -1), down(idx(nr), -1);
  for (int r = 0; r < nr; ++r) {
    bool flat = true;
    for (int s : rows[idx(r)]) {
      if (V(H(s)) != H(V(s)) || o.label(V(s)) != 0) {
        flat = false;
        break;
      }
    }
    if (flat) {
      int r2 = row_of[idx(V(rows[idx(r)].front()))];
      up[idx(r)] = r2;
      down[idx(r2)] = r;
    }
  }

  CylinderDecomposition dec;
  dec.unit = o.unit_length();
  std::vector<char> used(idx(nr), 0);
  auto build = [&](int bottom_row, bool cyclic) {
    Cylinder cyl;
    std::vector<int> cur = rows[idx(bottom_row)];
    cyl.width = static_cast<int>(cur.size());
    int r = bottom_row;
    while (true) {
      used[idx(r)] = 1;
      cyl.rows.push_back(cur);
      int nxt = up[idx(r)];
      if (nxt < 0 || (cyclic && nxt == bottom_row)) break;
      for (int& s : cur) s = V(s);
      r = nxt;
    }
    cyl.height = static_cast<int>(cyl.rows.size());
    if (!cyclic) {
      std::vector<int> top, bottom;
      for (int s : cyl.rows.back()) top.push_back(o.vertex_of(V(s)));
      for (int s : cyl.rows.front()) bottom.push_back(o.vertex_of(s));
      cyl.top = make_chain(o, std::move(top));
      cyl.bottom = make_chain(o, std::move(bottom));
    }
    dec.cylinders.push_back(std::move(cyl));
  };
  for (int r = 0; r < nr; ++r)
    if (down[idx(r)] < 0) build(r, false);
  // leftover rows form closed stacks: a flat torus component without special vertices
  for (int r = 0; r < nr; ++r)
    if (!used[idx(r)]) build(r, true);

  int area = 0;
  for (const auto& c : dec.cylinders) area += c.width * c.height;
  if (area != n) throw InternalError("cylinder decomposition does not exhaust the area");
  return dec;
}

CylinderDecomposition direction_cylinders(const Origami& o, long long p, long long q) {
  MatrixSL2Z m = primitive_to_horizontal(p, q);
  CylinderDecomposition dec = horizontal_cylinders(act(o, m));
  dec.p = p;
  dec.q = q;
  return dec;
}

std::vector<Segment> horizontal_saddle_connections(const Origami& o) {
  std::vector<Segment> out;
  for (const auto& c : horizontal_cylinders(o).cylinders)
    out.insert(out.end(), c.top.segments.begin(), c.top.segments.end());
  return out;
}

}  // namespace tsurf
