#include "tsurf/perm.hpp"

#include "tsurf/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tsurf {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int x : img_) {
    if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)])
      throw DomainError("not a permutation");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  Perm p;
  p.img_ = std::move(img);
  return p;
}

Perm Perm::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      int a = c[k];
      if (a < 0 || a >= n) throw DomainError("cycle entry out of range: " + std::to_string(a));
      if (used[static_cast<std::size_t>(a)]) throw DomainError("cycles are not disjoint");
      used[static_cast<std::size_t>(a)] = 1;
      img[static_cast<std::size_t>(a)] = c[(k + 1) % c.size()];
    }
  }
  return Perm(std::move(img));
}

Perm Perm::parse(std::string_view text, int n) {
  std::vector<std::vector<int>> cycles;
  std::vector<int> cur;
  bool open = false;
  std::string num;
  auto flush = [&] {
    if (!num.empty()) {
      cur.push_back(std::stoi(num));
      num.clear();
    }
  };
  for (char ch : text) {
    if (ch == '(') {
      if (open) throw DomainError("nested '(' in cycle notation");
      open = true;
      cur.clear();
    } else if (ch == ')') {
      if (!open) throw DomainError("unbalanced ')' in cycle notation");
      flush();
      if (!cur.empty()) cycles.push_back(cur);
      open = false;
    } else if (ch >= '0' && ch <= '9') {
      if (!open) throw DomainError("number outside a cycle");
      num.push_back(ch);
    } else if (ch == ' ' || ch == ',' || ch == '\t') {
      flush();
    } else if (ch != '\r' && ch != '\n') {
      throw DomainError(std::string("unexpected character in cycle notation: ") + ch);
    }
  }
  if (open) throw DomainError("unterminated cycle");
  return from_cycles(n, cycles);
}

Perm Perm::inverse() const {
  std::vector<int> inv(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
  Perm p;
  p.img_ = std::move(inv);
  return p;
}

Perm Perm::pow(long long e) const {
  std::vector<int> out(img_.size());
  for (const auto& c : cycles()) {
    long long len = static_cast<long long>(c.size());
    long long s = ((e % len) + len) % len;
    for (std::size_t k = 0; k < c.size(); ++k)
      out[static_cast<std::size_t>(c[k])] = c[static_cast<std::size_t>((static_cast<long long>(k) + s) % len)];
  }
  Perm p;
  p.img_ = std::move(out);
  return p;
}

Perm Perm::conjugate_by(const Perm& g) const { return g * (*this) * g.inverse(); }

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> c;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = img_[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> t;
  for (const auto& c : cycles()) t.push_back(static_cast<int>(c.size()));
  std::sort(t.rbegin(), t.rend());
  return t;
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (img_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

bool Perm::is_transposition() const {
  int moved = 0;
  for (int i = 0; i < size(); ++i) {
    int j = img_[static_cast<std::size_t>(i)];
    if (j != i) {
      ++moved;
      if (img_[static_cast<std::size_t>(j)] != i) return false;
    }
  }
  return moved == 2;
}

bool Perm::is_full_cycle() const { return size() > 0 && cycles().size() == 1; }

std::string Perm::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    any = true;
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw DomainError("composing permutations of different degree");
  std::vector<int> img(b.img_.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = a.img_[static_cast<std::size_t>(b.img_[i])];
  Perm p;
  p.img_ = std::move(img);
  return p;
}

Perm commutator(const Perm& a, const Perm& b) { return a * b * a.inverse() * b.inverse(); }

std::vector<int> orbit_ids(const std::vector<Perm>& generators, int* n_orbits) {
  int n = generators.empty() ? 0 : generators.front().size();
  std::vector<int> id(static_cast<std::size_t>(n), -1);
  int count = 0;
  std::vector<Perm> inverses;
  for (const auto& g : generators) inverses.push_back(g.inverse());
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (id[static_cast<std::size_t>(s)] >= 0) continue;
    id[static_cast<std::size_t>(s)] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (std::size_t k = 0; k < generators.size(); ++k) {
        for (int y : {generators[k](x), inverses[k](x)}) {
          if (id[static_cast<std::size_t>(y)] < 0) {
            id[static_cast<std::size_t>(y)] = count;
            stack.push_back(y);
          }
        }
      }
    }
    ++count;
  }
  if (n_orbits) *n_orbits = count;
  return id;
}

bool is_transitive(const std::vector<Perm>& generators) {
  int k = 0;
  orbit_ids(generators, &k);
  return k <= 1;
}

}  // namespace tsurf
