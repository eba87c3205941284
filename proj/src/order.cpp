#include "springer/order.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "springer/errors.hpp"

namespace springer {

int length(const Perm& g) {
  int inv = 0;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      if (g[i] > g[j]) ++inv;
  return inv;
}

bool bruhat_leq(const Perm& u, const Perm& w) {
  if (u.size() != w.size()) throw ShapeError("permutations of different sizes");
  std::vector<int> su, sw;
  for (size_t k = 0; k < u.size(); ++k) {
    su.insert(std::upper_bound(su.begin(), su.end(), u[k]), u[k]);
    sw.insert(std::upper_bound(sw.begin(), sw.end(), w[k]), w[k]);
    for (size_t t = 0; t <= k; ++t)
      if (su[t] > sw[t]) return false;
  }
  return true;
}

std::vector<Perm> all_perms(int d) {
  Perm g(static_cast<size_t>(d));
  std::iota(g.begin(), g.end(), 0);
  std::vector<Perm> out;
  do out.push_back(g);
  while (std::next_permutation(g.begin(), g.end()));
  return out;
}

Coweight dominant(const Coweight& v) {
  Coweight s = v;
  std::sort(s.begin(), s.end(), std::greater<int>());
  return s;
}

Perm min_coset_rep(const Coweight& w) {
  const Coweight v = dominant(w);
  const size_t d = w.size();
  Perm g(d);
  std::vector<char> used(d, 0);
  // Equal entries of v go to positions of w in increasing order.
  for (size_t k = 0; k < d; ++k)
    for (size_t t = 0; t < d; ++t)
      if (!used[t] && w[t] == v[k]) {
        g[k] = static_cast<int>(t);
        used[t] = 1;
        break;
      }
  return g;
}

bool dominance_leq(const Coweight& x, const Coweight& y) {
  const Coweight dx = dominant(x), dy = dominant(y);
  long sx = 0, sy = 0;
  for (size_t k = 0; k < dx.size(); ++k) {
    sx += dx[k];
    sy += dy[k];
    if (sx > sy) return false;
  }
  return sx == sy;
}

bool bruhat_mod_less(const Coweight& v, const Coweight& w, const Coweight& a) {
  if (v.size() != w.size() || v.size() != a.size()) throw ShapeError("coweights of different sizes");
  if (degree(v) != degree(w)) throw InputError("coweights of different degree are incomparable");
  Coweight x(v.size()), y(v.size());
  for (size_t k = 0; k < v.size(); ++k) {
    x[k] = v[k] - a[k];
    y[k] = w[k] - a[k];
  }
  if (x == y) return false;
  const Coweight dx = dominant(x), dy = dominant(y);
  if (dx != dy) return dominance_leq(dx, dy);
  return bruhat_leq(min_coset_rep(y), min_coset_rep(x));
}

Coweight limit_point(const LatticePoint& L, const Coweight& a) { return recanonicalize(L, a).cell.w; }

OrderCert closure_order_check(const std::vector<OrderPiece>& pieces) {
  OrderCert cert;
  for (size_t k = 0; k < pieces.size(); ++k) {
    const auto& pts = pieces[k].points;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        if (bruhat_mod_less(pts[j], pts[i], pieces[k].a)) {
          cert.ok = false;
          cert.piece = static_cast<int>(k);
          cert.violation = std::make_pair(pts[j], pts[i]);
          return cert;
        }
        if (bruhat_mod_less(pts[i], pts[j], pieces[k].a)) cert.pairs.emplace_back(pts[i], pts[j]);
      }
  }
  return cert;
}

std::optional<std::pair<Coweight, Coweight>> prefix_downset_violation(
    const std::vector<std::vector<Coweight>>& pieces, const std::vector<Coweight>& region, const Coweight& a) {
  std::set<Coweight> seen;
  for (const auto& piece : pieces) {
    for (const auto& x : piece) seen.insert(x);
    for (const auto& x : piece)
      for (const auto& y : region)
        if (!seen.count(y) && bruhat_mod_less(y, x, a)) return std::make_pair(y, x);
  }
  return std::nullopt;
}

std::optional<std::vector<int>> linear_extension(int n, const std::function<bool(int, int)>& before) {
  std::vector<std::vector<int>> succ(static_cast<size_t>(n));
  std::vector<int> indeg(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && before(i, j)) {
        succ[static_cast<size_t>(i)].push_back(j);
        ++indeg[static_cast<size_t>(j)];
      }
  std::set<int> ready;
  for (int i = 0; i < n; ++i)
    if (!indeg[static_cast<size_t>(i)]) ready.insert(i);
  std::vector<int> out;
  while (!ready.empty()) {
    const int i = *ready.begin();
    ready.erase(ready.begin());
    out.push_back(i);
    for (int j : succ[static_cast<size_t>(i)])
      if (--indeg[static_cast<size_t>(j)] == 0) ready.insert(j);
  }
  if (static_cast<int>(out.size()) != n) return std::nullopt;
  return out;
}

std::string order_graph_dot(const std::vector<Coweight>& points, const Coweight& a) {
  const size_t n = points.size();
  std::vector<std::vector<char>> lt(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) lt[i][j] = i != j && bruhat_mod_less(points[i], points[j], a);
  std::ostringstream os;
  os << "digraph order {\n  rankdir=BT;\n";
  for (size_t i = 0; i < n; ++i) os << "  n" << i << " [label=\"" << to_string(points[i]) << "\"];\n";
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!lt[i][j]) continue;
      bool cover = true;
      for (size_t k = 0; k < n && cover; ++k)
        if (lt[i][k] && lt[k][j]) cover = false;
      if (cover) os << "  n" << i << " -> n" << j << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace springer
