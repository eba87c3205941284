#include "springer/cells.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "springer/errors.hpp"

namespace springer {

int degree(const Coweight& w) { return std::accumulate(w.begin(), w.end(), 0); }

std::string to_string(const Coweight& w) {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
  os << ")";
  return os.str();
}

int lb(const Coweight& a, int i, int j) { return a[i] - a[j] + (i > j ? 1 : 0); }

std::vector<int> CellSpec::offsets() const {
  std::vector<int> off;
  int acc = 0;
  for (const auto& s : slots) {
    off.push_back(acc);
    acc += s.size();
  }
  return off;
}

CellSpec make_cell(const Coweight& a, const Coweight& w, std::optional<Window> window) {
  if (a.size() != w.size()) throw ShapeError("shift and coweight sizes differ");
  CellSpec c;
  c.a = a;
  c.w = w;
  c.window = window;
  const int d = static_cast<int>(w.size());
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (i == j) continue;
      int lo = lb(a, i, j);
      if (window && window->m_low) lo = std::max(lo, -*window->m_low - w[j]);
      int hi = w[i] - w[j];
      if (hi > lo) {
        c.slots.push_back(Slot{i, j, lo, hi});
        c.dim += hi - lo;
      }
    }
  return c;
}

int cell_dimension(const Coweight& a, const Coweight& w, std::optional<Window> window) {
  return make_cell(a, w, window).dim;
}

static void fixed_points_rec(int d, int m, int remaining, Coweight& cur, std::vector<Coweight>& out) {
  const int k = static_cast<int>(cur.size());
  if (k == d - 1) {
    if (remaining >= -m) {
      cur.push_back(remaining);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  const int slack = remaining + m * (d - k - 1);  // room left for this entry
  for (int x = -m; x <= slack; ++x) {
    cur.push_back(x);
    fixed_points_rec(d, m, remaining - x, cur, out);
    cur.pop_back();
  }
}

std::vector<Coweight> window_fixed_points(int d, int m, int deg) {
  std::vector<Coweight> out;
  Coweight cur;
  if (d == 1) {
    if (deg >= -m) out.push_back({deg});
    return out;
  }
  fixed_points_rec(d, m, deg, cur, out);
  return out;
}

}  // namespace springer
